"""How large must the (Z/2)^2 nerve truncation be for the Adem suite to close?

For each truncation, counts cases that agree, disagree, or land outside the
truncated cohomology window.
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from ediv.z2square import adem_suite


@dataclass
class SweepConfig:
    tops: tuple = (4, 5, 6, 7)
    max_class_degree: int = 6
    max_ij: int = 8


def main(cfg: SweepConfig) -> None:
    print("top,ok,mismatch,outside,seconds")
    for top in cfg.tops:
        t0 = time.perf_counter()
        counts = Counter(r[-1] for r in adem_suite(top, cfg.max_class_degree, cfg.max_ij))
        dt = time.perf_counter() - t0
        print(f"{top},{counts['ok']},{counts['mismatch']},{counts['outside']},{dt:.1f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--tops", type=int, nargs="+", default=[4, 5, 6, 7])
    a = p.parse_args()
    main(SweepConfig(tops=tuple(a.tops)))
