"""Poincare series of the free unstable algebras and of the mapping-space models."""

import argparse
from dataclasses import dataclass

from ediv.simplicial import parse_space
from ediv.steenrod import mapping_space_series, u_poincare_series


@dataclass
class SeriesConfig:
    spaces: tuple = ("pt", "sphere:1", "sphere:2")
    ns: tuple = (1, 2, 3)
    cap: int = 12


def main(cfg: SeriesConfig) -> None:
    print("source,n," + ",".join(str(d) for d in range(cfg.cap + 1)))
    for n in cfg.ns:
        print(f"U(Ae^{n}),{n}," + ",".join(map(str, u_poincare_series([n], cfg.cap))))
    for spec in cfg.spaces:
        x = parse_space(spec)
        for n in cfg.ns:
            try:
                s = mapping_space_series(x, n, cfg.cap)
            except ValueError as exc:  # nonpositive generator degree
                print(f"map({spec}),{n},skipped: {exc}")
                continue
            print(f"map({spec}),{n}," + ",".join(map(str, s)))


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--cap", type=int, default=12)
    main(SeriesConfig(cap=p.parse_args().cap))
