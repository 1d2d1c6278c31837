"""Which adjunction configurations notice a corrupted transport?

Replaces the transport rule with one that feeds the wrong diagonal factor to
the coalgebra, then reports per-configuration pass counts. A configuration
that still passes is too weak to serve as a regression check.
"""

import argparse
from dataclasses import dataclass

import ediv.division as division
from ediv import operad as op
from ediv.coaction import CochainAlgebra, SimplicialCoalgebra
from ediv.free_ealgebra import FreeElement, Generator, canonicalize, free_algebra
from ediv.simplicial import product, sphere, standard_simplex


@dataclass
class SensitivityConfig:
    samples: int = 20
    seed: int = 0


def swapped(y, k, c, name):
    acc = set()
    for t, args in y.terms:
        for t1, t2 in op.diagonal_tuple(t):
            for word in k.co_tuple(t2, c):
                acc ^= {canonicalize(t1, tuple(name(a, ci) for a, ci in zip(args, word)))}
    return FreeElement(frozenset(acc), y.susp)


def configs():
    s1 = sphere(1)
    e2 = free_algebra([Generator("e2", 2)])
    v = free_algebra([Generator("e1", 1), Generator("e2", 2)])
    for label, F, B, arity, opdeg in [
        ("e2 -> N*(Delta2)", e2, standard_simplex(2), 2, 2),
        ("e1,e2 -> N*(Delta3)", v, standard_simplex(3), 2, 3),
        ("e1,e2 -> N*(S1xS1)", v, product(s1, s1), 2, 3),
    ]:
        alg = CochainAlgebra(B)
        yield label, F, SimplicialCoalgebra(s1), alg, division.cochain_value_sampler(alg), \
            division.term_sampler(F, arity, opdeg)


def main(cfg: SensitivityConfig) -> None:
    honest = division.transport
    print("config,transport,extension,differential,unit,passed")
    for label, F, k, B, vs, es in configs():
        for tag, fn in (("honest", honest), ("swapped", swapped)):
            division.transport = fn
            try:
                rep = division.adjunction_check(F, k, B, vs, es, cfg.samples, cfg.seed)
            finally:
                division.transport = honest
            print(f"{label},{tag},{rep['extension']},{rep['differential']},{rep['unit']},{rep['passed']}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    main(SensitivityConfig(a.samples, a.seed))
