"""Division of free and almost-free algebras by a coalgebra, loops and suspensions.

For a term rho(v_1, ..., v_r) and a chain c, the transport rule is

    rho(v_1, ..., v_r) / c = sum rho_(2)(v_1/c_1, ..., v_r/c_r)

over Delta(rho) = sum rho_(1) (x) rho_(2) and rho_(1)*(c) = sum c_1 (x) ... (x) c_r.
The divided generator v/c has degree deg(v) - deg(c).
"""

from __future__ import annotations

import random
from typing import Callable, Mapping, Optional, Sequence

from . import operad as op
from .coaction import CoalgebraHandle, CochainAlgebra, HomMap, hom_algebra_operation, hom_differential
from .free_ealgebra import (
    AlmostFreeAlgebra,
    FreeElement,
    Generator,
    canonicalize,
    enumerate_graded_basis,
    evaluate,
    full_differential,
    gen,
    single,
    xor_elements,
)
from .operad import OperadElement


def divided_name(v: str, k: CoalgebraHandle, c) -> str:
    return f"{v}/{k.label(c)}"


def transport(y: FreeElement, k: CoalgebraHandle, c, name: Callable[[str, object], str]) -> FreeElement:
    """y / c for y in E(V), as an element of E(V (x) K)."""
    acc: set = set()
    for t, args in y.terms:
        k.check_arity(len(args))
        for t1, t2 in op.diagonal_tuple(t):
            for word in k.co_tuple(t1, c):
                acc ^= {canonicalize(t2, tuple(name(a, ci) for a, ci in zip(args, word)))}
    return FreeElement(frozenset(acc), y.susp)


def divide_almost_free(F: AlmostFreeAlgebra, k: CoalgebraHandle) -> AlmostFreeAlgebra:
    """F / K: generators v/c, internal differential (dv)/c + v/(dc), and h/K by transport."""
    basis = k.basis()
    index = {}
    for v in F.names:
        for c in basis:
            index[(v, c)] = divided_name(v, k, c)
    if len(set(index.values())) != len(index):
        raise ValueError("divided generator names collide; relabel the coalgebra basis")

    def name(v, c):
        return index[(v, c)]

    gens = []
    h = {}
    for g in F.generators:
        for c in basis:
            diff = {name(d, c) for d in g.diff}
            diff ^= {name(g.name, f) for f in k.boundary(c)}
            gens.append(Generator(name(g.name, c), g.degree - k.degree(c), frozenset(diff)))
            hv = F.h_of(g.name)
            if hv:
                img = transport(hv, k, c, name)
                if img:
                    h[name(g.name, c)] = img
    origin = {n_: vc for vc, n_ in index.items()}
    label = f"{F.name or 'F'}/{k.name}"
    return AlmostFreeAlgebra(tuple(gens), h, F.susp, label, origin)


def divide_morphism(f: Mapping[str, FreeElement], source: AlmostFreeAlgebra, k: CoalgebraHandle,
                    target: Optional[AlmostFreeAlgebra] = None) -> dict[str, FreeElement]:
    """f / K on generators: (f/K)(v/c) = f(v) / c."""
    def name(v, c):
        return divided_name(v, k, c)
    return {name(v, c): transport(f[v], k, c, name) for v in source.names for c in k.basis()}


def compose_morphisms(g: Mapping[str, FreeElement], f: Mapping[str, FreeElement], susp: int = 0) -> dict:
    """(g o f)(v) = g(f(v)) for generator-level morphisms of free algebras."""
    from .free_ealgebra import apply_morphism
    return {v: apply_morphism(g, e, susp) for v, e in f.items()}


# reference form of the divided cell attachment on a space

def expected_cell_division(n: int, k, c) -> FreeElement:
    """e/c + sum_k (tau^k theta_{n-k})(theta_k*(c)) for phi(e) = e + theta_n(e, e).

    Built from cup-i coproducts directly rather than through the operad diagonal.
    """
    from .coaction import cup_i_coproduct

    e = f"e{n}"
    raw = [(((1,),), (divided_name(e, k, c),))]
    for j in range(n + 1):
        t = op.theta_tuple(n - j)
        if j % 2:
            t = op.act_tuple(op.TAU, t)
        for a, b in cup_i_coproduct(k.x, j, c):
            if k.reduced and (k._is_base(a) or k._is_base(b)):
                continue
            raw.append((t, (divided_name(e, k, a), divided_name(e, k, b))))
    return FreeElement.from_terms(raw)


# loops and suspensions

def loop_model(F: AlmostFreeAlgebra) -> AlmostFreeAlgebra:
    """Sigma* Omega* F: same generators, h replaced by eps cap h, one suspension level up."""
    bad = [g.name for g in F.generators if g.degree <= 0]
    if bad:
        raise ValueError(f"loop model needs generators of positive degree; {bad[0]} is not")
    h = {}
    for v, e in F.h.items():
        raw = []
        for t, args in e.terms:
            ct = op.cap_tuple(t)
            if ct is not None:
                raw.append((ct, args))
        img = FreeElement.from_terms(raw, F.susp + 1)
        if img:
            h[v] = img
    return AlmostFreeAlgebra(tuple(F.generators), h, F.susp + 1, f"Sigma Omega {F.name}".strip())


def suspension_algebra_operation(rho: OperadElement, args: Sequence, algebra) -> object:
    """rho(Sigma a_1, ..., Sigma a_r) = Sigma((eps cap rho)(a_1, ..., a_r)).

    Returns the base-algebra element inside the suspension on the right.
    """
    capped = op.cap_epsilon(rho)
    return algebra.operate(OperadElement(rho.arity, capped.terms, rho.susp), list(args))


# algebras usable as targets of morphisms

class FreeCarrier:
    """An almost-free algebra seen as an algebra: operate, add, differential."""

    def __init__(self, F: AlmostFreeAlgebra):
        self.F = F

    def zero(self, degree: int = 0) -> FreeElement:
        return FreeElement(frozenset(), self.F.susp)

    def add(self, a: FreeElement, b: FreeElement) -> FreeElement:
        return a + b

    def operate(self, rho: OperadElement, args: Sequence[FreeElement]) -> FreeElement:
        return evaluate(rho, args)

    def differential(self, a: FreeElement) -> FreeElement:
        return full_differential(self.F, a)


def extend_to_algebra(values: Mapping[str, object], y: FreeElement, B) -> object:
    """The algebra morphism E(V) -> B determined by generator values."""
    acc = B.zero()
    for t, args in y.sorted_terms():
        acc = B.add(acc, B.operate(single(t, y.susp), [values[a] for a in args]))
    return acc


def extend_to_hom(values: Mapping[str, HomMap], y: FreeElement, k: CoalgebraHandle, B) -> HomMap:
    """The algebra morphism E(V) -> Hom(K, B) determined by generator values."""
    acc = {c: B.zero() for c in k.basis()}
    for t, args in y.sorted_terms():
        piece = hom_algebra_operation(k, B, single(t, y.susp), [values[a] for a in args])
        acc = {c: B.add(acc[c], piece(c)) for c in acc}
    return HomMap(k, acc)


def _same(B, a, b) -> bool:
    return B.add(a, b).is_zero()


def adjunction_check(F: AlmostFreeAlgebra, k: CoalgebraHandle, B, value_sampler: Callable,
                     element_sampler: Callable, samples: int = 20, seed: int = 0) -> dict:
    """Transport morphisms across Hom(E(V) / K, B) = Hom(E(V), Hom(K, B)).

    For each sample: draw f on the generators v/c, form its adjoint g, and check
      * the round trips f -> g -> f and g -> f -> g are identities;
      * g(y)(c) = f(y / c) for a sampled y in E(V);
      * the differential defects agree: (g d + d g)(y)(c) = (f d + d f)(y / c);
      * the unit transport is a chain map: d(y / c) = (dy) / c + y / (dc).
    """
    rng = random.Random(seed)
    Fk = divide_almost_free(F, k)
    name_of = {vc: n_ for n_, vc in Fk.origin.items()}

    def name(v, c):
        return name_of[(v, c)]

    degs = Fk.degrees
    report = {"samples": samples, "round_trip": 0, "extension": 0, "differential": 0, "unit": 0, "witness": None}
    for s in range(samples):
        f = {n_: value_sampler(rng, degs[n_]) for n_ in Fk.names}
        g = {v: HomMap(k, {c: f[name(v, c)] for c in k.basis()}) for v in F.names}
        f_back = {name(v, c): g[v](c) for v in F.names for c in k.basis()}
        g_back = {v: HomMap(k, {c: f_back[name(v, c)] for c in k.basis()}) for v in F.names}
        if all(_same(B, f[n_], f_back[n_]) for n_ in Fk.names) and all(
                _same(B, g[v](c), g_back[v](c)) for v in F.names for c in k.basis()):
            report["round_trip"] += 1
        y = element_sampler(rng)
        dy = full_differential(F, y)
        gy = extend_to_hom(g, y, k, B)
        ok_ext = ok_diff = ok_unit = True
        d_g = extend_to_hom(g, dy, k, B)
        dgy = hom_differential(k, B, gy)
        for c in k.basis():
            yc = transport(y, k, c, name)
            if not _same(B, gy(c), extend_to_algebra(f, yc, B)):
                ok_ext = False
            lhs = full_differential(Fk, yc)
            rhs = transport(dy, k, c, name)
            for bc in k.boundary(c):
                rhs = rhs + transport(y, k, bc, name)
            if lhs != rhs:
                ok_unit = False
            defect_f = B.add(extend_to_algebra(f, lhs, B), B.differential(extend_to_algebra(f, yc, B)))
            defect_g = B.add(d_g(c), dgy(c))
            if not _same(B, defect_f, defect_g):
                ok_diff = False
        report["extension"] += ok_ext
        report["differential"] += ok_diff
        report["unit"] += ok_unit
        if not (ok_ext and ok_diff and ok_unit) and report["witness"] is None:
            from .free_ealgebra import format_element
            report["witness"] = {"sample": s, "y": format_element(y)}
    report["passed"] = all(report[key] == samples for key in ("round_trip", "extension", "differential", "unit"))
    return report


# samplers for adjunction checks

def free_value_sampler(W: AlmostFreeAlgebra, arity_cap: int = 2, opdeg_cap: int = 1):
    cache: dict = {}

    def sample(rng: random.Random, degree: int) -> FreeElement:
        if degree not in cache:
            cache[degree] = enumerate_graded_basis(W, degree, arity_cap, opdeg_cap, allow_nonpositive=True)
        basis = cache[degree]
        if not basis:
            return FreeElement(frozenset(), W.susp)
        terms = {rng.choice(basis) for _ in range(rng.randint(1, 2))}
        return FreeElement(frozenset(terms), W.susp)

    return sample


def cochain_value_sampler(algebra: CochainAlgebra):
    from .simplicial import CochainElement

    def sample(rng: random.Random, degree: int):
        if degree < 0 or degree > algebra.x.top_dim:
            return algebra.zero(degree)
        support = [s for s in algebra.x.nondegenerate(degree) if rng.random() < 0.5]
        return CochainElement(degree, frozenset(support))

    return sample


def term_sampler(F: AlmostFreeAlgebra, arity_cap: int, opdeg_cap: int):
    """Random homogeneous elements of E(V): a generator or one random term."""
    names = F.names

    def sample(rng: random.Random) -> FreeElement:
        if arity_cap < 2 or rng.random() < 0.25:
            return gen(rng.choice(names), F.susp)
        r = rng.randint(2, arity_cap)
        d = rng.randint(0, opdeg_cap)
        perms = [tuple(rng.sample(range(1, r + 1), r))]
        while len(perms) < d + 1:
            w = tuple(rng.sample(range(1, r + 1), r))
            if w != perms[-1]:
                perms.append(w)
        return FreeElement.from_terms([(tuple(perms), tuple(rng.choice(names) for _ in range(r)))], F.susp)

    return sample
