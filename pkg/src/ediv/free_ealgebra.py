"""Free algebras E(V) over the Barratt-Eccles operad and almost-free algebras.

A term rho(v_1, ..., v_r) is stored as (tuple, args) in its canonical coinvariant
form: the first permutation of the tuple is the identity. Since Sigma_r acts
freely on basis tuples, each orbit has exactly one such representative. An
element is a set of canonical terms (mod 2) at a fixed suspension level.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from . import operad as op
from .operad import OperadElement, PermTuple

Term = tuple[PermTuple, tuple[str, ...]]


def canonicalize(t: PermTuple, args: Sequence[str]) -> Term:
    """Move (t, args) to its orbit representative with t[0] = identity."""
    t = tuple(tuple(w) for w in t)
    w0 = t[0]
    if len(args) != len(w0):
        raise ValueError(f"arity {len(w0)} term given {len(args)} arguments")
    if w0 == op.identity_perm(len(w0)):
        return t, tuple(args)
    return op.act_tuple(op.perm_inv(w0), t), tuple(args[i - 1] for i in w0)


@dataclass(frozen=True)
class FreeElement:
    terms: frozenset = frozenset()
    susp: int = 0

    @classmethod
    def from_terms(cls, raw: Iterable[tuple[PermTuple, Sequence[str]]], susp: int = 0) -> "FreeElement":
        out: set = set()
        for t, args in raw:
            if op.is_degenerate(t):
                continue
            out ^= {canonicalize(t, args)}
        return cls(frozenset(out), susp)

    def __add__(self, other: "FreeElement") -> "FreeElement":
        if self.susp != other.susp and self.terms and other.terms:
            raise ValueError("adding elements at different suspension levels")
        return FreeElement(self.terms ^ other.terms, self.susp if self.terms else other.susp)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[Term]:
        return sorted(self.terms, key=lambda x: (len(x[0][0]), len(x[0]), x))

    def __str__(self) -> str:
        return format_element(self)


def gen(name: str, susp: int = 0) -> FreeElement:
    return FreeElement(frozenset({(((1,),), (name,))}), susp)


def xor_elements(items: Iterable[FreeElement], susp: int = 0) -> FreeElement:
    acc: set = set()
    for e in items:
        acc ^= e.terms
    return FreeElement(frozenset(acc), susp)


def term_degree(term: Term, degrees: Mapping[str, int], susp: int = 0) -> int:
    t, args = term
    r = len(args)
    return sum(degrees[a] for a in args) - (len(t) - 1) - susp * (r - 1)


def evaluate(rho: OperadElement, elems: Sequence[FreeElement]) -> FreeElement:
    """rho(a_1, ..., a_r) in E(V): compose, concatenate the argument lists, canonicalize."""
    if len(elems) != rho.arity:
        raise ValueError(f"arity {rho.arity} needs {rho.arity} inputs, got {len(elems)}")
    for e in elems:
        if e.terms and e.susp != rho.susp:
            raise ValueError("evaluating at mismatched suspension levels")
    acc: set = set()
    for t in rho.terms:
        for combo in itertools.product(*[e.sorted_terms() for e in elems]):
            args = tuple(a for _, aa in combo for a in aa)
            for c in op.compose_tuples(t, tuple(s for s, _ in combo)):
                acc ^= {canonicalize(c, args)}
    return FreeElement(frozenset(acc), rho.susp)


def single(t: PermTuple, susp: int = 0) -> OperadElement:
    return OperadElement(len(t[0]), frozenset({t}), susp)


# presentations

@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    diff: frozenset = frozenset()  # internal differential, a sum of generator names


@dataclass
class AlmostFreeAlgebra:
    """E(V) with differential twisted by the derivation extending h: V -> E(V)."""

    generators: tuple
    h: dict = field(default_factory=dict)
    susp: int = 0
    name: str = ""
    origin: dict = field(default_factory=dict)  # divided generator -> (base name, chain)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        degs = self.degrees
        for g in self.generators:
            for d in g.diff:
                if d not in degs:
                    raise ValueError(f"unknown generator {d!r} in the differential of {g.name}")
                if degs[d] != g.degree + 1:
                    raise ValueError(f"internal differential of {g.name} must raise degree by 1")
        for name, e in self.h.items():
            if name not in degs:
                raise ValueError(f"h given on unknown generator {name!r}")
            for term in e.terms:
                for a in term[1]:
                    if a not in degs:
                        raise ValueError(f"unknown generator {a!r} in h({name})")
                if term_degree(term, degs, self.susp) != degs[name] + 1:
                    raise ValueError(f"h({name}) must have degree {degs[name] + 1}")

    @property
    def degrees(self) -> dict[str, int]:
        return {g.name: g.degree for g in self.generators}

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def element(self, name: str) -> FreeElement:
        return gen(name, self.susp)

    def h_of(self, name: str) -> FreeElement:
        return self.h.get(name, FreeElement(frozenset(), self.susp))

    def degree(self, e: FreeElement) -> Optional[int]:
        degs = {term_degree(t, self.degrees, self.susp) for t in e.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else None


def free_algebra(generators: Sequence[Generator], susp: int = 0, name: str = "") -> AlmostFreeAlgebra:
    return AlmostFreeAlgebra(tuple(generators), {}, susp, name)


def _replace(elem_args: tuple[str, ...], i: int, new: FreeElement, susp: int) -> list[FreeElement]:
    return [new if k == i else gen(a, susp) for k, a in enumerate(elem_args)]


def derivation_apply(F: AlmostFreeAlgebra, e: FreeElement) -> FreeElement:
    """d_h(rho(v_1..v_r)) = sum_i rho(v_1, .., h(v_i), .., v_r)."""
    acc: set = set()
    for t, args in e.terms:
        rho = single(t, F.susp)
        for i, a in enumerate(args):
            hv = F.h_of(a)
            if hv:
                acc ^= evaluate(rho, _replace(args, i, hv, F.susp)).terms
    return FreeElement(frozenset(acc), F.susp)


def operad_part(e: FreeElement) -> FreeElement:
    """(delta rho)(v_1, ..., v_r)."""
    raw = []
    for t, args in e.terms:
        if len(t) > 1:
            raw.extend((t[:i] + t[i + 1:], args) for i in range(len(t)))
    return FreeElement.from_terms(raw, e.susp)


def internal_part(F: AlmostFreeAlgebra, e: FreeElement) -> FreeElement:
    """sum_i rho(v_1, .., dv_i, .., v_r) for the internal differential of V."""
    diffs = {g.name: g.diff for g in F.generators}
    raw = []
    for t, args in e.terms:
        for i, a in enumerate(args):
            for d in sorted(diffs[a]):
                raw.append((t, args[:i] + (d,) + args[i + 1:]))
    return FreeElement.from_terms(raw, e.susp)


def full_differential(F: AlmostFreeAlgebra, e: FreeElement) -> FreeElement:
    return xor_elements([operad_part(e), internal_part(F, e), derivation_apply(F, e)], F.susp)


def apply_morphism(images: Mapping[str, FreeElement], e: FreeElement, susp: int = 0) -> FreeElement:
    """Extend a generator-level map V -> E(W) to an algebra morphism E(V) -> E(W)."""
    acc: set = set()
    for t, args in e.terms:
        acc ^= evaluate(single(t, susp), [images[a] for a in args]).terms
    return FreeElement(frozenset(acc), susp)


# constructions

def cell_extension(F: AlmostFreeAlgebra, new_gens: Sequence[Generator],
                   attach: Mapping[str, FreeElement]) -> AlmostFreeAlgebra:
    old = set(F.names)
    for g in new_gens:
        if g.name in old:
            raise ValueError(f"generator {g.name!r} already present")
    degs = F.degrees
    for name, e in attach.items():
        g = next((x for x in new_gens if x.name == name), None)
        if g is None:
            raise ValueError(f"attaching map given for unknown generator {name!r}")
        for term in e.terms:
            if any(a not in old for a in term[1]):
                raise ValueError(f"attaching map of {name} must land in the old generators")
            if term_degree(term, degs, F.susp) != g.degree + 1:
                raise ValueError(f"attaching map of {name} has the wrong degree")
    h = dict(F.h)
    h.update({k: v for k, v in attach.items() if v})
    return AlmostFreeAlgebra(tuple(F.generators) + tuple(new_gens), h, F.susp, F.name)


def mandell_model(n: int) -> AlmostFreeAlgebra:
    """F_n: generators e^n and b^{n-1} with h(b) = e + theta_n(e, e)."""
    if n <= 0:
        raise ValueError(f"the model needs n >= 1, got {n}")
    e, b = f"e{n}", f"b{n - 1}"
    base = free_algebra([Generator(e, n)])
    attach = gen(e) + FreeElement(frozenset({(op.theta_tuple(n), (e, e))}))
    F = cell_extension(base, [Generator(b, n - 1)], {b: attach})
    F.name = f"F_{n}"
    return F


# graded pieces

def _canonical_tuples(r: int, d: int):
    ident = op.identity_perm(r)
    perms = list(itertools.permutations(range(1, r + 1)))

    def rec(prefix):
        if len(prefix) == d + 1:
            yield tuple(prefix)
            return
        for w in perms:
            if w != prefix[-1]:
                prefix.append(w)
                yield from rec(prefix)
                prefix.pop()

    yield from rec([ident])


def _words(names: Sequence[str], degs: Mapping[str, int], r: int, target: int):
    for word in itertools.product(names, repeat=r):
        if sum(degs[a] for a in word) == target:
            yield word


def enumerate_graded_basis(F: AlmostFreeAlgebra, m: int, arity_cap: int, opdeg_cap: int,
                           allow_nonpositive: bool = False) -> list[Term]:
    """Canonical terms of degree m with arity <= R and operad degree <= D."""
    degs = F.degrees
    if not allow_nonpositive and any(d <= 0 for d in degs.values()):
        raise ValueError("enumeration needs generators of positive degree")
    names = sorted(degs)
    out = []
    for r in range(1, arity_cap + 1):
        for d in range(0, opdeg_cap + 1):
            if r == 1 and d > 0:
                break
            words = list(_words(names, degs, r, m + d + F.susp * (r - 1)))
            if not words:
                continue
            for t in _canonical_tuples(r, d):
                for w in words:
                    out.append((t, w))
    return out


def orbit_key(t: PermTuple, args: Sequence[str]) -> Term:
    """Least element of the Sigma_r orbit of (t, args), by brute force."""
    r = len(args)
    best = None
    for w in itertools.permutations(range(1, r + 1)):
        winv = op.perm_inv(w)
        cand = (op.act_tuple(w, t), tuple(args[winv[j] - 1] for j in range(r)))
        if best is None or cand < best:
            best = cand
    return best


def brute_force_orbits(F: AlmostFreeAlgebra, m: int, arity_cap: int, opdeg_cap: int) -> set:
    """Orbit keys of all (tuple, word) pairs of degree m, from every tuple of E(r)."""
    degs = F.degrees
    names = sorted(degs)
    out = set()
    for r in range(1, arity_cap + 1):
        for d in range(0, opdeg_cap + 1):
            for t in op.basis(r, d):
                for w in itertools.product(names, repeat=r):
                    if term_degree((t, w), degs, F.susp) == m:
                        out.add(orbit_key(t, w))
    return out


def check_d_squared(F: AlmostFreeAlgebra, lo: int, hi: int, arity_cap: int = 2, opdeg_cap: int = 2) -> dict:
    """delta_h^2 on the generators and on every enumerated basis term of degree in [lo, hi]."""
    items = [F.element(g) for g in F.names]
    for m in range(lo, hi + 1):
        items.extend(FreeElement(frozenset({t}), F.susp)
                     for t in enumerate_graded_basis(F, m, arity_cap, opdeg_cap, allow_nonpositive=True)
                     if len(t[1]) > 1)
    failures = []
    for e in items:
        dd = full_differential(F, full_differential(F, e))
        if dd:
            failures.append(format_element(e))
    return {"checked": len(items), "failures": failures}


# text and JSON

def format_term(term: Term) -> str:
    t, args = term
    if len(args) == 1 and len(t) == 1:
        return args[0]
    return f"{op.format_tuple(t)}({','.join(args)})"


def format_element(e: FreeElement) -> str:
    if e.is_zero():
        return "0"
    return " + ".join(format_term(t) for t in e.sorted_terms())


def _split_top(s: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_element(s: str, susp: int = 0) -> FreeElement:
    s = s.strip()
    if s == "0":
        return FreeElement(frozenset(), susp)
    raw = []
    for part in _split_top(s, "+"):
        if "(" in part:
            head, rest = part.split("(", 1)
            if not rest.endswith(")"):
                raise ValueError(f"malformed term {part!r}")
            args = tuple(a.strip() for a in rest[:-1].split(","))
            raw.append((op.parse_tuple(head), args))
        else:
            raw.append((((1,),), (part,)))
    return FreeElement.from_terms(raw, susp)


def presentation_to_json(F: AlmostFreeAlgebra) -> dict:
    gens = []
    for g in F.generators:
        item = {"name": g.name, "degree": g.degree}
        if g.diff:
            item["diff"] = sorted(g.diff)
        gens.append(item)
    out = {"generators": gens, "h": {k: format_element(F.h[k]) for k in F.names if k in F.h and F.h[k]}}
    if F.susp:
        out["susp"] = F.susp
    return out


def presentation_from_json(data: dict | str) -> AlmostFreeAlgebra:
    if isinstance(data, str):
        data = json.loads(data)
    susp = int(data.get("susp", 0))
    gens = tuple(Generator(g["name"], int(g["degree"]), frozenset(g.get("diff", ())))
                 for g in data["generators"])
    h = {k: parse_element(v, susp) for k, v in data.get("h", {}).items()}
    return AlmostFreeAlgebra(gens, h, susp)
