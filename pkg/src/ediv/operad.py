"""The Barratt-Eccles operad over F2.

A basis element of E(r)_d is a tuple (w_0, ..., w_d) of permutations of 1..r in
one-line notation with no two adjacent entries equal. Elements are finite sets of
such tuples (addition is symmetric difference). The operadic suspension is kept
as an integer level ``susp``: an arity-r degree-d tuple sits in upper degree
-d - susp*(r-1).

Permutations act on the associative operad: w stands for x_{w(1)}...x_{w(r)},
the left action is composition w.u, and w(u_1, ..., u_r) writes the blocks of
u_{w(1)}, ..., u_{w(r)} side by side.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]
PermTuple = tuple[Perm, ...]


def identity_perm(r: int) -> Perm:
    return tuple(range(1, r + 1))


def perm_mul(w: Perm, u: Perm) -> Perm:
    """(w u)(i) = w(u(i))."""
    return tuple(w[i - 1] for i in u)


def perm_inv(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, wi in enumerate(w, 1):
        out[wi - 1] = i
    return tuple(out)


def is_perm(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def is_degenerate(t: PermTuple) -> bool:
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


@dataclass(frozen=True)
class OperadElement:
    arity: int
    terms: frozenset
    susp: int = 0

    @classmethod
    def from_tuples(cls, arity: int, tuples: Iterable[PermTuple], susp: int = 0) -> "OperadElement":
        """Sum of tuples mod 2, degenerate ones dropped."""
        counts = Counter(tuple(tuple(w) for w in t) for t in tuples)
        terms = []
        for t, c in counts.items():
            if c % 2 == 0 or is_degenerate(t):
                continue
            for w in t:
                if len(w) != arity or not is_perm(w):
                    raise ValueError(f"{w} is not a permutation of 1..{arity}")
            terms.append(t)
        return cls(arity, frozenset(terms), susp)

    @classmethod
    def zero(cls, arity: int, susp: int = 0) -> "OperadElement":
        return cls(arity, frozenset(), susp)

    def __add__(self, other: "OperadElement") -> "OperadElement":
        if (self.arity, self.susp) != (other.arity, other.susp):
            raise ValueError("adding elements of different arity or suspension")
        return OperadElement(self.arity, self.terms ^ other.terms, self.susp)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(t) - 1 for t in self.terms}

    def upper_degree(self, t: PermTuple) -> int:
        return -(len(t) - 1) - self.susp * (self.arity - 1)

    def sorted_terms(self) -> list[PermTuple]:
        return sorted(self.terms, key=lambda t: (len(t), t))

    def suspend(self, levels: int = 1) -> "OperadElement":
        return OperadElement(self.arity, self.terms, self.susp + levels)

    def __str__(self) -> str:
        return format_element(self)


def element(*tuples: Sequence[Sequence[int]], susp: int = 0) -> OperadElement:
    tuples_ = [tuple(tuple(w) for w in t) for t in tuples]
    if not tuples_:
        raise ValueError("use OperadElement.zero for the empty sum")
    return OperadElement.from_tuples(len(tuples_[0][0]), tuples_, susp)


def unit() -> OperadElement:
    return OperadElement(1, frozenset({((1,),)}))


TAU: Perm = (2, 1)
ID2: Perm = (1, 2)


def theta_tuple(d: int) -> PermTuple:
    return tuple(ID2 if k % 2 == 0 else TAU for k in range(d + 1))


def theta(d: int) -> OperadElement:
    """theta_d = (id, tau, id, ...) of length d+1."""
    if d < 0:
        return OperadElement.zero(2)
    return OperadElement(2, frozenset({theta_tuple(d)}))


def tau_theta(d: int) -> OperadElement:
    return act(TAU, theta(d))


def id_element(r: int) -> OperadElement:
    return OperadElement(r, frozenset({(identity_perm(r),)}))


# differential, action, diagonal

def differential(e: OperadElement) -> OperadElement:
    out = []
    for t in e.terms:
        for i in range(len(t)):
            if len(t) > 1:
                out.append(t[:i] + t[i + 1:])
    return OperadElement.from_tuples(e.arity, out, e.susp)


def act_tuple(w: Perm, t: PermTuple) -> PermTuple:
    return tuple(perm_mul(w, u) for u in t)


def act(w: Sequence[int], e: OperadElement) -> OperadElement:
    w = tuple(w)
    if len(w) != e.arity or not is_perm(w):
        raise ValueError(f"{w} is not a permutation of arity {e.arity}")
    return OperadElement(e.arity, frozenset(act_tuple(w, t) for t in e.terms), e.susp)


def diagonal_tuple(t: PermTuple) -> list[tuple[PermTuple, PermTuple]]:
    return [(t[: k + 1], t[k:]) for k in range(len(t))]


def diagonal(e: OperadElement) -> frozenset:
    """Delta(e) as a set of (left tuple, right tuple) pairs, mod 2."""
    c = Counter()
    for t in e.terms:
        for pair in diagonal_tuple(t):
            c[pair] += 1
    return frozenset(p for p, k in c.items() if k % 2)


# composition

def substitute(w: Perm, us: Sequence[Perm]) -> Perm:
    """w(u_1, ..., u_r): blocks of u_{w(1)}, ..., u_{w(r)} concatenated."""
    sizes = [len(u) for u in us]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    out: list[int] = []
    for k in w:
        out.extend(offsets[k - 1] + j for j in us[k - 1])
    return tuple(out)


def _grid_paths(lengths: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Vertex sequences of unit-step lattice paths from 0 to ``lengths``."""
    steps = [i for i, n in enumerate(lengths) for _ in range(n)]
    for order in _multiset_perms(steps):
        pos = [0] * len(lengths)
        verts = [tuple(pos)]
        for i in order:
            pos[i] += 1
            verts.append(tuple(pos))
        yield verts


def _multiset_perms(items: list[int]) -> Iterator[tuple[int, ...]]:
    counts = Counter(items)
    keys = sorted(counts)
    n = len(items)

    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                yield from rec(prefix)
                prefix.pop()
                counts[k] += 1

    yield from rec([])


@lru_cache(maxsize=200_000)
def compose_tuples(rho: PermTuple, sigmas: tuple[PermTuple, ...]) -> frozenset:
    """Shuffle-then-substitute composition of basis tuples, mod 2."""
    lengths = [len(rho) - 1] + [len(s) - 1 for s in sigmas]
    c: Counter = Counter()
    for verts in _grid_paths(lengths):
        t = tuple(substitute(rho[v[0]], [s[v[i + 1]] for i, s in enumerate(sigmas)]) for v in verts)
        if not is_degenerate(t):
            c[t] += 1
    return frozenset(t for t, k in c.items() if k % 2)


def compose(rho: OperadElement, sigmas: Sequence[OperadElement]) -> OperadElement:
    if len(sigmas) != rho.arity:
        raise ValueError(f"arity {rho.arity} needs {rho.arity} inputs, got {len(sigmas)}")
    susps = {rho.susp} | {s.susp for s in sigmas}
    if len(susps) != 1:
        raise ValueError("composing elements at different suspension levels")
    arity = sum(s.arity for s in sigmas)
    acc: set = set()
    for t in rho.terms:
        for combo in itertools.product(*[s.sorted_terms() for s in sigmas]):
            acc ^= compose_tuples(t, tuple(combo))
    return OperadElement(arity, frozenset(acc), rho.susp)


def partial_compose(rho: OperadElement, slot: int, sigma: OperadElement) -> OperadElement:
    if not 1 <= slot <= rho.arity:
        raise ValueError(f"slot {slot} out of range 1..{rho.arity}")
    u = unit().suspend(rho.susp) if rho.susp else unit()
    ins = [u] * rho.arity
    ins[slot - 1] = sigma
    return compose(rho, ins)


# epsilon and cap

def epsilon(t: PermTuple) -> int:
    r = len(t[0])
    if len(t) - 1 != r - 1:
        return 0
    return 1 if sorted(w[0] for w in t) == list(range(1, r + 1)) else 0


def epsilon_element(e: OperadElement) -> int:
    return sum(epsilon(t) for t in e.terms) % 2


def cap_tuple(t: PermTuple) -> PermTuple | None:
    r = len(t[0])
    if len(t) < r or not epsilon(t[:r]):
        return None
    return t[r - 1:]


def cap_epsilon(e: OperadElement) -> OperadElement:
    """epsilon_r cap e = sum eps(e_(1)) e_(2), one suspension level up."""
    out = [c for c in (cap_tuple(t) for t in e.terms) if c is not None]
    return OperadElement.from_tuples(e.arity, out, e.susp + 1)


# bases

def basis_count(r: int, d: int) -> int:
    f = math.factorial(r)
    return f * (f - 1) ** d


def basis(r: int, d: int) -> Iterator[PermTuple]:
    perms = list(itertools.permutations(range(1, r + 1)))

    def rec(prefix):
        if len(prefix) == d + 1:
            yield tuple(prefix)
            return
        for w in perms:
            if not prefix or prefix[-1] != w:
                prefix.append(w)
                yield from rec(prefix)
                prefix.pop()

    yield from rec([])


# text format

def format_tuple(t: PermTuple) -> str:
    sep = "" if len(t[0]) < 10 else " "
    return "|".join(sep.join(map(str, w)) for w in t)


def format_element(e: OperadElement) -> str:
    if e.is_zero():
        return "0"
    return " + ".join(format_tuple(t) for t in e.sorted_terms())


def parse_tuple(s: str) -> PermTuple:
    words = []
    for part in s.strip().split("|"):
        part = part.strip()
        w = tuple(int(x) for x in part.split()) if " " in part else tuple(int(ch) for ch in part)
        words.append(w)
    return tuple(words)


def parse_element(s: str, susp: int = 0) -> OperadElement:
    tuples = [parse_tuple(p) for p in s.split("+") if p.strip()]
    if not tuples:
        raise ValueError("empty element")
    return OperadElement.from_tuples(len(tuples[0][0]), tuples, susp)


def epsilon_cocycle_violations(r: int, limit: int = 5) -> tuple[int, list[PermTuple]]:
    """Exhaustively evaluate eps_r on the boundary of every degree-r tuple.

    Returns (number of tuples checked, first few tuples with eps(dt) != 0). Only
    the first letters and the degenerate faces matter, so the loop works on
    permutation indices rather than building elements.
    """
    perms = list(itertools.permutations(range(1, r + 1)))
    first = [p[0] for p in perms]
    full = (1 << r) - 1
    n = r + 1
    checked = 0
    bad: list[PermTuple] = []
    idx = [0] * n
    others = [[j for j in range(len(perms)) if j != i] for i in range(len(perms))]

    def leaf():
        total = 0
        for i in range(n):
            if 0 < i < n - 1 and idx[i - 1] == idx[i + 1]:
                continue
            mask = 0
            for k in range(n):
                if k != i:
                    mask |= 1 << (first[idx[k]] - 1)
            if mask == full:
                total ^= 1
        return total

    def rec(pos):
        nonlocal checked
        choices = range(len(perms)) if pos == 0 else others[idx[pos - 1]]
        for j in choices:
            idx[pos] = j
            if pos == n - 1:
                checked += 1
                if leaf() and len(bad) < limit:
                    bad.append(tuple(perms[k] for k in idx))
            else:
                rec(pos + 1)

    rec(0)
    return checked, bad


def equality_patterns(length: int, max_blocks: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings with no two adjacent letters equal."""
    def rec(prefix, blocks):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for k in range(min(blocks + 1, max_blocks)):
            if prefix and prefix[-1] == k:
                continue
            prefix.append(k)
            yield from rec(prefix, max(blocks, k + 1))
            prefix.pop()

    yield from rec([], 0)


def d_squared_violations(r: int, d: int) -> tuple[int, list[PermTuple]]:
    """delta^2 = 0 on every basis tuple of E(r)_d.

    delta only sees which entries of a tuple are equal, and relabelling the
    permutations by any injection commutes with it and with the degeneracy test.
    So each equality pattern is checked once on one realization; returns the
    number of tuples covered (which must equal basis_count) and the failures.
    """
    perms = list(itertools.permutations(range(1, r + 1)))
    n = len(perms)
    covered = 0
    bad = []
    for pat in equality_patterns(d + 1, n):
        k = max(pat) + 1
        covered += math.perm(n, k)
        t = tuple(perms[i] for i in pat)
        if differential(differential(OperadElement(r, frozenset({t})))):
            bad.append(t)
    return covered, bad
