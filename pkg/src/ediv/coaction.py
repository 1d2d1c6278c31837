"""Co-operations on chains and the induced operations on cochains.

Simplicial chains carry the arity <= 2 part of the coalgebra structure: theta_i
acts by Steenrod's cup-i coproduct and tau.theta_i by its twist. The reduced
chains of the circle carry the full structure rho*(e1) = eps(rho) e1^r, and the
chains of a point carry rho*(pt) = aug(rho) pt^r.

Tensor words are tuples of basis items; a sum of them is a frozenset (mod 2).
"""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Callable, Hashable, Iterable, Optional, Sequence

from . import operad as op
from .operad import OperadElement, PermTuple
from .simplicial import (
    ChainElement,
    CochainElement,
    ProductSet,
    SimplexRef,
    SimplicialSet,
    restrict,
    shuffle_simplices,
)


class CapabilityError(ValueError):
    """A co-operation of higher arity than the carrier supports was requested."""


def xor_sum(items: Iterable) -> frozenset:
    c = Counter(items)
    return frozenset(k for k, v in c.items() if v % 2)


# cup-i coproducts

def cup_i_vertex_sets(n: int, i: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Front/back vertex sets of Steenrod's cup-i coproduct on an n-simplex.

    Cut points u_0 < ... < u_i split [0, n] into overlapping intervals
    [0,u_0], [u_0,u_1], ..., [u_i,n]; even intervals go left, odd ones right.
    """
    out = []
    for cuts in itertools.combinations(range(n + 1), i + 1):
        bounds = (0,) + cuts + (n,)
        left: set[int] = set()
        right: set[int] = set()
        for k in range(i + 2):
            seg = range(bounds[k], bounds[k + 1] + 1)
            (left if k % 2 == 0 else right).update(seg)
        out.append((tuple(sorted(left)), tuple(sorted(right))))
    return out


def cup_i_coproduct(x: SimplicialSet, i: int, s: SimplexRef) -> frozenset:
    """theta_i*(s) as a set of (front, back) nondegenerate SimplexRef pairs."""
    if i < 0:
        return frozenset()
    terms = []
    for lv, rv in cup_i_vertex_sets(s.dim, i):
        a = restrict(x, s, lv)
        b = restrict(x, s, rv)
        if not a.degenerate and not b.degenerate:
            terms.append((a, b))
    return xor_sum(terms)


def aw_coproduct(x: SimplicialSet, s: SimplexRef) -> frozenset:
    n = s.dim
    terms = []
    for k in range(n + 1):
        a = restrict(x, s, tuple(range(k + 1)))
        b = restrict(x, s, tuple(range(k, n + 1)))
        if not a.degenerate and not b.degenerate:
            terms.append((a, b))
    return xor_sum(terms)


def _theta_index(t: PermTuple) -> tuple[int, bool]:
    """(d, twisted) for an arity-2 basis tuple, which is theta_d or tau.theta_d."""
    return len(t) - 1, t[0] == op.TAU


# coalgebra handles

class CoalgebraHandle:
    """Basis items are opaque hashables with a lower degree."""

    name = "coalgebra"
    capability: Optional[int] = None
    reduced = False

    def basis(self) -> list:
        raise NotImplementedError

    def degree(self, c) -> int:
        raise NotImplementedError

    def boundary(self, c) -> frozenset:
        raise NotImplementedError

    def _co_tuple(self, t: PermTuple, c) -> frozenset:
        raise NotImplementedError

    def check_arity(self, r: int) -> None:
        if self.capability is not None and r > self.capability:
            raise CapabilityError(
                f"{self.name} supports co-operations of arity <= {self.capability}, got arity {r}")

    def co_operation(self, rho: OperadElement, c) -> frozenset:
        """rho*(c) as a set of tensor words (tuples of basis items)."""
        self.check_arity(rho.arity)
        acc: list = []
        for t in rho.terms:
            acc.extend(self._co_tuple(t, c))
        return xor_sum(acc)

    def co_tuple(self, t: PermTuple, c) -> frozenset:
        self.check_arity(len(t[0]))
        return self._co_tuple(t, c)

    def label(self, c) -> str:
        return str(c)


class SimplicialCoalgebra(CoalgebraHandle):
    """N_*(X) (or the reduced chains, dropping a base vertex) at arity <= 2."""

    capability = 2

    def __init__(self, x: SimplicialSet, reduced: bool = False, basepoint: Hashable = None, name: str = "N_*(X)"):
        self.x = x
        self.reduced = reduced
        self.basepoint = basepoint if basepoint is not None else x.nondegenerate(0)[0]
        self.name = name
        self._basis = [SimplexRef.nondegenerate(n, s)
                       for n in range(x.top_dim + 1) for s in x.nondegenerate(n)]
        if reduced:
            self._basis = [c for c in self._basis if not self._is_base(c)]
        self._cache: dict = {}

    def _is_base(self, c: SimplexRef) -> bool:
        return c.dim == 0 and c.base == self.basepoint

    def basis(self) -> list:
        return list(self._basis)

    def degree(self, c: SimplexRef) -> int:
        return c.dim

    def label(self, c: SimplexRef) -> str:
        from .simplicial import simplex_id_str
        return simplex_id_str(c.base)

    def boundary(self, c: SimplexRef) -> frozenset:
        if c.dim == 0:
            return frozenset()
        out = []
        for i in range(c.dim + 1):
            f = restrict(self.x, c, [v for v in range(c.dim + 1) if v != i])
            if not f.degenerate and not (self.reduced and self._is_base(f)):
                out.append(f)
        return xor_sum(out)

    def _co_tuple(self, t: PermTuple, c: SimplexRef) -> frozenset:
        key = (t, c)
        if key in self._cache:
            return self._cache[key]
        r = len(t[0])
        if r == 1:
            out = frozenset({(c,)}) if len(t) == 1 else frozenset()
        elif r == 2:
            d, twisted = _theta_index(t)
            pairs = cup_i_coproduct(self.x, d, c)
            if twisted:
                pairs = frozenset((b, a) for a, b in pairs)
            if self.reduced:
                pairs = frozenset(p for p in pairs if not any(self._is_base(q) for q in p))
            out = pairs
        else:
            raise CapabilityError(f"{self.name} supports co-operations of arity <= 2, got arity {r}")
        self._cache[key] = out
        return out


class CircleCoalgebra(CoalgebraHandle):
    """Reduced chains of S^1: one basis item e1 with rho*(e1) = eps(rho) e1^r."""

    name = "reduced N_*(S^1)"
    capability = None
    reduced = True
    E1 = "e1"

    def basis(self) -> list:
        return [self.E1]

    def degree(self, c) -> int:
        return 1

    def boundary(self, c) -> frozenset:
        return frozenset()

    def _co_tuple(self, t: PermTuple, c) -> frozenset:
        r = len(t[0])
        return frozenset({(self.E1,) * r}) if op.epsilon(t) else frozenset()


class PointCoalgebra(CoalgebraHandle):
    """Chains of a point: rho*(pt) = pt^r for each degree-0 term of rho."""

    name = "N_*(pt)"
    capability = None
    PT = "pt"

    def basis(self) -> list:
        return [self.PT]

    def degree(self, c) -> int:
        return 0

    def boundary(self, c) -> frozenset:
        return frozenset()

    def _co_tuple(self, t: PermTuple, c) -> frozenset:
        return frozenset({(self.PT,) * len(t[0])}) if len(t) == 1 else frozenset()


# cochain operations

class LazyCochain:
    """A cochain given by a memoized function on nondegenerate simplex ids."""

    def __init__(self, degree: int, fn: Callable[[Hashable], int]):
        self.degree = degree
        self._fn = fn
        self._memo: dict = {}

    def value(self, sid) -> int:
        v = self._memo.get(sid)
        if v is None:
            v = self._fn(sid) & 1
            self._memo[sid] = v
        return v

    def materialize(self, x: SimplicialSet) -> CochainElement:
        return CochainElement(self.degree, frozenset(s for s in x.nondegenerate(self.degree) if self.value(s)))


def _value(u, ref: SimplexRef) -> int:
    if ref.degenerate:
        return 0
    return u.value(ref.base)


def cochain_operation(x: SimplicialSet, rho: OperadElement, us: Sequence) -> LazyCochain:
    """(rho(u_1, ..., u_r))(s) = (u_1 (x) ... (x) u_r)(rho*(s)); rho homogeneous."""
    if rho.arity > 2:
        raise CapabilityError(f"simplicial cochains support operations of arity <= 2, got arity {rho.arity}")
    if len(us) != rho.arity:
        raise ValueError("argument count does not match arity")
    degs = rho.degrees()
    if len(degs) > 1:
        raise ValueError("cochain_operation needs a homogeneous operad element")
    d = degs.pop() if degs else 0
    out_deg = sum(u.degree for u in us) - d
    terms = rho.sorted_terms()

    def fn(sid):
        s = SimplexRef.nondegenerate(out_deg, sid)
        total = 0
        for t in terms:
            if rho.arity == 1:
                total ^= us[0].value(sid)
                continue
            dd, twisted = _theta_index(t)
            for lv, rv in cup_i_vertex_sets(out_deg, dd):
                # (tau theta)* swaps the factors, so u_1 reads the back face
                first, second = (rv, lv) if twisted else (lv, rv)
                if len(first) - 1 != us[0].degree or len(second) - 1 != us[1].degree:
                    continue
                total ^= _value(us[0], restrict(x, s, first)) & _value(us[1], restrict(x, s, second))
        return total

    return LazyCochain(out_deg, fn)


def cup(x: SimplicialSet, u, v) -> LazyCochain:
    return cochain_operation(x, op.theta(0), [u, v])


def unit_cochain(x: SimplicialSet) -> CochainElement:
    return CochainElement(0, frozenset(x.nondegenerate(0)))


def pullback(proj_index: int, u) -> LazyCochain:
    """Pull a cochain on a factor back along a product projection."""
    def fn(sid):
        ref = sid[proj_index]
        return 0 if ref.degenerate else u.value(ref.base)
    return LazyCochain(u.degree, fn)


# algebras for Hom and tensor constructions

class CochainAlgebra:
    """N^*(X) with operations of arity <= 2; elements are CochainElements."""

    def __init__(self, x: SimplicialSet):
        self.x = x

    def zero(self, degree: int = 0) -> CochainElement:
        return CochainElement(degree, frozenset())

    def add(self, a: CochainElement, b: CochainElement) -> CochainElement:
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        return a + b

    def operate(self, rho: OperadElement, args: Sequence[CochainElement]) -> CochainElement:
        out = None
        by_deg: dict[int, list] = {}
        for t in rho.terms:
            by_deg.setdefault(len(t) - 1, []).append(t)
        for d, ts in sorted(by_deg.items()):
            piece = OperadElement(rho.arity, frozenset(ts))
            deg = sum(a.degree for a in args) - d
            if deg < 0 or deg > self.x.top_dim:
                continue
            c = cochain_operation(self.x, piece, args).materialize(self.x)
            out = c if out is None else self.add(out, c)
        return out if out is not None else self.zero()

    def differential(self, a: CochainElement) -> CochainElement:
        n = a.degree
        if n + 1 > self.x.top_dim:
            return self.zero(n + 1)
        out = []
        for sid in self.x.nondegenerate(n + 1):
            total = 0
            for i in range(n + 2):
                f = self.x.face(n + 1, sid, i)
                if not f.degenerate and f.base in a.support:
                    total ^= 1
            if total:
                out.append(sid)
        return CochainElement(n + 1, frozenset(out))


def tensor_algebra_operation(A, B, rho: OperadElement, pairs: Sequence[tuple]) -> list[tuple]:
    """rho(a_1 (x) b_1, ..., a_r (x) b_r) = sum rho_(1)(a...) (x) rho_(2)(b...).

    Returns the result as a list of pure tensors (a, b) whose sum is the answer.
    """
    if len(pairs) != rho.arity:
        raise ValueError("argument count does not match arity")
    out = []
    for t1, t2 in sorted(op.diagonal(rho), key=lambda p: (len(p[0]), p)):
        a = A.operate(OperadElement(rho.arity, frozenset({t1})), [p[0] for p in pairs])
        b = B.operate(OperadElement(rho.arity, frozenset({t2})), [p[1] for p in pairs])
        if not a.is_zero() and not b.is_zero():
            out.append((a, b))
    return out


def expand_cochain_tensors(pairs: Iterable[tuple[CochainElement, CochainElement]]) -> frozenset:
    """Basis expansion of a sum of pure cochain tensors."""
    items = []
    for a, b in pairs:
        for sa in a.support:
            for sb in b.support:
                items.append(((a.degree, sa), (b.degree, sb)))
    return xor_sum(items)


class HomMap:
    """A linear map K -> A given on the basis of K."""

    def __init__(self, k: CoalgebraHandle, values: dict):
        self.k = k
        self.values = dict(values)

    def __call__(self, c):
        return self.values[c]


def hom_algebra_operation(k: CoalgebraHandle, A, rho: OperadElement, us: Sequence[HomMap]) -> HomMap:
    """rho(u_1, ..., u_r)(c) = sum rho_(2)(u_1 (x) ... (x) u_r (rho_(1)*(c)))."""
    if len(us) != rho.arity:
        raise ValueError("argument count does not match arity")
    k.check_arity(rho.arity)
    delta = sorted(op.diagonal(rho), key=lambda p: (len(p[0]), p))
    values = {}
    for c in k.basis():
        acc = None
        for t1, t2 in delta:
            for word in k.co_tuple(t1, c):
                piece = A.operate(OperadElement(rho.arity, frozenset({t2}), rho.susp),
                                  [u(ci) for u, ci in zip(us, word)])
                acc = piece if acc is None else A.add(acc, piece)
        values[c] = acc if acc is not None else A.zero()
    return HomMap(k, values)


def hom_differential(k: CoalgebraHandle, A, u: HomMap) -> HomMap:
    """(delta u)(c) = delta_A(u(c)) + u(dc)."""
    values = {}
    for c in k.basis():
        acc = A.differential(u(c))
        for f in k.boundary(c):
            acc = A.add(acc, u(f))
        values[c] = acc
    return HomMap(k, values)


# shuffle and Alexander-Whitney between X x Y and X, Y

def shuffle_chain(p: ProductSet, a: SimplexRef, b: SimplexRef) -> frozenset:
    """Eilenberg-Zilber shuffle of a (x) b as a set of nondegenerate product simplex ids."""
    return xor_sum(ref.base for ref in shuffle_simplices(a, b))


def aw_product(p: ProductSet, s: SimplexRef) -> frozenset:
    """Alexander-Whitney N_*(X x Y) -> N_*(X) (x) N_*(Y) on a product simplex."""
    n = s.dim
    out = []
    for k in range(n + 1):
        front = restrict(p, s, tuple(range(k + 1)))
        back = restrict(p, s, tuple(range(k, n + 1)))
        if front.degenerate or back.degenerate:
            continue
        rx = front.base[0]
        ry = back.base[1]
        fx = SimplexRef(tuple(rx.eta[e] for e in front.eta), rx.base)
        by = SimplexRef(tuple(ry.eta[e] for e in back.eta), ry.base)
        if not fx.degenerate and not by.degenerate:
            out.append((fx.base, fx.dim, by.base, by.dim))
    return xor_sum(out)


def shuffle_map(p: ProductSet, u) -> frozenset:
    """Dual of the shuffle: u on X x Y |-> the set of (a, b) with u(EZ(a (x) b)) = 1.

    Basis items are (degree, id) pairs for X and Y.
    """
    out = []
    x, y = p.x, p.y
    for i in range(x.top_dim + 1):
        j = u.degree - i
        if j < 0 or j > y.top_dim:
            continue
        for a in x.nondegenerate(i):
            for b in y.nondegenerate(j):
                total = 0
                for sid in shuffle_chain(p, SimplexRef.nondegenerate(i, a), SimplexRef.nondegenerate(j, b)):
                    total ^= u.value(sid)
                if total:
                    out.append(((i, a), (j, b)))
    return xor_sum(out)


def _tensor_boundary(x: SimplicialSet, pairs: Iterable[tuple[SimplexRef, SimplexRef]]) -> frozenset:
    out = []
    for a, b in pairs:
        for side in (0, 1):
            c = (a, b)[side]
            if c.dim == 0:
                continue
            for i in range(c.dim + 1):
                f = restrict(x, c, [v for v in range(c.dim + 1) if v != i])
                if not f.degenerate:
                    out.append((f, b) if side == 0 else (a, f))
    return xor_sum(out)


def boundary_coherence_defect(x: SimplicialSet, i: int, s: SimplexRef) -> frozenset:
    """d theta_i*(s) + theta_i*(ds) + (1 + T) theta_{i-1}*(s); empty when coherent."""
    lhs = list(_tensor_boundary(x, cup_i_coproduct(x, i, s)))
    for k in range(s.dim + 1 if s.dim else 0):
        f = restrict(x, s, [v for v in range(s.dim + 1) if v != k])
        if not f.degenerate:
            lhs.extend(cup_i_coproduct(x, i, f))
    prev = cup_i_coproduct(x, i - 1, s)
    lhs.extend(prev)
    lhs.extend((b, a) for a, b in prev)
    return xor_sum(lhs)


# the shuffle map is a coalgebra map for theta_0 but not for the whole operad

def _chain_boundary_ref(x: SimplicialSet, c: SimplexRef) -> list[SimplexRef]:
    if c.dim == 0:
        return []
    out = []
    for i in range(c.dim + 1):
        f = restrict(x, c, [v for v in range(c.dim + 1) if v != i])
        if not f.degenerate:
            out.append(f)
    return out


def aw_shuffle_defects(p: ProductSet) -> list:
    """Pairs (a, b) of nondegenerate simplices with AW(EZ(a (x) b)) != a (x) b."""
    bad = []
    for i in range(p.x.top_dim + 1):
        for j in range(p.y.top_dim + 1):
            for a in p.x.nondegenerate(i):
                for b in p.y.nondegenerate(j):
                    acc = []
                    for sid in shuffle_chain(p, SimplexRef.nondegenerate(i, a), SimplexRef.nondegenerate(j, b)):
                        acc.extend(aw_product(p, SimplexRef.nondegenerate(i + j, sid)))
                    if xor_sum(acc) != frozenset({(a, i, b, j)}):
                        bad.append((a, b))
    return bad


def shuffle_chain_map_defects(p: ProductSet) -> list:
    """Pairs (a, b) with d EZ(a (x) b) != EZ(d(a (x) b))."""
    bad = []
    for i in range(p.x.top_dim + 1):
        for j in range(p.y.top_dim + 1):
            for a in p.x.nondegenerate(i):
                for b in p.y.nondegenerate(j):
                    ra, rb = SimplexRef.nondegenerate(i, a), SimplexRef.nondegenerate(j, b)
                    lhs = []
                    for sid in shuffle_chain(p, ra, rb):
                        lhs.extend(f.base for f in _chain_boundary_ref(p, SimplexRef.nondegenerate(i + j, sid)))
                    rhs = []
                    for fa in _chain_boundary_ref(p.x, ra):
                        rhs.extend(shuffle_chain(p, fa, rb))
                    for fb in _chain_boundary_ref(p.y, rb):
                        rhs.extend(shuffle_chain(p, ra, fb))
                    if xor_sum(lhs) != xor_sum(rhs):
                        bad.append((a, b))
    return bad


def _tensor_operate(p: ProductSet, rho: OperadElement, us: Sequence[frozenset]) -> frozenset:
    """rho acting on N^*(X) (x) N^*(Y) through the diagonal, on basis expansions."""
    ax, ay = CochainAlgebra(p.x), CochainAlgebra(p.y)
    acc = []
    pure = [[(CochainElement(i, frozenset({a})), CochainElement(j, frozenset({b}))) for (i, a), (j, b) in u]
            for u in us]
    for combo in itertools.product(*pure):
        acc.extend(expand_cochain_tensors(tensor_algebra_operation(ax, ay, rho, list(combo))))
    return xor_sum(acc)


def _basis_expansion(pairs: frozenset) -> frozenset:
    return frozenset(((i, a), (j, b)) for (i, a), (j, b) in pairs)


def shuffle_witness(p: ProductSet, max_opdeg: int = 2) -> Optional[dict]:
    """Search (rho, u, v) with EZ*(rho(u, v)) != rho(EZ* u, EZ* v).

    EZ* is the dual of the shuffle map, N^*(X x Y) -> N^*(X) (x) N^*(Y). The
    search runs over theta_d and tau.theta_d by increasing d, then over single
    simplex cochains u, v; the first hit is re-verified before returning.
    """
    prod_alg = CochainAlgebra(p)
    cochains = [CochainElement(n, frozenset({s})) for n in range(p.top_dim + 1) for s in p.nondegenerate(n)]
    for d in range(max_opdeg + 1):
        for rho in (op.theta(d), op.tau_theta(d)):
            for u in cochains:
                for v in cochains:
                    out_deg = u.degree + v.degree - d
                    if out_deg < 0 or out_deg > p.top_dim:
                        continue
                    lhs = shuffle_map(p, prod_alg.operate(rho, [u, v]))
                    rhs = _tensor_operate(p, rho, [shuffle_map(p, u), shuffle_map(p, v)])
                    if lhs != rhs:
                        again = shuffle_map(p, prod_alg.operate(rho, [u, v])) != _tensor_operate(
                            p, rho, [shuffle_map(p, u), shuffle_map(p, v)])
                        return {"rho": op.format_element(rho), "u": u, "v": v,
                                "lhs": lhs, "rhs": rhs, "verified": again}
    return None
