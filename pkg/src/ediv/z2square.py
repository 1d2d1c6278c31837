"""Vectorized chain-level squares on (nerve Z/2 <= top)^2.

The product of two nerves of Z/2 is the nerve of (Z/2)^2, whose nondegenerate
D-simplices are words of length D in the letters 1 (x-bit), 2 (y-bit), 3 (both).
Restricting a word to vertices v_0 < ... < v_p has letters P[v_k] ^ P[v_{k-1}]
where P is the prefix XOR; a zero letter is degenerate. Truncating each factor
at ``top`` keeps words with at most ``top`` x-letters and ``top`` y-letters, and
the cohomology is F2[x, y]/(x^{top+1}, y^{top+1}).

Cochains are boolean arrays over the words of one degree. A class of degree D is
read off by pairing with the Eilenberg-Zilber cycles EZ(z_a (x) z_b), which are
dual to x^a y^b; the result is a set of exponent pairs (a, b).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .coaction import cup_i_vertex_sets
from .steenrod import Monomial, adem_normalize, lucas_parity


def _encode(words: np.ndarray) -> np.ndarray:
    out = np.zeros(len(words), dtype=np.int64)
    for k in range(words.shape[1]):
        out = out * 4 + words[:, k]
    return out


class Z2SquaredNerve:
    def __init__(self, top: int = 6):
        self.top = top
        self.words: dict[int, np.ndarray] = {}
        self.keys: dict[int, np.ndarray] = {}
        cur = np.zeros((1, 0), dtype=np.int8)
        for d in range(2 * top + 1):
            if d:
                parts = [np.hstack([cur, np.full((len(cur), 1), c, dtype=np.int8)]) for c in (1, 2, 3)]
                cur = np.vstack(parts)
                nx = (cur & 1).astype(bool).sum(axis=1)
                ny = (cur & 2).astype(bool).sum(axis=1)
                cur = cur[(nx <= top) & (ny <= top)]
            keys = _encode(cur)
            order = np.argsort(keys)
            cur = cur[order]
            self.words[d] = cur
            self.keys[d] = keys[order]
        self._shuffle_index: dict = {}

    @property
    def max_degree(self) -> int:
        return 2 * self.top

    def count(self, d: int) -> int:
        return len(self.words[d]) if d in self.words else 0

    def lookup(self, d: int, letters: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(nondegenerate mask, index into words[d]) for rows of ``letters``."""
        valid = np.all(letters != 0, axis=1)
        enc = _encode(letters.astype(np.int64))
        idx = np.searchsorted(self.keys[d], enc)
        idx = np.minimum(idx, len(self.keys[d]) - 1)
        return valid, idx

    def monomial(self, a: int, b: int) -> np.ndarray:
        """The cocycle x^a y^b: first a letters carry x, last b letters carry y."""
        w = self.words[a + b]
        return np.all(w[:, :a] & 1, axis=1) & np.all(w[:, a:] & 2, axis=1)

    def shuffle_rows(self, a: int, b: int) -> np.ndarray:
        """Indices of the words in {1, 2} with a ones and b twos."""
        key = (a, b)
        if key not in self._shuffle_index:
            w = self.words[a + b]
            mask = np.all((w == 1) | (w == 2), axis=1) & ((w == 1).sum(axis=1) == a)
            self._shuffle_index[key] = np.nonzero(mask)[0]
        return self._shuffle_index[key]

    def detection_rows(self, d: int) -> np.ndarray:
        """All words that occur in some EZ cycle of degree d."""
        rows = [self.shuffle_rows(a, d - a) for a in range(d + 1) if a <= self.top and d - a <= self.top]
        return np.unique(np.concatenate(rows)) if rows else np.zeros(0, dtype=np.int64)

    def theta(self, k: int, u: tuple[int, np.ndarray], v: tuple[int, np.ndarray],
              rows: Optional[np.ndarray] = None) -> tuple[int, np.ndarray]:
        """theta_k(u, v) on the words of degree p + q - k (or just ``rows`` of them).

        Returns (degree, values); with ``rows`` given, values outside them are 0.
        """
        p, ua = u
        q, va = v
        d = p + q - k
        if k < 0 or d < 0 or d > self.max_degree:
            return d, None
        w = self.words[d]
        sel = np.arange(len(w)) if rows is None else rows
        ws = w[sel]
        prefix = np.zeros((len(ws), d + 1), dtype=np.int8)
        if d:
            prefix[:, 1:] = np.bitwise_xor.accumulate(ws, axis=1)
        acc = np.zeros(len(ws), dtype=bool)
        for lv, rv in _vertex_sets(d, k):
            if len(lv) - 1 != p or len(rv) - 1 != q:
                continue
            left = self._eval(p, ua, prefix, lv)
            if not left.any():
                continue
            acc ^= left & self._eval(q, va, prefix, rv)
        out = np.zeros(len(w), dtype=bool)
        out[sel] = acc
        return d, out

    def _eval(self, p: int, ua: np.ndarray, prefix: np.ndarray, verts: tuple[int, ...]) -> np.ndarray:
        if p == 0:
            return np.full(len(prefix), bool(ua[0]))
        vs = np.array(verts)
        letters = prefix[:, vs[1:]] ^ prefix[:, vs[:-1]]
        valid, idx = self.lookup(p, letters)
        return valid & ua[idx]

    def cup(self, u, v, rows=None):
        return self.theta(0, u, v, rows)

    def sq(self, i: int, u: tuple[int, np.ndarray], rows=None):
        n = u[0]
        if u[1] is None or i < 0 or i > n or n + i > self.max_degree:
            return n + i, (None if n + i > self.max_degree else np.zeros(self.count(n + i), dtype=bool))
        return self.theta(n - i, u, u, rows)

    def detect(self, c: tuple[int, np.ndarray]) -> Optional[frozenset]:
        """The class of a cocycle as exponent pairs, or None outside the window."""
        d, arr = c
        if arr is None or d > self.max_degree:
            return None
        out = set()
        for a in range(d + 1):
            b = d - a
            if a <= self.top and b <= self.top and int(arr[self.shuffle_rows(a, b)].sum()) & 1:
                out.add((a, b))
        return frozenset(out)

    def apply_monomial(self, m: Monomial, u: tuple[int, np.ndarray], cache: Optional[dict] = None, tag=None):
        """Chain-level Sq^{i_1} ... Sq^{i_t} u, the last square only on detection rows."""
        cur = u
        for pos in range(len(m) - 1, -1, -1):
            i = m[pos]
            key = (tag, m[pos:])
            if cache is not None and tag is not None and key in cache:
                cur = cache[key]
                continue
            last = pos == 0
            d = cur[0] + i
            rows = self.detection_rows(d) if last and 0 <= d <= self.max_degree else None
            cur = self.sq(i, cur, rows)
            if cache is not None and tag is not None and not last:
                cache[key] = cur
            if cur[1] is None:
                return cur
        return cur


@lru_cache(maxsize=None)
def _vertex_sets(d: int, k: int):
    return tuple(cup_i_vertex_sets(d, k))


# algebraic oracle: Cartan formula on F2[x, y]

def sq_polynomial(i: int, a: int, b: int) -> frozenset:
    return frozenset((a + s, b + i - s) for s in range(i + 1)
                     if lucas_parity(a, s) and lucas_parity(b, i - s))


def monomial_polynomial(m: Monomial, cls: Iterable[tuple[int, int]]) -> frozenset:
    cur = set(cls)
    for i in reversed(m):
        nxt: set = set()
        if i >= 0:
            for a, b in cur:
                nxt ^= set(sq_polynomial(i, a, b))
        cur = nxt
    return frozenset(cur)


def truncate(cls: Iterable[tuple[int, int]], top: int) -> frozenset:
    return frozenset(t for t in cls if t[0] <= top and t[1] <= top)


def adem_suite(top: int = 7, max_class_degree: int = 6, max_ij: int = 8):
    """Chain-level Adem checks for all i < 2j with i + j <= max_ij.

    Yields (i, j, (a, b), lhs, rhs, oracle, status) where status is "ok",
    "mismatch", or "outside" when the output degree exceeds 2 * top.
    """
    nv = Z2SquaredNerve(top)
    cache: dict = {}
    for j in range(1, max_ij + 1):
        for i in range(0, min(2 * j, max_ij - j + 1)):
            rhs_terms = adem_normalize((i, j))
            for deg in range(max_class_degree + 1):
                for a in range(deg + 1):
                    b = deg - a
                    if a > top or b > top:
                        continue
                    u = (deg, nv.monomial(a, b))
                    if deg + i + j > nv.max_degree:
                        yield i, j, (a, b), None, None, None, "outside"
                        continue
                    lhs = nv.detect(nv.apply_monomial((i, j), u, cache, (a, b)))
                    rhs: set = set()
                    for t in rhs_terms:
                        rhs ^= nv.detect(nv.apply_monomial(t, u, cache, (a, b))) or set()
                    oracle = truncate(monomial_polynomial((i, j), [(a, b)]), top)
                    ok = lhs == frozenset(rhs) == oracle
                    yield i, j, (a, b), lhs, frozenset(rhs), oracle, "ok" if ok else "mismatch"


def cartan_suite(top: int = 7, max_total: int = 6):
    """Sq^n(u v) against sum_k Sq^k u . Sq^{n-k} v for basis classes u, v."""
    nv = Z2SquaredNerve(top)
    classes = [(a, d - a) for d in range(max_total + 1) for a in range(d + 1)]
    sq_cache: dict = {}

    def sq_full(i, c):
        key = (i, c)
        if key not in sq_cache:
            u = (c[0] + c[1], nv.monomial(*c))
            sq_cache[key] = nv.sq(i, u)
        return sq_cache[key]

    for c1 in classes:
        for c2 in classes:
            p, q = sum(c1), sum(c2)
            if p + q > max_total:
                continue
            u = (p, nv.monomial(*c1))
            v = (q, nv.monomial(*c2))
            uv = nv.cup(u, v)
            for n in range(p + q + 1):
                lhs = nv.detect(nv.sq(n, uv, nv.detection_rows(p + q + n)))
                rhs: set = set()
                for k in range(n + 1):
                    su, sv = sq_full(k, c1), sq_full(n - k, c2)
                    if su[1] is None or sv[1] is None:
                        continue
                    rhs ^= nv.detect(nv.cup(su, sv, nv.detection_rows(p + q + n))) or set()
                ok = lhs == frozenset(rhs)
                yield c1, c2, n, lhs, frozenset(rhs), "ok" if ok else "mismatch"


# cross-check against the generic product of simplicial sets

def product_word(sid) -> tuple[int, ...]:
    """The (Z/2)^2 word of a nondegenerate simplex (rx, ry) of nerve x nerve."""
    rx, ry = sid
    return tuple(int(rx.eta[t] != rx.eta[t - 1]) | (2 * int(ry.eta[t] != ry.eta[t - 1]))
                 for t in range(1, len(rx.eta)))


def generic_agreement(top: int = 2, max_degree: Optional[int] = None) -> tuple[int, int]:
    """Compare theta_k(u, u) for u = x^a y^b on both models; returns (checked, mismatches).

    The generic side uses ProductSet, pullbacks and cochain_operation; the fast
    side uses the word model. Values are compared simplex by simplex.
    """
    from .coaction import cochain_operation, cup, pullback
    from .operad import theta
    from .simplicial import CochainElement, nerve_z2, product

    nz = nerve_z2(top)
    p = product(nz, nz)
    nv = Z2SquaredNerve(top)
    hi = nv.max_degree if max_degree is None else max_degree
    checked = bad = 0
    for deg in range(hi + 1):
        for a in range(deg + 1):
            b = deg - a
            if a > top or b > top:
                continue
            xa = CochainElement(a, frozenset({f"z{a}"}))
            yb = CochainElement(b, frozenset({f"z{b}"}))
            u = cup(p, pullback(0, xa), pullback(1, yb)).materialize(p)
            fast_u = (deg, nv.monomial(a, b))
            for k in range(deg + 1):
                d = 2 * deg - k
                if d > hi:
                    continue
                gen = cochain_operation(p, theta(k), [u, u])
                _, arr = nv.theta(k, fast_u, fast_u)
                for sid in p.nondegenerate(d):
                    w = np.array([product_word(sid)], dtype=np.int8).reshape(1, d)
                    _, idx = nv.lookup(d, w)
                    checked += 1
                    if gen.value(sid) != int(arr[idx[0]]):
                        bad += 1
    return checked, bad
