"""Steenrod squares: the big algebra B, the classical quotient A, unstable modules.

A monomial is a tuple of integers (i_1, ..., i_t) standing for the operator
Sq^{i_1} ... Sq^{i_t}; on a module element the rightmost square is applied
first. Elements are frozensets of monomials (sums mod 2).
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Optional, Sequence

from .gf2 import Gf2Matrix, SubspaceBasis, inverse

Monomial = tuple[int, ...]

MAX_REWRITES = 1_000_000


def binom2(n: int, k: int) -> int:
    """C(n, k) mod 2 for n, k >= 0 (zero outside 0 <= k <= n)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k) & 1


def lucas_parity(n: int, k: int) -> int:
    """C(n, k) mod 2 via Lucas: odd iff the bits of k are among those of n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (k & n) == k else 0


def is_admissible(m: Monomial) -> bool:
    return all(m[j] >= 2 * m[j + 1] for j in range(len(m) - 1))


def excess(m: Monomial) -> int:
    if not m:
        return 0
    return m[0] - sum(m[1:])


def xor_set(items: Iterable) -> frozenset:
    out: set = set()
    for it in items:
        out ^= {it}
    return frozenset(out)


def adem_pair(i: int, j: int) -> list[tuple[int, int]]:
    """Sq^i Sq^j for i < 2j as a list of admissible pairs (a, b)."""
    out = []
    for k in range(i - j + 1, i // 2 + 1):
        if binom2(j - k - 1, i - 2 * k):
            out.append((i + j - k, k))
    return out


def adem_normalize(e: Iterable[Monomial] | Monomial) -> frozenset:
    """Admissible expansion in B, rewriting the leftmost inadmissible pair."""
    if isinstance(e, tuple) and (not e or isinstance(e[0], int)):
        e = [e]
    pending = list(e)
    done: set = set()
    steps = 0
    while pending:
        m = pending.pop()
        steps += 1
        if steps > MAX_REWRITES:
            raise RuntimeError("Adem rewriting did not terminate within the guard")
        for j in range(len(m) - 1):
            if m[j] < 2 * m[j + 1]:
                for a, b in adem_pair(m[j], m[j + 1]):
                    pending.append(m[:j] + (a, b) + m[j + 2:])
                break
        else:
            done ^= {m}
    return frozenset(done)


def project_to_classical(e: Iterable[Monomial] | Monomial) -> frozenset:
    """Image in A = B/B(1 + Sq^0): Sq^0 = 1 and negative squares vanish."""
    if isinstance(e, tuple) and (not e or isinstance(e[0], int)):
        e = [e]
    pending = list(e)
    done: set = set()
    steps = 0
    while pending:
        m = pending.pop()
        steps += 1
        if steps > MAX_REWRITES:
            raise RuntimeError("A-normalization did not terminate within the guard")
        if any(i < 0 for i in m):
            continue
        m = tuple(i for i in m if i != 0)
        for j in range(len(m) - 1):
            if m[j] < 2 * m[j + 1]:
                for a, b in adem_pair(m[j], m[j + 1]):
                    pending.append(m[:j] + (a, b) + m[j + 2:])
                break
        else:
            done ^= {m}
    return frozenset(done)


def multiply(a: Iterable[Monomial], b: Iterable[Monomial]) -> frozenset:
    return adem_normalize([x + y for x in a for y in b])


def format_monomial(m: Monomial) -> str:
    return " ".join(f"Sq{i}" for i in m) if m else "1"


def format_sum(e: Iterable[Monomial]) -> str:
    terms = sorted(e, key=lambda m: (len(m), m))
    return " + ".join(format_monomial(m) for m in terms) if terms else "0"


def parse_monomial(s: str) -> Monomial:
    s = s.strip()
    if s in ("", "1"):
        return ()
    out = []
    for tok in s.replace("Sq^", "Sq").split():
        if not tok.startswith("Sq"):
            raise ValueError(f"bad square {tok!r}")
        out.append(int(tok[2:]))
    return tuple(out)


# unstable modules

def stagewise_unstable(m: Monomial, degree: int) -> bool:
    """Each square, applied right to left, has index <= the current degree."""
    cur = degree
    for i in reversed(m):
        if i > cur:
            return False
        cur += i
    return True


def normalize_unstable(terms: Iterable[Monomial], degree: int) -> frozenset:
    """Normal form in the free unstable B-module on a generator of ``degree``."""
    raw = [m for m in terms if stagewise_unstable(m, degree)]
    return frozenset(m for m in adem_normalize(raw) if stagewise_unstable(m, degree))


def normalize_unstable_classical(terms: Iterable[Monomial], degree: int) -> frozenset:
    """Normal form in the free unstable A-module on a generator of ``degree``."""
    if degree < 0:
        return frozenset()
    return frozenset(m for m in project_to_classical(list(terms)) if stagewise_unstable(m, degree))


def admissible_unstable(degree: int, lo: int, hi: int, length_cap: int,
                        classical: bool = False) -> list[Monomial]:
    """Admissible stagewise-unstable monomials on a generator of ``degree``.

    Returns those whose total degree lies in [lo, hi], with at most
    ``length_cap`` squares; ``classical`` additionally forces indices >= 1.
    Built right to left. Pruning: a positive degree at most doubles per square,
    a nonpositive one never grows.
    """
    if classical and degree < 0:
        return []
    out: list[Monomial] = []

    def reachable_min_index(cur: int, steps_left: int) -> int:
        # smallest i such that some continuation from cur + i can end >= lo
        if lo <= 0:
            return lo - cur
        need = -(-lo // (1 << steps_left))  # ceil(lo / 2^steps_left)
        return max(need, 1) - cur

    def rec(suffix: list[int], cur: int):
        if lo <= cur <= hi:
            out.append(tuple(reversed(suffix)))
        left = length_cap - len(suffix)
        if left == 0:
            return
        lo_i = reachable_min_index(cur, left - 1)
        if suffix:
            lo_i = max(lo_i, 2 * suffix[-1])
        if classical:
            lo_i = max(lo_i, 1)
        hi_i = min(cur, max(hi - cur, 0))
        for i in range(lo_i, hi_i + 1):
            suffix.append(i)
            rec(suffix, cur + i)
            suffix.pop()

    rec([], degree)
    out.sort(key=lambda m: (len(m), m))
    return out


def unstable_basis(tag: str, n: int, lo: int, hi: int, length_cap: Optional[int] = None) -> list[Monomial]:
    """Basis of Be^n ('B') or Ae^n ('A') in degrees [lo, hi]."""
    if tag == "B":
        if length_cap is None:
            raise ValueError("Be^n is infinite-dimensional in each degree: a length cap is required")
        return admissible_unstable(n, lo, hi, length_cap)
    if tag == "A":
        if n < 0:
            return []
        cap = length_cap if length_cap is not None else max(hi - n, 0).bit_length() + 1
        return admissible_unstable(n, lo, hi, cap, classical=True)
    raise ValueError(f"unknown module tag {tag!r}")


def polynomial_generators(n: int, cap: int) -> list[tuple[Monomial, int]]:
    """Admissible I (indices >= 1) of excess < n with n + |I| <= cap."""
    if n <= 0:
        raise ValueError(f"generator degree {n} is not positive")
    return [(m, n + sum(m)) for m in unstable_basis("A", n, n, cap) if excess(m) < n]


def series_of_polynomial(degrees: Sequence[int], cap: int) -> list[int]:
    """Dimensions of F2[x_d : d in degrees] in degrees 0..cap."""
    dims = [1] + [0] * cap
    for d in degrees:
        if d <= 0:
            raise ValueError("polynomial generators need positive degree")
        for t in range(d, cap + 1):
            dims[t] += dims[t - d]
    return dims


def u_poincare_series(generator_degrees: Sequence[int], cap: int) -> list[int]:
    """Poincare series of U(+ Ae^{n_k}) up to degree ``cap``."""
    degs = []
    for n in generator_degrees:
        degs.extend(d for _, d in polynomial_generators(n, cap))
    return series_of_polynomial(degs, cap)


def u_series_bruteforce(n: int, cap: int) -> list[int]:
    """Oracle for u_poincare_series([n], cap) by explicit enumeration.

    Lists every sequence of positive indices, keeps the admissible ones of
    excess < n, then counts multisets of the resulting generators by degree.
    """
    import itertools

    def sequences(total):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in sequences(total - first):
                yield (first,) + rest

    gens = [n + s for s in range(cap - n + 1) for m in sequences(s)
            if is_admissible(m) and excess(m) < n]
    dims = [0] * (cap + 1)
    for size in range(cap // n + 1):
        for combo in itertools.combinations_with_replacement(range(len(gens)), size):
            d = sum(gens[i] for i in combo)
            if d <= cap:
                dims[d] += 1
    return dims


def convolve(a: Sequence[int], b: Sequence[int], cap: int) -> list[int]:
    return [sum(a[i] * b[t - i] for i in range(t + 1) if i < len(a) and t - i < len(b)) for t in range(cap + 1)]


# squares on spaces

class SpaceSteenrod:
    """Chain-level squares Sq^i(c) = theta_{n-i}(a, a) on the cohomology of a space.

    Classes are bitmasks over the representative basis chosen by ``cohomology``.
    """

    def __init__(self, x, top: Optional[int] = None):
        from .simplicial import chain_complex, _homology

        self.x = x
        self.top = x.top_dim if top is None else top
        if self.top > x.top_dim:
            raise ValueError("degree range outside the carrier")
        self.cc = chain_complex(x, self.top)
        self.coh = _homology(self.cc, 0, self.top, True)
        self.hom = _homology(self.cc, 0, self.top, False)
        self._matrices: dict = {}

    def _check(self, n: int) -> None:
        if not 0 <= n <= self.top:
            raise ValueError(f"degree {n} outside the carrier range 0..{self.top}")

    def dim(self, n: int) -> int:
        self._check(n)
        return self.coh.degrees[n].dim

    def representative(self, n: int, coords: int):
        from .simplicial import CochainElement

        v = 0
        for k, rep in enumerate(self.coh.degrees[n].reps.vectors):
            if (coords >> k) & 1:
                v ^= rep
        return CochainElement(n, self.cc.from_vector(n, v))

    def sq_cochain(self, i: int, a):
        """The cocycle theta_{n-i}(a, a) of degree n + i (zero for i < 0 or i > n)."""
        from .coaction import cochain_operation
        from .operad import theta
        from .simplicial import CochainElement

        n = a.degree
        self._check(n + i)
        if i < 0 or i > n:
            return CochainElement(n + i, frozenset())
        return cochain_operation(self.x, theta(n - i), [a, a]).materialize(self.x)

    def sq(self, i: int, n: int, coords: int) -> int:
        """Sq^i of the class with ``coords`` in degree n, as coords in degree n + i."""
        self._check(n)
        self._check(n + i)
        if i < 0 or i > n or coords == 0:
            return 0
        c = self.sq_cochain(i, self.representative(n, coords))
        return self.coh.degrees[n + i].class_of(self.cc.to_vector(n + i, c.support))

    def matrix(self, i: int, n: int) -> Gf2Matrix:
        """Sq^i: H^n -> H^{n+i}; column k is the image of basis class k."""
        key = (i, n)
        if key not in self._matrices:
            cols = [self.sq(i, n, 1 << k) for k in range(self.dim(n))]
            self._matrices[key] = Gf2Matrix.from_columns(self.dim(n + i), cols)
        return self._matrices[key]

    def pairing(self, n: int) -> Gf2Matrix:
        """Kronecker pairing of cohomology reps (rows) with homology reps (columns)."""
        co = self.coh.degrees[n].reps.vectors
        ho = self.hom.degrees[n].reps.vectors
        return Gf2Matrix.from_dense([[(a & b).bit_count() & 1 for b in ho] for a in co], len(ho))

    def homology_action(self, l: int, m: int) -> Gf2Matrix:
        """Right action c -> c.Sq^l from H_m to H_{m-l} in the homology rep basis.

        <phi, c.Sq^l> = <Sq^l phi, c> determines c.Sq^l through the inverse
        pairing in degree m - l.
        """
        self._check(m)
        if l < 0 or l > m - l or m - l < 0:
            return Gf2Matrix.zeros(len(self.hom.degrees[m - l].reps.vectors) if 0 <= m - l <= self.top else 0,
                                   len(self.hom.degrees[m].reps.vectors))
        sq = self.matrix(l, m - l)                    # H^{m-l} -> H^m
        q_inv = inverse(self.pairing(m - l))          # solve Q z = v
        p_m = self.pairing(m)                         # <H^m, H_m>
        v = sq.transpose() @ p_m                      # rows: phi_a, cols: c_b, entry <Sq^l phi_a, c_b>
        return q_inv @ v


def lucas_table(max_degree: int) -> dict[tuple[int, int], int]:
    """Oracle for Sq^i(x^j) on RP^infinity: C(j, i) mod 2 for i + j <= max_degree."""
    return {(i, j): lucas_parity(j, i) for j in range(max_degree + 1) for i in range(max_degree - j + 1)}


def nerve_sq_table(max_degree: int) -> dict[tuple[int, int], int]:
    """Chain-level Sq^i(x^j) coefficients on the nerve of Z/2 up to ``max_degree``."""
    from .simplicial import nerve_z2

    s = SpaceSteenrod(nerve_z2(max_degree))
    return {(i, j): s.sq(i, j, 1) for j in range(max_degree + 1) for i in range(max_degree - j + 1)}


# the morphism g and its retraction

Gen = tuple[int, int]  # (homological degree k, index in the homology basis)


class EMContext:
    """Unstable B-modules generated by e^n (x) c for c in a homology basis of ``x``.

    An element is a frozenset of (admissible monomial, generator) pairs. The
    generator e^n (x) c sits in degree n - deg(c). Retractions are computed on
    a window of monomial length <= ``length_cap`` (codomain one longer); one
    fixed cap per context keeps r linear.
    """

    def __init__(self, x, n: int, length_cap: int = 3):
        self.x = x
        self.n = n
        self.length_cap = length_cap
        self.ss = SpaceSteenrod(x)
        hom = self.ss.hom.degrees
        self.gens: list[Gen] = [(k, b) for k in range(self.ss.top + 1) for b in range(hom[k].dim)]
        self._solvers: dict = {}

    def gen_degree(self, g: Gen) -> int:
        return self.n - g[0]

    def degree(self, term: tuple[Monomial, Gen]) -> int:
        m, g = term
        return self.gen_degree(g) + sum(m)

    def label(self, g: Gen) -> str:
        return f"e{self.n}(x)c{g[0]}" + (f"_{g[1]}" if self.ss.hom.degrees[g[0]].dim > 1 else "")

    def format(self, e: Iterable[tuple[Monomial, Gen]]) -> str:
        terms = sorted(e, key=lambda t: (t[1], len(t[0]), t[0]))
        if not terms:
            return "0"
        return " + ".join((format_monomial(m) + " " if m else "") + self.label(g) for m, g in terms)

    def normalize(self, terms: Iterable[tuple[Monomial, Gen]]) -> frozenset:
        by_gen: dict[Gen, list] = {}
        for m, g in terms:
            by_gen.setdefault(g, []).append(m)
        out = set()
        for g, ms in by_gen.items():
            out ^= {(m, g) for m in normalize_unstable(ms, self.gen_degree(g))}
        return frozenset(out)

    def act(self, b: Monomial, e: Iterable[tuple[Monomial, Gen]]) -> frozenset:
        return self.normalize((b + m, g) for m, g in e)

    def _dot_sq(self, l: int, g: Gen) -> list[Gen]:
        """c_g . Sq^l as a list of generators."""
        k, idx = g
        if l < 0 or k - l < 0:
            return []
        mat = self.ss.homology_action(l, k)
        return [(k - l, i) for i in range(mat.nrows) if mat.entry(i, idx)]

    def g_generator(self, g: Gen, with_sq0: bool = True) -> frozenset:
        """e(x)c + sum_l Sq^l(e (x) c.Sq^{-l}); the l = 0 term is Sq^0(e(x)c)."""
        terms = [((), g)] if with_sq0 else []
        if with_sq0:
            terms.append(((0,), g))
        for big_l in range(1, g[0] + 1):
            for g2 in self._dot_sq(big_l, g):
                terms.append(((-big_l,), g2))
        return self.normalize(terms)

    def g_apply(self, e: Iterable[tuple[Monomial, Gen]]) -> frozenset:
        out: set = set()
        for m, g in e:
            out ^= self.act(m, self.g_generator(g))
        return frozenset(out)

    def g_prime(self, e: Iterable[tuple[Monomial, Gen]]) -> frozenset:
        """The part of g that lowers deg(c): the l < 0 terms."""
        out: set = set()
        for m, g in e:
            out ^= self.act(m, self.g_generator(g, with_sq0=False))
        return frozenset(out)

    # r0: a left inverse of b -> b(1 + Sq^0) on one generator

    def _solver(self, m: int, deg: int):
        key = (m, deg)
        if key not in self._solvers:
            dom = admissible_unstable(m, deg, deg, self.length_cap)
            cod = admissible_unstable(m, deg, deg, self.length_cap + 1)
            index = {mono: j for j, mono in enumerate(cod)}
            cols = []
            for b in dom:
                img = {b} ^ set(normalize_unstable([b + (0,)], m))
                cols.append(sum(1 << index[t] for t in img))
            span = SubspaceBasis.span(len(cod), cols)
            extra = []
            for j in range(len(cod)):
                if span.reduce(1 << j):
                    extra.append(1 << j)
                    span = SubspaceBasis.span(len(cod), span.vectors + (1 << j,))
            square = Gf2Matrix.from_columns(len(cod), cols + extra)
            self._solvers[key] = (dom, index, inverse(square))
        return self._solvers[key]

    def r0(self, e: Iterable[tuple[Monomial, Gen]]) -> frozenset:
        groups: dict = {}
        for m, g in e:
            groups.setdefault((g, self.gen_degree(g) + sum(m)), []).append(m)
        out: set = set()
        for (g, deg), ms in groups.items():
            dom, index, inv = self._solver(self.gen_degree(g), deg)
            v = 0
            for mono in ms:
                if mono not in index:
                    raise ValueError(f"{format_monomial(mono)} lies outside the length window")
                v ^= 1 << index[mono]
            coords = inv.apply(v)
            out ^= {(dom[j], g) for j in range(len(dom)) if (coords >> j) & 1}
        return frozenset(out)

    def retraction_apply(self, e: Iterable[tuple[Monomial, Gen]]) -> frozenset:
        """r = r0 + r g' r0, unwound by descending deg(c)."""
        y = set(e)
        out: set = set()
        while y:
            k = max(g[0] for _, g in y)
            top = {t for t in y if t[1][0] == k}
            z0 = self.r0(top)
            out ^= z0
            y = (y - top) ^ set(self.g_prime(z0))
        return frozenset(out)

    def in_image(self, e: Iterable[tuple[Monomial, Gen]]) -> bool:
        e = frozenset(e)
        return self.g_apply(self.retraction_apply(e)) == e

    def cokernel_project(self, e: Iterable[tuple[Monomial, Gen]]) -> frozenset:
        """Image in A(e^n (x) H_*(x)): Sq^0 = 1, negative squares and e^m, m < 0, vanish."""
        out: set = set()
        for m, g in e:
            out ^= {(p, g) for p in normalize_unstable_classical([m], self.gen_degree(g))}
        return frozenset(out)

    def basis_window(self, lo: int, hi: int, length_cap: Optional[int] = None, classical: bool = False) -> list:
        cap = self.length_cap if length_cap is None else length_cap
        out = []
        for g in self.gens:
            m = self.gen_degree(g)
            if classical and m < 0:
                continue
            for b in admissible_unstable(m, lo, hi, cap, classical=classical):
                out.append((b, g))
        return out


def mapping_space_series(x, n: int, cap: int) -> list[int]:
    """Poincare series of U(A(e^n (x) H_*(x))) in degrees 0..cap."""
    ctx = EMContext(x, n)
    degs = [ctx.gen_degree(g) for g in ctx.gens]
    bad = [d for d in degs if d <= 0]
    if bad:
        raise ValueError(f"generator e^{n} (x) c has degree {bad[0]} <= 0; need dim(x) < n")
    return u_poincare_series(degs, cap)
