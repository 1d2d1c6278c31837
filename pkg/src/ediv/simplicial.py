"""Finite simplicial sets, normalized F2 chains and cochains, (co)homology.

A simplex of dimension n is stored as a ``SimplexRef``: a monotone surjection
``eta: [n] -> [k]`` (one-line, ``eta[j]`` for j = 0..n) together with the id of a
nondegenerate k-simplex. The simplex is ``eta^*(base)``; it is nondegenerate iff
``eta`` is the identity. Restricting a simplex to a set of vertices is the one
primitive every face, cup-i and shuffle computation goes through.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

from .gf2 import Gf2Matrix, SubspaceBasis, quotient_basis, rank_kernel, solve_in_subspace


@dataclass(frozen=True)
class SimplexRef:
    eta: tuple[int, ...]
    base: Hashable

    @property
    def dim(self) -> int:
        return len(self.eta) - 1

    @property
    def base_dim(self) -> int:
        return self.eta[-1]

    @property
    def degenerate(self) -> bool:
        return self.eta[-1] != len(self.eta) - 1

    @property
    def degeneracy_word(self) -> tuple[int, ...]:
        """Strictly decreasing j's with x = s_{j1} s_{j2} ... base."""
        return tuple(j for j in reversed(range(self.dim)) if self.eta[j] == self.eta[j + 1])

    @classmethod
    def nondegenerate(cls, dim: int, base: Hashable) -> "SimplexRef":
        return cls(tuple(range(dim + 1)), base)

    @classmethod
    def from_word(cls, word: Sequence[int], base: Hashable, base_dim: int) -> "SimplexRef":
        """Inverse of ``degeneracy_word``: apply s_{word[-1]} first."""
        eta = tuple(range(base_dim + 1))
        for j in reversed(list(word)):
            if not 0 <= j <= len(eta) - 1:
                raise ValueError(f"degeneracy s_{j} out of range")
            eta = eta[: j + 1] + eta[j:]
        ref = cls(eta, base)
        if ref.degeneracy_word != tuple(word):
            raise ValueError(f"degeneracy word {list(word)} is not in normal form")
        return ref


def monotone_surjections(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All monotone surjections [n] -> [k], as one-line tuples."""
    for steps in itertools.combinations(range(n), k):
        eta, cur, s = [0], 0, set(steps)
        for j in range(n):
            if j in s:
                cur += 1
            eta.append(cur)
        yield tuple(eta)


class SimplicialSet:
    """Interface: ``nondegenerate(n)`` and ``face(n, sid, i)``.

    ``top_dim`` is None for sets that are only ever evaluated lazily.
    """

    top_dim: Optional[int] = None

    def __init__(self):
        self._restrict_cache: dict = {}

    def nondegenerate(self, n: int) -> list:
        raise NotImplementedError

    def face(self, n: int, sid: Hashable, i: int) -> SimplexRef:
        raise NotImplementedError

    def restrict_nd(self, n: int, sid: Hashable, verts: tuple[int, ...]) -> SimplexRef:
        """The face of the nondegenerate n-simplex ``sid`` spanned by ``verts``."""
        if len(verts) == n + 1:
            return SimplexRef.nondegenerate(n, sid)
        key = (n, sid, verts)
        hit = self._restrict_cache.get(key)
        if hit is not None:
            return hit
        missing = max(set(range(n + 1)) - set(verts))
        f = self.face(n, sid, missing)
        shifted = tuple(v if v < missing else v - 1 for v in verts)
        out = restrict(self, f, shifted)
        self._restrict_cache[key] = out
        return out

    def counts(self) -> list[int]:
        return [len(self.nondegenerate(n)) for n in range(self.top_dim + 1)]

    def all_simplices(self, n: int) -> Iterator[SimplexRef]:
        """Every n-simplex, degenerate ones included (finite sets only)."""
        for k in range(min(n, self.top_dim) + 1):
            for b in self.nondegenerate(k):
                for eta in monotone_surjections(n, k):
                    yield SimplexRef(eta, b)


def restrict(x: SimplicialSet, ref: SimplexRef, verts: Sequence[int]) -> SimplexRef:
    """The simplex ``ref`` restricted to the sorted vertex indices ``verts``."""
    img = [ref.eta[v] for v in verts]
    support = sorted(set(img))
    pos = {v: t for t, v in enumerate(support)}
    surj = [pos[v] for v in img]
    inner = x.restrict_nd(ref.base_dim, ref.base, tuple(support))
    return SimplexRef(tuple(inner.eta[s] for s in surj), inner.base)


def face_of(x: SimplicialSet, ref: SimplexRef, i: int) -> SimplexRef:
    return restrict(x, ref, [v for v in range(ref.dim + 1) if v != i])


class FiniteSimplicialSet(SimplicialSet):
    def __init__(self, nondeg: dict[int, list], faces: dict[tuple[int, Hashable, int], SimplexRef]):
        super().__init__()
        self.top_dim = max(nondeg) if nondeg else -1
        self._nd = {n: list(nondeg.get(n, [])) for n in range(self.top_dim + 1)}
        self._faces = dict(faces)
        for n in range(1, self.top_dim + 1):
            for sid in self._nd[n]:
                for i in range(n + 1):
                    f = self._faces.get((n, sid, i))
                    if f is None:
                        raise ValueError(f"missing face d_{i} of {sid}")
                    if f.dim != n - 1 or f.base not in self._nd.get(f.base_dim, ()):
                        raise ValueError(f"face d_{i} of {sid} is malformed")

    def nondegenerate(self, n: int) -> list:
        return self._nd.get(n, []) if n >= 0 else []

    def face(self, n: int, sid: Hashable, i: int) -> SimplexRef:
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range for dimension {n}")
        return self._faces[(n, sid, i)]

    def check_identities(self) -> list[str]:
        """Violations of d_i d_j = d_{j-1} d_i (i < j)."""
        bad = []
        for n in range(2, self.top_dim + 1):
            for sid in self._nd[n]:
                x = SimplexRef.nondegenerate(n, sid)
                for j in range(n + 1):
                    for i in range(j):
                        lhs = face_of(self, face_of(self, x, j), i)
                        rhs = face_of(self, face_of(self, x, i), j - 1)
                        if lhs != rhs:
                            bad.append(f"{sid}: d{i}d{j} != d{j - 1}d{i}")
        return bad


def _vertex_name(vs: Sequence[int]) -> str:
    sep = "" if all(v < 10 for v in vs) else ","
    return "[" + sep.join(map(str, vs)) + "]"


def _subsets_complex(n_vertices: int, max_dim: int) -> FiniteSimplicialSet:
    nondeg: dict[int, list] = {}
    faces = {}
    for k in range(max_dim + 1):
        nondeg[k] = []
        for vs in itertools.combinations(range(n_vertices), k + 1):
            name = _vertex_name(vs)
            nondeg[k].append(name)
            if k:
                for i in range(k + 1):
                    faces[(k, name, i)] = SimplexRef.nondegenerate(k - 1, _vertex_name(vs[:i] + vs[i + 1:]))
    return FiniteSimplicialSet(nondeg, faces)


def standard_simplex(n: int) -> FiniteSimplicialSet:
    return _subsets_complex(n + 1, n)


def boundary(n: int) -> FiniteSimplicialSet:
    """The proper faces of the standard n-simplex."""
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    return _subsets_complex(n + 1, n - 1)


def sphere(n: int) -> FiniteSimplicialSet:
    """pt plus one n-cell whose faces are all the degenerate point."""
    if n == 0:
        return FiniteSimplicialSet({0: ["pt", "e0"]}, {})
    cell = f"e{n}"
    faces = {(n, cell, i): SimplexRef((0,) * n, "pt") for i in range(n + 1)}
    nondeg = {k: [] for k in range(n + 1)}
    nondeg[0] = ["pt"]
    nondeg[n] = [cell]
    return FiniteSimplicialSet(nondeg, faces)


def nerve_z2(top: int) -> FiniteSimplicialSet:
    """Nerve of Z/2 truncated at dimension ``top``.

    The n-simplices are words in Z/2 of length n; the only nondegenerate one is
    the all-ones word ``z{n}``. Outer faces drop an end letter, inner faces
    multiply two ones into the identity, giving s_{i-1} z{n-2}.
    """
    nondeg = {k: [f"z{k}"] for k in range(top + 1)}
    faces = {}
    for k in range(1, top + 1):
        sid = f"z{k}"
        for i in range(k + 1):
            if i in (0, k):
                faces[(k, sid, i)] = SimplexRef.nondegenerate(k - 1, f"z{k - 1}")
            else:
                faces[(k, sid, i)] = SimplexRef.from_word([i - 1], f"z{k - 2}", k - 2)
    return FiniteSimplicialSet(nondeg, faces)


def construct_basic(kind: str, n: int) -> FiniteSimplicialSet:
    builders = {"standard_simplex": standard_simplex, "simplex": standard_simplex,
                "boundary": boundary, "sphere": sphere, "nerve_z2": nerve_z2}
    if kind not in builders:
        raise ValueError(f"unknown space kind {kind!r}")
    if n < 0:
        raise ValueError("dimension parameter must be >= 0")
    return builders[kind](n)


def point() -> FiniteSimplicialSet:
    return standard_simplex(0)


# products

def normalize_pair(rx: SimplexRef, ry: SimplexRef) -> SimplexRef:
    """Factor the common degeneracies out of a product simplex."""
    m = rx.dim
    keep = [t for t in range(m + 1)
            if t == 0 or rx.eta[t - 1] != rx.eta[t] or ry.eta[t - 1] != ry.eta[t]]
    eta, cur = [], -1
    for t in range(m + 1):
        if t in keep:
            cur += 1
        eta.append(cur)
    bx = SimplexRef(tuple(rx.eta[t] for t in keep), rx.base)
    by = SimplexRef(tuple(ry.eta[t] for t in keep), ry.base)
    return SimplexRef(tuple(eta), (bx, by))


class ProductSet(SimplicialSet):
    """X x Y; nondegenerate simplices are jointly nondegenerate pairs."""

    def __init__(self, x: SimplicialSet, y: SimplicialSet):
        super().__init__()
        self.x, self.y = x, y
        if x.top_dim is not None and y.top_dim is not None:
            self.top_dim = x.top_dim + y.top_dim
        self._nd_cache: dict[int, list] = {}

    def nondegenerate(self, n: int) -> list:
        if n in self._nd_cache:
            return self._nd_cache[n]
        if self.top_dim is None:
            raise ValueError("cannot enumerate a lazily evaluated product")
        out = []
        if 0 <= n <= self.top_dim:
            ys = list(self.y.all_simplices(n))
            for rx in self.x.all_simplices(n):
                for ry in ys:
                    if not normalize_pair(rx, ry).degenerate:
                        out.append((rx, ry))
        self._nd_cache[n] = out
        return out

    def face(self, n: int, sid, i: int) -> SimplexRef:
        rx, ry = sid
        return normalize_pair(face_of(self.x, rx, i), face_of(self.y, ry, i))

    def restrict_nd(self, n: int, sid, verts: tuple[int, ...]) -> SimplexRef:
        if len(verts) == n + 1:
            return SimplexRef.nondegenerate(n, sid)
        rx, ry = sid
        return normalize_pair(restrict(self.x, rx, verts), restrict(self.y, ry, verts))


def product(x: SimplicialSet, y: SimplicialSet) -> ProductSet:
    return ProductSet(x, y)


def lattice_paths(p: int, q: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(eta_x, eta_y) for every monotone lattice path from (0,0) to (p,q)."""
    for xs in itertools.combinations(range(p + q), p):
        ex, ey, i, j = [0], [0], 0, 0
        s = set(xs)
        for t in range(p + q):
            if t in s:
                i += 1
            else:
                j += 1
            ex.append(i)
            ey.append(j)
        yield tuple(ex), tuple(ey)


def shuffle_simplices(x: SimplexRef, y: SimplexRef) -> list[SimplexRef]:
    """Nondegenerate product simplices in the Eilenberg-Zilber shuffle of x (x) y."""
    out = []
    for ex, ey in lattice_paths(x.dim, y.dim):
        rx = SimplexRef(tuple(x.eta[t] for t in ex), x.base)
        ry = SimplexRef(tuple(y.eta[t] for t in ey), y.base)
        ref = normalize_pair(rx, ry)
        if not ref.degenerate:
            out.append(ref)
    return out


# chains, cochains, homology

@dataclass(frozen=True)
class ChainElement:
    degree: int
    support: frozenset

    def __add__(self, other: "ChainElement") -> "ChainElement":
        if other.degree != self.degree and self.support and other.support:
            raise ValueError("degree mismatch")
        return ChainElement(self.degree, self.support ^ other.support)

    def is_zero(self) -> bool:
        return not self.support


@dataclass(frozen=True)
class CochainElement:
    degree: int
    support: frozenset

    def value(self, sid) -> int:
        return 1 if sid in self.support else 0

    def __add__(self, other: "CochainElement") -> "CochainElement":
        if other.degree != self.degree and self.support and other.support:
            raise ValueError("degree mismatch")
        return CochainElement(self.degree, self.support ^ other.support)

    def is_zero(self) -> bool:
        return not self.support


def chain_boundary(x: SimplicialSet, c: ChainElement) -> ChainElement:
    out: set = set()
    n = c.degree
    for sid in c.support:
        for i in range(n + 1):
            f = x.face(n, sid, i)
            if not f.degenerate:
                out ^= {f.base}
    return ChainElement(n - 1, frozenset(out))


@dataclass
class ChainComplex:
    space: SimplicialSet
    bases: dict[int, list]
    index: dict[int, dict]
    d: dict[int, Gf2Matrix]  # d[n]: C_n -> C_{n-1}, rows indexed by basis(n-1)

    def boundary_matrix(self, n: int) -> Gf2Matrix:
        if n in self.d:
            return self.d[n]
        return Gf2Matrix.zeros(len(self.bases.get(n - 1, [])), len(self.bases.get(n, [])))

    def to_vector(self, n: int, support: Iterable) -> int:
        v = 0
        for sid in support:
            v ^= 1 << self.index[n][sid]
        return v

    def from_vector(self, n: int, v: int) -> frozenset:
        basis = self.bases.get(n, [])
        return frozenset(basis[j] for j in range(len(basis)) if (v >> j) & 1)


def chain_complex(x: SimplicialSet, top: Optional[int] = None) -> ChainComplex:
    top = x.top_dim if top is None else top
    bases = {n: list(x.nondegenerate(n)) for n in range(top + 1)}
    index = {n: {s: j for j, s in enumerate(b)} for n, b in bases.items()}
    d = {}
    for n in range(1, top + 1):
        entries = []
        for j, sid in enumerate(bases[n]):
            for i in range(n + 1):
                f = x.face(n, sid, i)
                if not f.degenerate:
                    entries.append((index[n - 1][f.base], j))
        d[n] = Gf2Matrix.from_entries(len(bases[n - 1]), len(bases[n]), entries)
    return ChainComplex(x, bases, index, d)


@dataclass
class DegreeHomology:
    degree: int
    cycles: SubspaceBasis
    boundaries: SubspaceBasis
    reps: SubspaceBasis
    _solver: Optional[Gf2Matrix] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.reps.dim

    def class_of(self, v: int) -> int:
        """Coordinates (bitmask over reps) of the class of the cycle ``v``."""
        if not self.cycles.contains(v):
            raise ValueError("not a cycle")
        if self._solver is None:
            cols = list(self.reps.vectors) + list(self.boundaries.vectors)
            self._solver = Gf2Matrix.from_columns(self.cycles.ambient_dim, cols)
        x = solve_in_subspace(self._solver, v)
        return x & ((1 << self.reps.dim) - 1)


@dataclass
class GradedHomology:
    complex: ChainComplex
    cohomological: bool
    degrees: dict[int, DegreeHomology]

    @property
    def dims(self) -> dict[int, int]:
        return {n: h.dim for n, h in self.degrees.items()}

    def representatives(self, n: int) -> list:
        cls = CochainElement if self.cohomological else ChainElement
        return [cls(n, self.complex.from_vector(n, v)) for v in self.degrees[n].reps.vectors]


def _homology(cc: ChainComplex, lo: int, hi: int, cohomological: bool) -> GradedHomology:
    out = {}
    for n in range(lo, hi + 1):
        dim_n = len(cc.bases.get(n, []))
        if cohomological:
            out_map = cc.boundary_matrix(n + 1).transpose()  # delta: C^n -> C^{n+1}
            in_map = cc.boundary_matrix(n).transpose()        # delta: C^{n-1} -> C^n
        else:
            out_map = cc.boundary_matrix(n)
            in_map = cc.boundary_matrix(n + 1)
        if out_map.ncols != dim_n:
            out_map = Gf2Matrix.zeros(0, dim_n)
        _, z = rank_kernel(out_map)
        b = SubspaceBasis.span(dim_n, in_map.columns()) if in_map.nrows == dim_n else SubspaceBasis.zero(dim_n)
        out[n] = DegreeHomology(n, z, b, quotient_basis(z, b))
    return GradedHomology(cc, cohomological, out)


def homology(x: SimplicialSet, degree_range: Optional[tuple[int, int]] = None) -> GradedHomology:
    lo, hi = degree_range or (0, x.top_dim)
    if lo < 0 or hi > x.top_dim:
        raise ValueError("degree range outside the carrier")
    return _homology(chain_complex(x), lo, hi, False)


def cohomology(x: SimplicialSet, degree_range: Optional[tuple[int, int]] = None) -> GradedHomology:
    lo, hi = degree_range or (0, x.top_dim)
    if lo < 0 or hi > x.top_dim:
        raise ValueError("degree range outside the carrier")
    return _homology(chain_complex(x), lo, hi, True)


# maps

class SimplicialMap:
    """A map given on nondegenerate simplices; images are SimplexRefs."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet,
                 image: Callable[[int, Hashable], SimplexRef]):
        self.source, self.target, self.image = source, target, image

    def on_chain(self, c: ChainElement) -> ChainElement:
        out: set = set()
        for sid in c.support:
            f = self.image(c.degree, sid)
            if not f.degenerate:
                out ^= {f.base}
        return ChainElement(c.degree, frozenset(out))

    def on_simplex(self, ref: SimplexRef) -> SimplexRef:
        img = self.image(ref.base_dim, ref.base)
        return SimplexRef(tuple(img.eta[e] for e in ref.eta), img.base)


def collapse_to_sphere(n: int) -> SimplicialMap:
    """Delta^n -> S^n = Delta^n / boundary."""
    src, tgt = standard_simplex(n), sphere(n)
    top = _vertex_name(range(n + 1))

    def image(k, sid):
        if k == n and sid == top:
            return SimplexRef.nondegenerate(n, f"e{n}")
        return SimplexRef((0,) * (k + 1), "pt")

    return SimplicialMap(src, tgt, image)


def projection(p: ProductSet, which: int) -> SimplicialMap:
    tgt = p.x if which == 0 else p.y
    return SimplicialMap(p, tgt, lambda k, sid: sid[which])


# JSON

def simplex_id_str(sid) -> str:
    if isinstance(sid, str):
        return sid
    if isinstance(sid, SimplexRef):
        word = ",".join(map(str, sid.degeneracy_word))
        return f"s[{word}]{simplex_id_str(sid.base)}" if word else simplex_id_str(sid.base)
    if isinstance(sid, tuple):
        return "(" + ";".join(simplex_id_str(s) for s in sid) + ")"
    return str(sid)


def to_json(x: SimplicialSet) -> dict:
    faces = {}
    nondeg = []
    for n in range(x.top_dim + 1):
        ids = x.nondegenerate(n)
        nondeg.append([simplex_id_str(s) for s in ids])
        if n:
            for s in ids:
                for i in range(n + 1):
                    f = x.face(n, s, i)
                    faces[f"{n}/{simplex_id_str(s)}/{i}"] = {
                        "degeneracies": list(f.degeneracy_word), "base": simplex_id_str(f.base)}
    return {"top_dim": x.top_dim, "nondegenerate": nondeg, "faces": faces}


def from_json(data: dict) -> FiniteSimplicialSet:
    nondeg = {n: list(ids) for n, ids in enumerate(data["nondegenerate"])}
    dims = {(n, s): n for n, ids in nondeg.items() for s in ids}
    base_dim = {s: n for (n, s) in dims}
    faces = {}
    for key, val in data.get("faces", {}).items():
        n_str, sid, i_str = key.split("/")
        b = val["base"]
        if b not in base_dim:
            raise ValueError(f"face {key} names unknown simplex {b}")
        faces[(int(n_str), sid, int(i_str))] = SimplexRef.from_word(val["degeneracies"], b, base_dim[b])
    return FiniteSimplicialSet(nondeg, faces)


def parse_space(spec: str) -> SimplicialSet:
    """``kind:n`` (e.g. ``sphere:2``, ``nerve_z2:8``), ``pt``, ``kind:a*kind:b``, or a JSON path."""
    import json

    if "*" in spec:
        left, right = spec.split("*", 1)
        return product(parse_space(left), parse_space(right))
    if spec == "pt":
        return point()
    if spec.endswith(".json"):
        with open(spec) as fh:
            return from_json(json.load(fh))
    if ":" not in spec:
        raise ValueError(f"space spec {spec!r} should look like kind:n")
    kind, arg = spec.split(":", 1)
    return construct_basic(kind, int(arg))
