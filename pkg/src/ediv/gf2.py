"""Exact linear algebra over F2 with rows packed into Python ints.

Bit ``j`` of a row is the coefficient of column ``j``. Elimination always pivots
on the lowest set column so results are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


def _low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def vec_from_bits(bits: Iterable[int]) -> int:
    """Pack a 0/1 sequence (index 0 first) into an int."""
    out = 0
    for j, b in enumerate(bits):
        if b & 1:
            out |= 1 << j
    return out


def vec_to_bits(v: int, length: int) -> list[int]:
    return [(v >> j) & 1 for j in range(length)]


@dataclass(frozen=True)
class Gf2Matrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        mask = (1 << self.ncols) - 1
        for r in self.rows:
            if r & ~mask or r < 0:
                raise ValueError("entry outside matrix bounds")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        return cls(len(dense), ncols, tuple(vec_from_bits(r) for r in dense))

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int]]) -> "Gf2Matrix":
        rows = [0] * nrows
        for i, j in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry {(i, j)} outside {nrows}x{ncols}")
            rows[i] ^= 1 << j
        return cls(nrows, ncols, tuple(rows))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> "Gf2Matrix":
        rows = [0] * nrows
        for j, col in enumerate(columns):
            c = col
            while c:
                i = _low_bit(c)
                rows[i] |= 1 << j
                c &= c - 1
        return cls(nrows, len(columns), tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_dense(self) -> list[list[int]]:
        return [vec_to_bits(r, self.ncols) for r in self.rows]

    def transpose(self) -> "Gf2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                j = _low_bit(r)
                cols[j] |= 1 << i
                r &= r - 1
        return Gf2Matrix(self.ncols, self.nrows, tuple(cols))

    def columns(self) -> list[int]:
        return list(self.transpose().rows)

    def apply(self, x: int) -> int:
        """Matrix times column vector ``x`` (bit j = x_j); returns a row-indexed vector."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r & x).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        rows = []
        for r in self.rows:
            acc = 0
            while r:
                j = _low_bit(r)
                acc ^= other.rows[j]
                r &= r - 1
            rows.append(acc)
        return Gf2Matrix(self.nrows, other.ncols, tuple(rows))

    def is_zero(self) -> bool:
        return not any(self.rows)


@dataclass(frozen=True)
class SubspaceBasis:
    """Reduced row-echelon basis of a subspace of F2^ambient_dim.

    Pivots are the lowest set bit of each vector and strictly increase; every
    pivot column is clear in all other vectors.
    """

    ambient_dim: int
    vectors: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_low_bit(v) for v in self.vectors)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[int]) -> "SubspaceBasis":
        return cls(ambient_dim, tuple(_rref(list(vectors))[0]))

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "SubspaceBasis":
        return cls(n, ())

    def reduce(self, v: int) -> int:
        """Remainder of ``v`` modulo the subspace (clears pivot columns)."""
        for p, b in zip(self.pivots, self.vectors):
            if (v >> p) & 1:
                v ^= b
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def coordinates(self, v: int) -> Optional[int]:
        """Coefficients of ``v`` in this basis as a bitmask over vector indices."""
        coords = 0
        for k, (p, b) in enumerate(zip(self.pivots, self.vectors)):
            if (v >> p) & 1:
                v ^= b
                coords |= 1 << k
        return coords if v == 0 else None


def _rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced echelon form; returns (basis rows sorted by pivot, pivots)."""
    pivot_rows: dict[int, int] = {}
    for r in rows:
        for p, b in pivot_rows.items():
            if (r >> p) & 1:
                r ^= b
        if r == 0:
            continue
        p = _low_bit(r)
        for q in list(pivot_rows):
            if (pivot_rows[q] >> p) & 1:
                pivot_rows[q] ^= r
        pivot_rows[p] = r
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def rank(m: Gf2Matrix) -> int:
    return len(_rref(list(m.rows))[0])


def rank_kernel(m: Gf2Matrix) -> tuple[int, SubspaceBasis]:
    """Rank of ``m`` and a basis of {x : m x = 0}."""
    basis, pivots = _rref(list(m.rows))
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = 1 << f
        for p, b in zip(pivots, basis):
            if (b >> f) & 1:
                v |= 1 << p
        kernel.append(v)
    return len(basis), SubspaceBasis.span(m.ncols, kernel)


def image(m: Gf2Matrix) -> SubspaceBasis:
    """Column space of ``m`` as a subspace of F2^nrows."""
    return SubspaceBasis.span(m.nrows, m.columns())


def solve_in_subspace(m: Gf2Matrix, target: int | Sequence[int]) -> Optional[int]:
    """Some ``x`` with ``m x = target``, or None when target is outside the column space."""
    if not isinstance(target, int):
        if len(target) != m.nrows:
            raise ValueError(f"target has length {len(target)}, expected {m.nrows}")
        target = vec_from_bits(target)
    elif target >> m.nrows:
        raise ValueError("target has bits beyond the row count")
    aug_bit = m.ncols
    rows = [r | (((target >> i) & 1) << aug_bit) for i, r in enumerate(m.rows)]
    basis, pivots = _rref(rows)
    x = 0
    for p, b in zip(pivots, basis):
        if p == aug_bit:
            return None
        if (b >> aug_bit) & 1:
            x |= 1 << p
    return x


def quotient_basis(ambient: SubspaceBasis, sub: SubspaceBasis) -> SubspaceBasis:
    """Representatives of ambient/sub, chosen greedily from the ambient basis."""
    if ambient.ambient_dim != sub.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    for v in sub.vectors:
        if not ambient.contains(v):
            raise ValueError("sub is not contained in ambient")
    current = SubspaceBasis.span(ambient.ambient_dim, sub.vectors)
    reps = []
    for v in ambient.vectors:
        if current.reduce(v):
            reps.append(v)
            current = SubspaceBasis.span(ambient.ambient_dim, current.vectors + (v,))
    return SubspaceBasis(ambient.ambient_dim, tuple(reps))


def express(vectors: Sequence[int], v: int) -> Optional[int]:
    """Coefficients c (bitmask over ``vectors``) with sum c_k vectors[k] == v."""
    nrows = max([x.bit_length() for x in vectors] + [v.bit_length(), 0])
    m = Gf2Matrix.from_columns(nrows, list(vectors))
    return solve_in_subspace(m, v)


def inverse(m: Gf2Matrix) -> Gf2Matrix:
    """Inverse of a square matrix; ValueError if singular."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse needs a square matrix")
    rows = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    basis, pivots = _rref(rows)
    if pivots[:n] != list(range(n)) or len(basis) < n:
        raise ValueError("matrix is singular")
    return Gf2Matrix(n, n, tuple(b >> n for b in basis[:n]))
