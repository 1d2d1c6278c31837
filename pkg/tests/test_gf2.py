import itertools

from hypothesis import given, strategies as st

from ediv.gf2 import Gf2Matrix, SubspaceBasis, express, image, inverse, rank, rank_kernel


@st.composite
def matrices(draw, max_dim=6):
    nrows = draw(st.integers(1, max_dim))
    ncols = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.integers(0, (1 << ncols) - 1), min_size=nrows, max_size=nrows))
    return Gf2Matrix(nrows, ncols, tuple(rows))


def span_size(vectors):
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return len(span)


@given(matrices())
def test_rank_matches_span_size(m):
    assert 1 << rank(m) == span_size(m.rows)


@given(matrices())
def test_rank_nullity(m):
    r, ker = rank_kernel(m)
    assert r + ker.dim == m.ncols
    for v in ker.vectors:
        assert m.apply(v) == 0


@given(matrices())
def test_transpose_rank(m):
    assert rank(m) == rank(m.transpose())
    assert m.transpose().transpose() == m


@given(matrices(), st.integers(0, 63))
def test_image_contains_products(m, x):
    x &= (1 << m.ncols) - 1
    assert image(m).contains(m.apply(x))


@given(st.integers(1, 5), st.data())
def test_inverse(n, data):
    rows = data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n))
    m = Gf2Matrix(n, n, tuple(rows))
    if rank(m) < n:
        return
    assert inverse(m) @ m == Gf2Matrix.identity(n)
    assert m @ inverse(m) == Gf2Matrix.identity(n)


def test_matmul_against_dense():
    a = Gf2Matrix.from_dense([[1, 0, 1], [0, 1, 1]])
    b = Gf2Matrix.from_dense([[1, 1], [0, 1], [1, 0]])
    want = [[sum(a.entry(i, k) * b.entry(k, j) for k in range(3)) % 2 for j in range(2)] for i in range(2)]
    assert (a @ b).to_dense() == want


def test_express_and_coordinates():
    vs = [0b011, 0b110]
    assert express(vs, 0b101) == 0b11
    assert express(vs, 0b100) is None
    basis = SubspaceBasis.span(3, vs)
    assert basis.dim == 2
    assert basis.contains(0b101) and not basis.contains(0b001)


def test_small_exhaustive_ranks():
    # every 2x2 matrix: rank 2 exactly for the 6 invertible ones
    count = sum(rank(Gf2Matrix(2, 2, rows)) == 2 for rows in itertools.product(range(4), repeat=2))
    assert count == 6
