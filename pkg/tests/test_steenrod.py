import random

import pytest
from hypothesis import given, strategies as st

from ediv.simplicial import nerve_z2, point, sphere
from ediv.steenrod import (
    EMContext, adem_normalize, adem_pair, binom2, convolve, excess, format_sum, is_admissible,
    lucas_parity, lucas_table, mapping_space_series, nerve_sq_table, parse_monomial,
    project_to_classical, u_poincare_series, u_series_bruteforce, unstable_basis,
)

monomials = st.lists(st.integers(0, 5), min_size=0, max_size=4).map(tuple)


def normalize_rightmost(m):
    """Same rewriting but choosing the rightmost inadmissible pair; confluence check."""
    out = set()
    pending = [m]
    while pending:
        x = pending.pop()
        for j in reversed(range(len(x) - 1)):
            if x[j] < 2 * x[j + 1]:
                pending.extend(x[:j] + p + x[j + 2:] for p in adem_pair(x[j], x[j + 1]))
                break
        else:
            out ^= {x}
    return frozenset(out)


@given(monomials)
def test_normal_form_is_admissible_and_order_independent(m):
    nf = adem_normalize(m)
    assert all(is_admissible(x) for x in nf)
    assert nf == normalize_rightmost(m)
    assert all(sum(x) == sum(m) for x in nf)


@given(monomials)
def test_normalize_is_idempotent(m):
    nf = adem_normalize(m)
    assert adem_normalize(list(nf)) == nf


def test_adem_examples():
    assert adem_normalize((1, 1)) == frozenset()
    assert adem_normalize((2, 2)) == frozenset({(3, 1)})
    assert adem_normalize((1, 2)) == frozenset({(3, 0)})
    assert adem_normalize((2, 3)) == frozenset({(5, 0), (4, 1)})


def test_projection_relations():
    assert project_to_classical((0, 3)) == frozenset({(3,)})
    assert project_to_classical((2, -1)) == frozenset()
    assert project_to_classical((1, 2)) == frozenset({(3,)})


def compositions(d):
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in compositions(d - first):
            yield (first,) + rest


def test_classical_algebra_dimensions():
    # dims of A in degrees 0..10
    want = [1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6]
    for d, k in enumerate(want):
        basis = set()
        for m in compositions(d):
            basis |= project_to_classical(m)
        assert len(basis) == k
        assert all(is_admissible(x) for x in basis)


def test_monomial_text_round_trip():
    assert parse_monomial("Sq3 Sq1") == (3, 1)
    assert parse_monomial("Sq-1 Sq0") == (-1, 0)
    assert format_sum({(3, 1), (4,)}) == "Sq4 + Sq3 Sq1"


@given(st.integers(0, 40), st.integers(0, 40))
def test_lucas(n, k):
    assert binom2(n, k) == lucas_parity(n, k)


def test_sq_on_projective_space_matches_lucas():
    got, want = nerve_sq_table(6), lucas_table(6)
    assert got == want


def test_excess():
    assert excess((4, 2, 1)) == 1
    assert excess(()) == 0


def test_unstable_basis_examples():
    assert unstable_basis("A", 1, 0, 9) == [(), (1,), (2, 1), (4, 2, 1)]
    assert unstable_basis("A", 2, 2, 8) == [(), (1,), (2,), (2, 1), (3, 1), (4, 2)]
    with pytest.raises(ValueError):
        unstable_basis("B", 1, 0, 4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_u_series_against_bruteforce(n):
    assert u_poincare_series([n], 9) == u_series_bruteforce(n, 9)


def test_u_series_values():
    assert u_poincare_series([1], 6) == [1] * 7
    assert u_poincare_series([2], 6) == [1, 0, 1, 1, 1, 2, 2]


def test_mapping_space_series():
    for n in (2, 3):
        assert mapping_space_series(sphere(1), n, 8) == convolve(
            u_poincare_series([n], 8), u_poincare_series([n - 1], 8), 8)
    assert mapping_space_series(point(), 2, 8) == u_poincare_series([2], 8)


@pytest.mark.parametrize("x", [sphere(1), sphere(2), nerve_z2(4)], ids=["S1", "S2", "nerve4"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_retraction_and_cokernel(x, n):
    ctx = EMContext(x, n, 3)
    window = ctx.basis_window(n - 4, n + 6)
    rng = random.Random(n)
    for z in rng.sample(window, min(50, len(window))):
        gz = ctx.g_apply([z])
        assert ctx.retraction_apply(gz) == frozenset([z])
        assert ctx.cokernel_project(gz) == frozenset()
        assert ctx.in_image(gz)


def test_point_generator_not_in_image():
    ctx = EMContext(point(), 2, 3)
    z = ctx.basis_window(2, 2)
    bottom = [t for t in z if t[0] == ()]
    assert bottom and not ctx.in_image(bottom)
    assert ctx.cokernel_project(bottom) == frozenset(bottom)
