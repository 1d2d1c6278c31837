import pytest
from hypothesis import given, strategies as st

from ediv import operad as op
from ediv.free_ealgebra import (
    AlmostFreeAlgebra, FreeElement, Generator, brute_force_orbits, canonicalize, check_d_squared,
    enumerate_graded_basis, evaluate, format_element, free_algebra, full_differential, gen,
    mandell_model, orbit_key, parse_element, presentation_from_json, presentation_to_json,
)


def test_enumeration_examples():
    V = free_algebra([Generator("e", 1)])
    assert enumerate_graded_basis(V, 2, 2, 4) == [(op.theta_tuple(0), ("e", "e"))]
    got = enumerate_graded_basis(V, 1, 2, 4)
    assert [(len(t[0]), len(t)) for t, _ in got] == [(1, 1), (2, 2)]


@given(st.lists(st.integers(1, 3), min_size=1, max_size=2), st.integers(-1, 6))
def test_enumeration_matches_brute_force(degs, m):
    F = free_algebra([Generator(f"v{i}", d) for i, d in enumerate(degs)])
    en = enumerate_graded_basis(F, m, 3, 2)
    keys = [orbit_key(*t) for t in en]
    assert len(set(keys)) == len(keys)
    assert set(keys) == brute_force_orbits(F, m, 3, 2)


def test_enumeration_rejects_nonpositive_generators():
    with pytest.raises(ValueError):
        enumerate_graded_basis(free_algebra([Generator("z", 0)]), 0, 2, 1)


@given(st.permutations([1, 2, 3]))
def test_coinvariants_are_well_defined(w):
    w = tuple(w)
    rho = op.OperadElement(3, frozenset({((1, 2, 3), (2, 1, 3))}))
    a = [gen("x"), gen("y"), gen("z")]
    winv = op.perm_inv(w)
    permuted = [a[winv[j] - 1] for j in range(3)]
    assert evaluate(op.act(w, rho), permuted) == evaluate(rho, a)


def test_canonical_form_is_orbit_invariant():
    t = (op.TAU, op.ID2)
    assert canonicalize(t, ("a", "b")) == canonicalize((op.ID2, op.TAU), ("b", "a"))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_models_square_to_zero(n):
    F = mandell_model(n)
    assert check_d_squared(F, n - 2, 8)["failures"] == []


def test_model_attachment():
    F = mandell_model(2)
    assert format_element(F.h_of("b1")) == "e2 + 12|21|12(e2,e2)"
    assert full_differential(F, gen("b1")) == F.h_of("b1")


def test_attachment_degree_is_checked():
    with pytest.raises(ValueError):
        AlmostFreeAlgebra((Generator("e", 2), Generator("b", 1)),
                          {"b": FreeElement(frozenset({(op.theta_tuple(1), ("e", "e"))}))})


def test_dropping_theta_in_the_model_alone_is_not_detected():
    # h(b) = e is still a cycle, so delta^2 = 0; the control that bites lives in the division tests
    F = AlmostFreeAlgebra(mandell_model(3).generators, {"b2": gen("e3")})
    assert check_d_squared(F, 1, 5)["failures"] == []


def test_internal_differential_squares_to_zero_is_enforced_by_degrees():
    with pytest.raises(ValueError):
        free_algebra([Generator("a", 1, frozenset({"c"})), Generator("c", 3)])


def test_text_and_json_round_trip():
    F = mandell_model(3)
    G = presentation_from_json(presentation_to_json(F))
    assert G.h == F.h and G.degrees == F.degrees
    e = F.h_of("b2")
    assert parse_element(format_element(e)) == e
