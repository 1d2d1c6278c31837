import pytest

from ediv import operad as op
from ediv.acceptance import item_adjunction
from ediv.coaction import CapabilityError, CircleCoalgebra, CochainAlgebra, SimplicialCoalgebra
from ediv.division import (
    FreeCarrier, adjunction_check, cochain_value_sampler, divide_almost_free, divided_name,
    expected_cell_division, loop_model, term_sampler, transport,
)
from ediv.free_ealgebra import (
    AlmostFreeAlgebra, FreeElement, Generator, check_d_squared, format_element, free_algebra,
    full_differential, gen, mandell_model,
)
from ediv.simplicial import sphere, standard_simplex

S1 = sphere(1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [SimplicialCoalgebra(S1), SimplicialCoalgebra(S1, reduced=True), CircleCoalgebra(),
                               SimplicialCoalgebra(standard_simplex(1))], ids=["S1", "rS1", "circle", "D1"])
def test_division_squares_to_zero(n, k):
    D = divide_almost_free(mandell_model(n), k)
    assert check_d_squared(D, n - 2, n + 2)["failures"] == []


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cell_division_formula(n):
    k = SimplicialCoalgebra(S1)
    D = divide_almost_free(mandell_model(n), k)
    for c in k.basis():
        assert D.h_of(divided_name(f"b{n - 1}", k, c)) == expected_cell_division(n, k, c)


def test_division_by_a_point_like_vertex_keeps_the_model():
    k = SimplicialCoalgebra(standard_simplex(0))
    D = divide_almost_free(mandell_model(2), k)
    assert format_element(D.h_of("b1/[0]")) == "e2/[0] + 12|21|12(e2/[0],e2/[0])"


def test_circle_division_uses_epsilon():
    D = divide_almost_free(mandell_model(3), CircleCoalgebra())
    assert format_element(D.h_of("b2/e1")) == "e3/e1 + 12|21|12(e3/e1,e3/e1)"


def test_dropped_theta_is_caught_after_division():
    # negative control: keep only the linear part of h on the edge generator
    D = divide_almost_free(mandell_model(2), SimplicialCoalgebra(standard_simplex(1)))
    h = dict(D.h)
    h["b1/[01]"] = FreeElement(frozenset(t for t in h["b1/[01]"].terms if len(t[1]) == 1))
    bad = AlmostFreeAlgebra(D.generators, h)
    report = check_d_squared(bad, 0, 3)
    assert report["failures"] and report["failures"][0] == "b1/[01]"


def test_transport_is_a_chain_map():
    k = SimplicialCoalgebra(standard_simplex(1))
    F = mandell_model(2)
    D = divide_almost_free(F, k)
    name = lambda v, c: divided_name(v, k, c)  # noqa: E731
    y = F.h_of("b1")
    for c in k.basis():
        lhs = full_differential(D, transport(y, k, c, name))
        rhs = transport(full_differential(F, y), k, c, name)
        for f in k.boundary(c):
            rhs = rhs + transport(y, k, f, name)
        assert lhs == rhs


def test_capability_error_surfaces():
    F = free_algebra([Generator("a", 1)])
    y = FreeElement(frozenset({(op.id_element(3).sorted_terms()[0], ("a", "a", "a"))}))
    with pytest.raises(CapabilityError):
        transport(y, SimplicialCoalgebra(S1), SimplicialCoalgebra(S1).basis()[0], str)
    del F


@pytest.mark.parametrize("n", [2, 3, 4])
def test_loop_model(n):
    L = loop_model(mandell_model(n))
    assert L.susp == 1
    assert format_element(L.h_of(f"b{n - 1}")) == f"e{n} + {op.format_tuple(op.theta_tuple(n - 1))}(e{n},e{n})"
    for g in L.names:
        assert not full_differential(L, full_differential(L, gen(g, 1)))


def test_double_loop():
    L = loop_model(loop_model(mandell_model(3)))
    assert L.susp == 2
    assert format_element(L.h_of("b2")) == "e3 + 12|21(e3,e3)"


def test_loop_rejects_degree_zero_generators():
    with pytest.raises(ValueError):
        loop_model(mandell_model(1))


def test_adjunction_configurations():
    rep = item_adjunction(samples=10)
    assert rep["status"] == "pass", rep


def swapped_transport(y, k, c, name):
    """Transport with the two diagonal factors exchanged: the co-operation uses rho_(2)."""
    from ediv.free_ealgebra import canonicalize
    acc = set()
    for t, args in y.terms:
        for t1, t2 in op.diagonal_tuple(t):
            for word in k.co_tuple(t2, c):
                acc ^= {canonicalize(t1, tuple(name(a, ci) for a, ci in zip(args, word)))}
    return FreeElement(frozenset(acc), y.susp)


def test_swapped_transport_is_caught(monkeypatch):
    import ediv.division as division

    V = free_algebra([Generator("e1", 1), Generator("e2", 2)])
    B = CochainAlgebra(standard_simplex(3))
    k = SimplicialCoalgebra(S1)
    good = adjunction_check(V, k, B, cochain_value_sampler(B), term_sampler(V, 2, 3), samples=20)
    assert good["passed"]
    monkeypatch.setattr(division, "transport", swapped_transport)
    bad = adjunction_check(V, k, B, cochain_value_sampler(B), term_sampler(V, 2, 3), samples=20)
    assert not bad["passed"]
    assert bad["witness"] is not None


def test_free_carrier_differential():
    W = free_algebra([Generator("w1", 1), Generator("w2", 2, frozenset({"w3"})), Generator("w3", 3)])
    assert FreeCarrier(W).differential(gen("w2")) == gen("w3")
