import pytest
from hypothesis import given, strategies as st

from ediv import operad as op
from ediv.coaction import (
    CapabilityError, CircleCoalgebra, CochainAlgebra, PointCoalgebra, SimplicialCoalgebra,
    aw_coproduct, aw_shuffle_defects, boundary_coherence_defect, cup, cup_i_coproduct,
    shuffle_chain_map_defects, shuffle_witness,
)
from ediv.simplicial import CochainElement, SimplexRef, nerve_z2, product, sphere, standard_simplex

D3 = standard_simplex(3)
ALG = CochainAlgebra(D3)


def all_simplices(x):
    return [SimplexRef.nondegenerate(n, s) for n in range(x.top_dim + 1) for s in x.nondegenerate(n)]


@pytest.mark.parametrize("x", [standard_simplex(3), sphere(2), product(standard_simplex(1), standard_simplex(1))],
                         ids=["simplex3", "sphere2", "square"])
def test_boundary_coherence(x):
    for s in all_simplices(x):
        for i in range(4):
            assert boundary_coherence_defect(x, i, s) == frozenset()


def test_theta0_is_alexander_whitney():
    for s in all_simplices(D3):
        assert cup_i_coproduct(D3, 0, s) == aw_coproduct(D3, s)


def test_cup_i_vanishes_above_dimension():
    top = all_simplices(D3)[-1]
    assert cup_i_coproduct(D3, 4, top) == frozenset()


@st.composite
def cochains(draw, n):
    ids = D3.nondegenerate(n)
    return CochainElement(n, frozenset(draw(st.sets(st.sampled_from(ids)))))


@given(st.integers(0, 3), st.integers(0, 2), st.data())
def test_cochain_operation_is_a_chain_map(d, p, data):
    q = data.draw(st.integers(0, 3 - p))
    u, v = data.draw(cochains(p)), data.draw(cochains(q))
    rho = op.theta(d)
    if p + q - d < 0 or p + q - d + 1 > 3:
        return
    lhs = ALG.differential(ALG.operate(rho, [u, v]))
    rhs = ALG.operate(rho, [ALG.differential(u), v]) + ALG.operate(rho, [u, ALG.differential(v)])
    if d:
        rhs = rhs + ALG.operate(op.differential(rho), [u, v])
    assert lhs == rhs


def test_cup_is_theta0():
    u = CochainElement(1, frozenset(D3.nondegenerate(1)[:3]))
    v = CochainElement(1, frozenset(D3.nondegenerate(1)[2:]))
    assert cup(D3, u, v).materialize(D3) == ALG.operate(op.theta(0), [u, v])


def test_capability_error_for_arity_three():
    k = SimplicialCoalgebra(sphere(1))
    t = op.id_element(3)
    with pytest.raises(CapabilityError):
        k.co_operation(t, k.basis()[0])


def test_circle_and_point_coalgebras():
    c = CircleCoalgebra()
    assert c.co_tuple(op.theta_tuple(1), "e1") == frozenset({("e1", "e1")})
    assert c.co_tuple(op.theta_tuple(0), "e1") == frozenset()
    p = PointCoalgebra()
    assert p.co_tuple(op.theta_tuple(0), "pt") == frozenset({("pt", "pt")})
    assert p.co_tuple(op.theta_tuple(1), "pt") == frozenset()


def test_reduced_chains_drop_basepoint():
    k = SimplicialCoalgebra(sphere(1), reduced=True)
    assert [c.base for c in k.basis()] == ["e1"]
    assert k.boundary(k.basis()[0]) == frozenset()


def test_nerve_squares_through_coproduct():
    # on the nerve theta_1 pairs the top simplex with itself in degree 1
    x = nerve_z2(3)
    s = SimplexRef.nondegenerate(1, x.nondegenerate(1)[0])
    assert len(cup_i_coproduct(x, 1, s)) == 1


def test_shuffle_is_aw_section_and_chain_map():
    p = product(standard_simplex(1), standard_simplex(1))
    assert aw_shuffle_defects(p) == []
    assert shuffle_chain_map_defects(p) == []


def test_shuffle_is_not_multiplicative_for_theta1():
    p = product(standard_simplex(1), standard_simplex(1))
    w = shuffle_witness(p)
    assert w is not None and w["verified"]
    assert w["rho"] == "12|21"
    assert w["lhs"] != w["rhs"]
    # theta_0 alone never produces a witness
    assert shuffle_witness(p, max_opdeg=0) is None
