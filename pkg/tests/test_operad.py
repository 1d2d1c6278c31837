import itertools
from math import factorial

import pytest
from hypothesis import given, strategies as st

from ediv import operad as op
from ediv.acceptance import block_permutation, block_sum
from ediv.operad import OperadElement


@st.composite
def tuples(draw, max_r=3, max_d=3):
    r = draw(st.integers(1, max_r))
    d = 0 if r == 1 else draw(st.integers(0, max_d))
    perms = list(itertools.permutations(range(1, r + 1)))
    t = [draw(st.sampled_from(perms))]
    while len(t) < d + 1:
        w = draw(st.sampled_from(perms))
        if w != t[-1]:
            t.append(w)
    return tuple(t)


def elem(t, susp=0):
    return OperadElement(len(t[0]), frozenset({t}), susp)


@given(tuples(max_r=4, max_d=4))
def test_d_squared(t):
    assert op.differential(op.differential(elem(t))).is_zero()


@given(tuples(), tuples(), st.data())
def test_leibniz(a, b, data):
    rho, sigma = elem(a), elem(b)
    i = data.draw(st.integers(1, rho.arity))
    lhs = op.differential(op.partial_compose(rho, i, sigma))
    rhs = op.partial_compose(op.differential(rho), i, sigma) + op.partial_compose(rho, i, op.differential(sigma))
    assert lhs == rhs


@given(tuples(), tuples(), tuples(max_r=2, max_d=2), st.data())
def test_sequential_associativity(a, b, c, data):
    rho, sigma, tau = elem(a), elem(b), elem(c)
    i = data.draw(st.integers(1, rho.arity))
    j = data.draw(st.integers(1, sigma.arity))
    lhs = op.partial_compose(rho, i, op.partial_compose(sigma, j, tau))
    rhs = op.partial_compose(op.partial_compose(rho, i, sigma), i + j - 1, tau)
    assert lhs == rhs


@given(tuples(), tuples(max_r=2), st.data())
def test_equivariance_inside_input(a, b, data):
    rho, sigma = elem(a), elem(b)
    i = data.draw(st.integers(1, rho.arity))
    u = tuple(data.draw(st.permutations(range(1, sigma.arity + 1))))
    ins = [op.unit()] * rho.arity
    ins[i - 1] = sigma
    moved = list(ins)
    moved[i - 1] = op.act(u, sigma)
    blocks = [op.identity_perm(x.arity) for x in ins]
    blocks[i - 1] = u
    assert op.compose(rho, moved) == op.act(block_sum(blocks), op.compose(rho, ins))


@given(tuples(), tuples(max_r=2), st.data())
def test_equivariance_outer(a, b, data):
    rho, sigma = elem(a), elem(b)
    i = data.draw(st.integers(1, rho.arity))
    w = tuple(data.draw(st.permutations(range(1, rho.arity + 1))))
    ins = [op.unit()] * rho.arity
    ins[i - 1] = sigma
    lhs = op.compose(op.act(w, rho), ins)
    rhs = op.act(block_permutation(w, [x.arity for x in ins]), op.compose(rho, [ins[k - 1] for k in w]))
    assert lhs == rhs


@given(tuples())
def test_unit(t):
    rho = elem(t)
    assert op.compose(op.unit(), [rho]) == rho
    assert op.compose(rho, [op.unit()] * rho.arity) == rho


@given(tuples(max_r=4, max_d=4))
def test_act_is_a_chain_map(t):
    rho = elem(t)
    w = tuple(reversed(range(1, rho.arity + 1)))
    assert op.act(w, op.differential(rho)) == op.differential(op.act(w, rho))


@pytest.mark.parametrize("r,d", [(1, 0), (2, 3), (3, 2), (4, 1), (4, 2)])
def test_basis_count(r, d):
    want = factorial(r) * (factorial(r) - 1) ** d
    assert op.basis_count(r, d) == want == sum(1 for _ in op.basis(r, d))


def test_theta_differential_and_diagonal():
    for d in range(1, 6):
        assert op.differential(op.theta(d)) == op.theta(d - 1) + op.tau_theta(d - 1)
    pairs = op.diagonal(op.theta(2))
    assert len(pairs) == 3


def test_epsilon_examples():
    assert op.epsilon(op.theta_tuple(1)) == 1
    assert op.epsilon(op.theta_tuple(0)) == 0
    assert op.epsilon(((1, 2, 3), (2, 1, 3), (3, 1, 2))) == 1
    assert op.epsilon(((1, 2, 3), (1, 3, 2), (3, 1, 2))) == 0


def test_cap_lowers_degree_by_r_minus_one():
    t = op.theta_tuple(4)
    capped = op.cap_tuple(t)
    assert capped is not None and len(capped) == len(t) - 1


def test_epsilon_cocycle_small():
    for r in range(1, 4):
        _, bad = op.epsilon_cocycle_violations(r)
        assert bad == []


def test_d_squared_patterns_cover_basis():
    for r in range(1, 4):
        for d in range(0, 4):
            covered, bad = op.d_squared_violations(r, d)
            assert covered == op.basis_count(r, d)
            assert bad == []


def test_parse_format_round_trip():
    e = op.theta(3) + op.tau_theta(3)
    assert op.parse_element(op.format_element(e)) == e
    assert op.parse_tuple("12|21") == op.theta_tuple(1)


def test_degenerate_tuples_are_dropped():
    e = OperadElement.from_tuples(2, [((1, 2), (1, 2))])
    assert e.is_zero()
