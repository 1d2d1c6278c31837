from ediv.z2square import (
    Z2SquaredNerve, adem_suite, cartan_suite, generic_agreement, sq_polynomial, truncate,
)


def test_sq_polynomial_is_cartan_of_lucas():
    # Sq^1(xy) = x^2 y + x y^2
    assert sq_polynomial(1, 1, 1) == frozenset({(2, 1), (1, 2)})
    assert sq_polynomial(2, 1, 1) == frozenset({(2, 2)})


def test_truncation():
    assert truncate({(3, 0), (1, 1)}, 2) == frozenset({(1, 1)})


def test_small_window_adem_and_cartan():
    adem = list(adem_suite(top=4, max_class_degree=3, max_ij=4))
    assert adem and all(r[-1] in ("ok", "outside") for r in adem)
    assert sum(r[-1] == "ok" for r in adem) > 0
    cartan = list(cartan_suite(top=4, max_total=3))
    assert cartan and all(r[-1] == "ok" for r in cartan)


def test_fast_nerve_agrees_with_generic_product():
    checked, bad = generic_agreement(2)
    assert checked > 0 and bad == 0


def test_square_of_degree_one_class():
    nv = Z2SquaredNerve(4)
    x = (1, nv.monomial(1, 0))
    assert nv.detect(nv.sq(1, x)) == frozenset({(2, 0)})
