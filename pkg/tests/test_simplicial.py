import pytest

from ediv.simplicial import (
    SimplexRef, cohomology, collapse_to_sphere, from_json, homology, nerve_z2, parse_space, point,
    product, sphere, standard_simplex, to_json,
)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sphere_homology(n):
    dims = homology(sphere(n)).dims
    assert dims == {k: int(k in (0, n)) for k in range(n + 1)}


def test_simplex_is_contractible():
    assert homology(standard_simplex(3)).dims == {0: 1, 1: 0, 2: 0, 3: 0}
    assert cohomology(standard_simplex(3)).dims == {0: 1, 1: 0, 2: 0, 3: 0}


def test_nerve_has_one_class_per_degree():
    assert set(cohomology(nerve_z2(6)).dims.values()) == {1}


def test_face_identities():
    for x in (standard_simplex(3), sphere(2), nerve_z2(5)):
        assert x.check_identities() == []


def test_square_counts():
    p = product(standard_simplex(1), standard_simplex(1))
    assert [len(p.nondegenerate(n)) for n in range(3)] == [4, 5, 2]
    assert homology(p).dims == {0: 1, 1: 0, 2: 0}


def test_torus_homology():
    t = product(sphere(1), sphere(1))
    assert homology(t).dims == {0: 1, 1: 2, 2: 1}


def test_json_round_trip():
    x = sphere(2)
    y = from_json(to_json(x))
    assert to_json(y) == to_json(x)
    assert homology(y).dims == homology(x).dims


def test_parse_space():
    assert parse_space("pt").top_dim == 0
    assert parse_space("sphere:2").top_dim == 2
    assert parse_space("simplex:1*simplex:1").top_dim == 2
    with pytest.raises(ValueError):
        parse_space("bogus")


def test_degeneracy_word_round_trip():
    ref = SimplexRef.from_word((2, 0), "e1", 1)
    assert ref.dim == 3 and ref.degenerate
    assert SimplexRef.from_word(ref.degeneracy_word, "e1", 1) == ref


def test_collapse_sends_boundary_to_point():
    f = collapse_to_sphere(2)
    top = SimplexRef.nondegenerate(2, f.source.nondegenerate(2)[0])
    assert f.on_simplex(top).base == "e2"
    for sid in f.source.nondegenerate(1):
        assert f.on_simplex(SimplexRef.nondegenerate(1, sid)).degenerate


def test_point():
    assert homology(point()).dims == {0: 1}
