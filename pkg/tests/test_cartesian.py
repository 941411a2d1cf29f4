from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from alftopo.cartesian import (
    CartesianComplex,
    cell_closure,
    cell_dim,
    coords,
    from_semi,
    incident_principals,
    intermediate,
    is_face,
    open_star,
    squared_distance,
    to_lf_space,
)
from alftopo.fixtures import k5, singleton
from alftopo.space import dimensions, incident, verify_axioms

C2 = CartesianComplex.for_shape((3, 3))
C3 = CartesianComplex.for_shape((3, 3, 3))
C4 = CartesianComplex.for_shape((4, 4, 4))


@st.composite
def complexes(draw, max_n=3, max_m=3):
    n = draw(st.integers(1, max_n))
    return CartesianComplex.for_shape(draw(st.lists(st.integers(1, max_m), min_size=n, max_size=n)))


@st.composite
def complex_and_cell(draw):
    cx = draw(complexes())
    return cx, tuple(draw(st.integers(0, s - 1)) for s in cx.shape)


def brute_face(a, b):
    # a is a face of b when b lies in the open star of a, coordinatewise
    return all(x == y or (x % 2 == 1 and abs(x - y) == 1) for x, y in zip(a, b))


@pytest.mark.parametrize("cx,c,expected", [(C2, (2, 2), 2), (C4, (1, 3, 5), 0), (C2, (1, 2), 1)])
def test_cell_dim(cx, c, expected):
    assert cell_dim(cx, c) == expected


def test_is_face_examples():
    assert is_face(C2, (1, 1), (2, 2))
    assert is_face(C2, (3, 2), (3, 2))
    assert not is_face(CartesianComplex.for_shape((3,)), (0,), (2,))


def test_open_star_examples():
    assert open_star(C2, (1, 1)) == set(product(range(3), range(3)))
    assert open_star(C2, (2, 2)) == {(2, 2)}
    assert open_star(C2, (1, 2)) == {(0, 2), (1, 2), (2, 2)}


def test_incident_principals_examples():
    assert len(incident_principals(C3, (1, 1, 2))) == 4
    assert incident_principals(C2, (2, 2)) == {(2, 2)}
    assert incident_principals(C2, (1, 1)) == {(0, 0), (0, 2), (2, 0), (2, 2)}


def test_intermediate_examples():
    im = intermediate(C2, (0, 0), (2, 2))
    assert im.cell == (1, 1) and cell_dim(C2, im.cell) == 0 and im.complex == {(1, 1)}
    im3 = intermediate(C3, (2, 2, 2), (4, 4, 2))
    assert im3.squared_distance == 2 and len(im3.complex) == 3
    im = intermediate(C2, (0, 0), (2, 0))
    assert im.cell == (1, 0) and cell_dim(C2, im.cell) == 1
    # clipped at the border: (1, -1) does not exist
    assert im.complex == {(1, 0), (1, 1)}


def test_intermediate_rejects_far_or_lower_cells():
    with pytest.raises(ValueError):
        intermediate(C2, (0, 0), (4, 0))
    with pytest.raises(ValueError):
        intermediate(C2, (1, 0), (2, 0))


def test_to_lf_space_examples():
    one = to_lf_space(CartesianComplex.for_shape((3,)))
    assert one == k5()
    two = to_lf_space(CartesianComplex.for_shape((2, 2)))
    assert two.element_count == 9 and verify_axioms(two, exhaustive=True).passed
    assert to_lf_space(CartesianComplex.for_shape((1,))) == singleton()


def test_size_bound():
    with pytest.raises(ValueError):
        to_lf_space(CartesianComplex.for_shape((50, 50)), max_cells=100)


def test_coords_examples():
    assert coords(C2, (1, 2)).semi == (Fraction(1, 2), 1)
    assert coords(C2, (2, 2)).semi == (1, 1)
    assert from_semi((Fraction(3, 2), 0)) == (3, 0)
    assert from_semi(("1.5", 0)) == (3, 0)
    with pytest.raises(ValueError):
        from_semi((Fraction(1, 3),))


def test_out_of_range_cell():
    with pytest.raises(IndexError):
        cell_dim(C2, (5, 0))


# properties


def test_dimension_matches_open_components_3d():
    dims = dimensions(C3.lf_space)
    for e, c in enumerate(C3.lf_space.names):
        assert dims[e] == cell_dim(C3, c)


def test_incident_principal_count_interior_3d():
    for c in C3.cells():
        assert len(incident_principals(C3, c)) == 2 ** (3 - cell_dim(C3, c))


@given(complex_and_cell())
def test_star_and_closure_match_brute_face(cc):
    cx, c = cc
    cells = list(cx.cells())
    assert open_star(cx, c) == {b for b in cells if brute_face(c, b)}
    assert cell_closure(cx, c) == {a for a in cells if brute_face(a, c)}


@given(complexes())
def test_lf_space_passes_axioms(cx):
    s = cx.lf_space
    rep = verify_axioms(s)
    assert rep.axiom3 and rep.axiom4
    assert list(dimensions(s)) == oracles.longest_path_dims(oracles.sn_sets(s))


@given(complexes(max_n=3, max_m=3))
def test_intermediate_properties(cx):
    space = cx.lf_space
    prin = list(cx.principal_cells())
    for v1, v2 in combinations(prin, 2):
        close = all(abs(a - b) <= 2 for a, b in zip(v1, v2))
        if not close:
            assert not cell_closure(cx, v1) & cell_closure(cx, v2)
            continue
        im = intermediate(cx, v1, v2)
        assert cell_dim(cx, im.cell) == cx.n - squared_distance(v1, v2)
        for f in im.complex:
            e = cx.index(f)
            assert incident(space, e, cx.index(v1)) and incident(space, e, cx.index(v2))
