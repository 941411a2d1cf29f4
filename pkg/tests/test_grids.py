import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from alftopo.cartesian import CartesianComplex
from alftopo.grids import (
    BCC14_OFFSETS,
    Bcc14Grid,
    HexGrid,
    HexIncidence,
    bcc14_components,
    bcc14_neighbors,
    hcc_check,
    hex_components,
    hex_membership,
    hex_neighbors,
    hex_to_lf_space,
)
from alftopo.space import dimensions, verify_axioms


def test_hex_neighbors_examples():
    g = HexGrid.blank(4, 4)
    assert hex_neighbors((1, 1), g) == {(0, 1), (2, 1), (1, 0), (1, 2), (0, 0), (2, 2)}
    assert len(hex_neighbors((2, 2), g)) == 6
    assert len(hex_neighbors((0, 0), g)) == 3
    with pytest.raises(IndexError):
        hex_neighbors((4, 0), g)


def test_mirror_diagonal():
    g = HexGrid.blank(3, 3, mirror=True)
    assert hex_neighbors((1, 1), g) == {(0, 1), (2, 1), (1, 0), (1, 2), (2, 0), (0, 2)}


def test_hex_space_2x2():
    g = HexGrid.blank(2, 2)
    space = hex_to_lf_space(g)
    assert verify_axioms(space, exhaustive=True).passed
    for e, (p, kind) in enumerate(space.names):
        if kind.startswith("V") and all(g.contains(q) for q in g.cell_geometry(p, kind)):
            pixels = [x for x in space.sn[e] if space.names[x][1] == "P"]
            edges = [x for x in space.sn[e] if space.names[x][1].startswith("E")]
            assert len(pixels) == 3 and len(edges) == 3


def test_hex_space_1x1():
    space = hex_to_lf_space(HexGrid.blank(1, 1))
    assert space.element_count == 6
    assert all(space.sn[e] >= {0} for e in range(6))
    assert verify_axioms(space).passed


def test_hex_size_bound():
    with pytest.raises(ValueError):
        hex_to_lf_space(HexGrid.blank(10, 10), max_pixels=50)


@pytest.mark.parametrize("mirror", [False, True])
def test_hex_space_structure(mirror):
    space = hex_to_lf_space(HexGrid.blank(5, 4, mirror=mirror))
    assert verify_axioms(space).passed
    assert max(dimensions(space)) == 2
    assert hcc_check(space, 2)


def test_hcc_examples():
    assert hcc_check(hex_to_lf_space(HexGrid.blank(4, 4)), 2)
    assert not hcc_check(CartesianComplex.for_shape((3, 3)).lf_space, 2)
    assert not hcc_check(CartesianComplex.for_shape((2, 2, 2)).lf_space, 3)


def test_hcc_requires_axioms():
    from alftopo.fixtures import symmetric_pair

    with pytest.raises(ValueError):
        hcc_check(symmetric_pair(), 1)


def test_hex_pixels_sharing_any_cell_share_an_edge():
    g = HexGrid.blank(5, 5)
    space = hex_to_lf_space(g)
    pix = [e for e, (_, k) in enumerate(space.names) if k == "P"]
    cells_of = {e: {x for x in range(space.element_count) if e in space.sn[x]} for e in pix}
    for a, b in combinations(pix, 2):
        shared = cells_of[a] & cells_of[b]
        if shared:
            assert any(space.names[x][1].startswith("E") for x in shared)


@pytest.mark.parametrize("w,h", [(2, 2), (3, 3), (2, 4)])
@pytest.mark.parametrize("mirror", [False, True])
def test_hex_components_exhaustive_small(w, h, mirror):
    g = HexGrid.blank(w, h, mirror=mirror)
    inc = HexIncidence(g)
    for m in range(1 << (w * h)):
        mask = np.array([(m >> i) & 1 for i in range(w * h)], bool).reshape(h, w)
        pts = [(x, y) for y in range(h) for x in range(w) if mask[y, x]]
        expected = oracles.point_components(pts, lambda p, q: oracles.hex_adjacent(p, q, mirror))
        assert set(inc.components(m)) == expected == set(hex_components(g, mask))


@pytest.mark.parametrize("size", [5, 6])
def test_hex_components_random(size):
    g = HexGrid.blank(size, size)
    inc = HexIncidence(g)
    rng = random.Random(size)
    for _ in range(150):
        m = rng.getrandbits(size * size)
        mask = np.array([(m >> i) & 1 for i in range(size * size)], bool).reshape(size, size)
        assert set(inc.components(m)) == set(hex_components(g, mask))


@given(arrays(bool, st.tuples(st.integers(1, 5), st.integers(1, 5))))
def test_hex_foreground_background_partition(mask):
    g = HexGrid(mask.astype(int))
    fg = hex_components(g, mask)
    bg = hex_components(g, ~mask)
    cells = [p for c in fg + bg for p in c]
    assert len(cells) == len(set(cells)) == mask.size


@given(arrays(bool, st.tuples(st.integers(1, 4), st.integers(1, 4))))
def test_membership_words_fit_five_bits(mask):
    g = HexGrid(mask.astype(int))
    words = hex_membership(g, mask)
    assert ((words >= 0) & (words < 32)).all()
    assert (words[~mask] == 0).all()
    grid = HexGrid(mask.astype(int), bits=words)
    assert np.array_equal(grid.bits, words)


def test_bits_validation():
    with pytest.raises(ValueError):
        HexGrid(np.zeros((2, 2)), bits=np.full((2, 2), 40))
    with pytest.raises(ValueError):
        HexGrid(np.zeros((2, 2)), bits=np.zeros((3, 2)))


def test_bcc14_neighbors_examples():
    assert len(bcc14_neighbors((5, 5, 5))) == 14
    assert (1, 1, 1) in bcc14_neighbors((0, 0, 0))
    assert (1, 1, 0) not in bcc14_neighbors((0, 0, 0))
    grid = Bcc14Grid(np.ones((3, 3, 3)))
    assert len(bcc14_neighbors((0, 0, 0), grid)) == 4
    assert len(bcc14_neighbors((1, 1, 1), grid)) == 14


def test_bcc14_offsets_symmetric_irreflexive():
    offs = set(BCC14_OFFSETS)
    assert len(offs) == 14 and (0, 0, 0) not in offs
    assert all(tuple(-x for x in o) in offs for o in offs)


def test_bcc14_components_examples():
    m = np.zeros((2, 2, 2), bool)
    m[0, 0, 0] = m[1, 1, 1] = True
    assert len(bcc14_components(Bcc14Grid(m))) == 1
    from alftopo.adjacency import DigitalImage, a_components

    assert len(a_components(DigitalImage(m), 1)) == 2
    assert bcc14_components(Bcc14Grid(np.zeros((2, 2, 2)))) == []
    one = np.zeros((3, 3, 3), bool)
    one[1, 1, 1] = True
    assert len(bcc14_components(Bcc14Grid(one), of_foreground=False)) == 1


@given(arrays(bool, st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))))
def test_bcc14_components_match_oracle(mask):
    grid = Bcc14Grid(mask)
    for fg in (True, False):
        pts = [tuple(map(int, p)) for p in np.argwhere(mask if fg else ~mask)]
        offs = set(BCC14_OFFSETS)
        expected = oracles.point_components(pts, lambda p, q: tuple(b - a for a, b in zip(p, q)) in offs)
        assert set(bcc14_components(grid, of_foreground=fg)) == expected
