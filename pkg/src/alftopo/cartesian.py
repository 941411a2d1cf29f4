"""Cartesian cell complexes: products of one-dimensional axis complexes.

An axis with ``m`` pixels has combinatorial indices ``0 .. 2m-2``; even
indices are open 1-cells (the pixels), odd indices are closed 0-cells
between them.  The endpoints are open, so an image border consists of
pixels and there is no cell outside the array.

Cells are tuples of combinatorial coordinates in array-axis order, so the
principal cell of pixel ``p`` is ``tuple(2 * x for x in p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .space import LFSpace

Cell = tuple[int, ...]

DEFAULT_MAX_CELLS = 2_000_000


@dataclass(frozen=True)
class AxisComplex:
    pixels: int

    def __post_init__(self):
        if self.pixels < 1:
            raise ValueError("an axis needs at least one pixel")

    @property
    def size(self) -> int:
        return 2 * self.pixels - 1


@dataclass(frozen=True)
class Intermediate:
    cell: Cell
    complex: frozenset[Cell]
    squared_distance: int


class CartesianComplex:
    """Product of axis complexes, one per array axis."""

    def __init__(self, axes: Sequence[AxisComplex | int]):
        axes = tuple(a if isinstance(a, AxisComplex) else AxisComplex(int(a)) for a in axes)
        if not axes:
            raise ValueError("a complex needs at least one axis")
        self.axes = axes

    @classmethod
    def for_shape(cls, shape: Sequence[int]) -> "CartesianComplex":
        return cls(tuple(shape))

    @property
    def n(self) -> int:
        return len(self.axes)

    @property
    def pixel_shape(self) -> tuple[int, ...]:
        return tuple(a.pixels for a in self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        """Extent of the combinatorial coordinate grid."""
        return tuple(a.size for a in self.axes)

    @property
    def cell_count(self) -> int:
        return int(np.prod(self.shape))

    def __eq__(self, other):
        return isinstance(other, CartesianComplex) and self.axes == other.axes

    def __hash__(self):
        return hash(self.axes)

    def __repr__(self):
        return f"CartesianComplex({'x'.join(str(m) for m in self.pixel_shape)} pixels)"

    def contains(self, c: Sequence[int]) -> bool:
        return len(c) == self.n and all(0 <= x < s for x, s in zip(c, self.shape))

    def check(self, c: Sequence[int]) -> Cell:
        c = tuple(int(x) for x in c)
        if not self.contains(c):
            raise IndexError(f"cell {c} outside complex of shape {self.shape}")
        return c

    def cells(self) -> Iterator[Cell]:
        return product(*(range(s) for s in self.shape))

    def principal_cells(self) -> Iterator[Cell]:
        return product(*(range(0, s, 2) for s in self.shape))

    def index(self, c: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(c), self.shape))

    def principal(self, point: Sequence[int]) -> Cell:
        return self.check(tuple(2 * int(x) for x in point))

    @cached_property
    def lf_space(self) -> LFSpace:
        return to_lf_space(self)


def is_principal(c: Sequence[int]) -> bool:
    return all(x % 2 == 0 for x in c)


def cell_dim(cx: CartesianComplex, c: Sequence[int]) -> int:
    """Number of open (even) components."""
    c = cx.check(c)
    return sum(1 for x in c if x % 2 == 0)


def _axis_face(a: int, b: int) -> bool:
    return a == b or (a % 2 == 1 and abs(a - b) == 1)


def is_face(cx: CartesianComplex, a: Sequence[int], b: Sequence[int]) -> bool:
    a = cx.check(a)
    b = cx.check(b)
    return all(_axis_face(x, y) for x, y in zip(a, b))


def _clip(options: list[list[int]], shape: tuple[int, ...]) -> list[list[int]]:
    return [[v for v in opts if 0 <= v < s] for opts, s in zip(options, shape)]


def open_star(cx: CartesianComplex, c: Sequence[int]) -> frozenset[Cell]:
    """Cells having ``c`` as a face (the smallest neighborhood of ``c``)."""
    c = cx.check(c)
    opts = _clip([[x] if x % 2 == 0 else [x - 1, x, x + 1] for x in c], cx.shape)
    return frozenset(product(*opts))


def cell_closure(cx: CartesianComplex, c: Sequence[int]) -> frozenset[Cell]:
    """``c`` and all its faces, clipped to the complex."""
    c = cx.check(c)
    opts = _clip([[x - 1, x, x + 1] if x % 2 == 0 else [x] for x in c], cx.shape)
    return frozenset(product(*opts))


def incident_principals(cx: CartesianComplex, c: Sequence[int]) -> frozenset[Cell]:
    c = cx.check(c)
    opts = _clip([[x] if x % 2 == 0 else [x - 1, x + 1] for x in c], cx.shape)
    return frozenset(product(*opts))


def squared_distance(v1: Sequence[int], v2: Sequence[int]) -> int:
    """Squared Euclidean distance of two principal cells in pixel units."""
    return sum(((a - b) // 2) ** 2 for a, b in zip(v1, v2))


def intermediate(cx: CartesianComplex, v1: Sequence[int], v2: Sequence[int]) -> Intermediate:
    """Intermediate cell of two close principal cells and its closure."""
    v1 = cx.check(v1)
    v2 = cx.check(v2)
    if not (is_principal(v1) and is_principal(v2)):
        raise ValueError("intermediate cells are defined for principal cells only")
    if any(abs(a - b) > 2 for a, b in zip(v1, v2)):
        raise ValueError(f"principal cells {v1} and {v2} are not close")
    c = tuple((a + b) // 2 for a, b in zip(v1, v2))
    return Intermediate(cell=c, complex=cell_closure(cx, c), squared_distance=squared_distance(v1, v2))


def to_lf_space(cx: CartesianComplex, max_cells: int = DEFAULT_MAX_CELLS) -> LFSpace:
    """The complex as a space with ``SN(c) = open_star(c)``.

    Elements are numbered in C order of the combinatorial grid and named by
    their cell coordinates.
    """
    if cx.cell_count > max_cells:
        raise ValueError(f"complex has {cx.cell_count} cells, above the bound {max_cells}")
    shape = cx.shape
    cells = list(cx.cells())
    sn = [[int(np.ravel_multi_index(s, shape)) for s in open_star(cx, c)] for c in cells]
    return LFSpace(sn, names=cells)


@dataclass(frozen=True)
class Coords:
    comb: Cell
    semi: tuple[Fraction, ...]


def coords(cx: CartesianComplex | None, c: Sequence[int]) -> Coords:
    """Combinatorial and semi-combinatorial (half of combinatorial) coordinates."""
    if cx is not None:
        c = cx.check(c)
    c = tuple(int(x) for x in c)
    return Coords(comb=c, semi=tuple(Fraction(x, 2) for x in c))


def from_semi(semi: Sequence) -> Cell:
    out = []
    for y in semi:
        doubled = Fraction(y) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{y} is not an integer or half-integer")
        out.append(int(doubled))
    return tuple(out)
