"""Small named spaces and images used by tests, examples and the CLI."""

from __future__ import annotations

import numpy as np

from .space import LFSpace

# 8x8 image with a thin black V (apex at the bottom) sitting on a white field
# and a thin white inverted V cut into a black field below it.  Each V is a
# one-pixel diagonal stroke, so it is held together only through 0-cells.
# 0 = black, 255 = white.
TWO_V_ROWS = (
    "WWWWWWWW",
    "WBWWWBWW",
    "WWBWBWWW",
    "WWWBWWWW",
    "BBBBWBBB",
    "BBBWBWBB",
    "BBWBBBWB",
    "BBBBBBBB",
)


def k5() -> LFSpace:
    """Khalimsky interval of three pixels: e0 .. e4, even index open."""
    sn = [{0}, {0, 1, 2}, {2}, {2, 3, 4}, {4}]
    return LFSpace(sn, names=[f"e{i}" for i in range(5)])


def singleton() -> LFSpace:
    return LFSpace([{0}])


def symmetric_pair() -> LFSpace:
    return LFSpace([{0, 1}, {0, 1}], names=["a", "b"])


def chain3() -> LFSpace:
    """SN(a)={a,b}, SN(b)={b,c}, SN(c)={c}: N is not transitive."""
    return LFSpace([{0, 1}, {1, 2}, {2}], names=["a", "b", "c"])


def tetrahedron() -> LFSpace:
    """Closed solid tetrahedron as a 3-dimensional complex of 15 cells.

    Cells are the nonempty subsets of four vertices; ``s`` is a face of
    ``t`` iff ``s`` is a subset of ``t``.  Named cells along one maximal
    chain: ``p`` (vertex 0), ``e`` (edge 01), ``f`` (triangle 012),
    ``v`` (the solid).
    """
    verts = range(4)
    simplices = [frozenset(v for v in verts if mask >> v & 1) for mask in range(1, 16)]
    simplices.sort(key=lambda s: (len(s), sorted(s)))
    sn = [[j for j, t in enumerate(simplices) if s <= t] for s in simplices]
    special = {frozenset({0}): "p", frozenset({0, 1}): "e", frozenset({0, 1, 2}): "f", frozenset(verts): "v"}
    names = [special.get(s, "".join(str(v) for v in sorted(s))) for s in simplices]
    return LFSpace(sn, names=names)


def odd_even_space(width: int, height: int) -> LFSpace:
    """Points of a ``height x width`` patch of Z^2; odd ``x + y`` open.

    A closed point's neighborhood holds itself and its 4-neighbours in the
    patch, an open point's neighborhood is the point alone.  Elements are
    numbered row-major and named ``(row, col)``.
    """
    names = [(r, c) for r in range(height) for c in range(width)]
    sn = []
    for r, c in names:
        s = {r * width + c}
        if (r + c) % 2 == 0:
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < height and 0 <= cc < width:
                    s.add(rr * width + cc)
        sn.append(s)
    return LFSpace(sn, names=names)


def two_v() -> np.ndarray:
    """The two-V grayscale image (black 0, white 255), shape (8, 8)."""
    return np.array([[0 if ch == "B" else 255 for ch in row] for row in TWO_V_ROWS], dtype=np.int64)
