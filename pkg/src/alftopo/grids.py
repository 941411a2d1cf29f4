"""Virtual grids on standard arrays: hexagonal 2D and 14-adjacent 3D.

Hexagonal grid
--------------
Pixels are addressed ``(x, y)``; the label array is indexed ``[y, x]``.  The
six neighbours of ``(x, y)`` are the four axis neighbours plus one diagonal
pair, ``(x-1, y-1)`` / ``(x+1, y+1)`` by default (the upper-left corner of
each pixel is cut by a slanted edge) or ``(x+1, y-1)`` / ``(x-1, y+1)``
when ``mirror`` is set.

Each pixel owns five virtual cells, packed into the low bits of its word:

====  ====  ==============================================
bit   cell  incident pixels
====  ====  ==============================================
0     V0    p, p+d, (x+dx, y)
1     V1    p, p+d, (x, y+dy)
2     E0    p, (x-1, y)
3     E1    p, (x, y-1)
4     E2    p, p+d        (the slanted edge)
====  ====  ==============================================

where ``d = (dx, dy)`` is the diagonal offset pointing upwards.  Every
hexagon edge and vertex of the tiling is owned by exactly one pixel; cells
whose other pixels fall outside the array keep only their in-range
incidences.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .space import LFSpace, dimensions, verify_axioms

Point2 = tuple[int, int]
Point3 = tuple[int, int, int]

HEX_TYPES = ("P", "E0", "E1", "E2", "V0", "V1")
BIT = {"V0": 0, "V1": 1, "E0": 2, "E1": 3, "E2": 4}
DEFAULT_MAX_PIXELS = 250_000

BCC14_OFFSETS: tuple[Point3, ...] = tuple(
    [(dx, dy, dz) for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))]
    + [(dx, dy, dz) for dx in (-1, 1) for dy in (-1, 1) for dz in (-1, 1)]
)


@dataclass
class HexGrid:
    labels: np.ndarray
    mirror: bool = False
    bits: np.ndarray | None = field(default=None)

    def __post_init__(self):
        self.labels = np.asarray(self.labels)
        if self.labels.ndim != 2 or 0 in self.labels.shape:
            raise ValueError("a hex grid needs a non-empty 2D label array")
        if self.bits is not None:
            self.bits = np.asarray(self.bits, dtype=np.int64)
            if self.bits.shape != self.labels.shape:
                raise ValueError("virtual-cell words must match the pixel array")
            if ((self.bits < 0) | (self.bits > 0b11111)).any():
                raise ValueError("virtual-cell words use bits 0..4 only")

    @classmethod
    def blank(cls, width: int, height: int, mirror: bool = False) -> "HexGrid":
        return cls(np.zeros((height, width), dtype=np.int64), mirror=mirror)

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def diagonal(self) -> Point2:
        return (1, -1) if self.mirror else (-1, -1)

    def contains(self, p: Sequence[int]) -> bool:
        return 0 <= p[0] < self.width and 0 <= p[1] < self.height

    def cell_pixels(self, p: Point2, kind: str) -> tuple[Point2, ...]:
        """In-range pixels incident to virtual cell ``kind`` of pixel ``p``."""
        x, y = p
        dx, dy = self.diagonal
        if kind == "P":
            cand = [p]
        elif kind == "E0":
            cand = [p, (x - 1, y)]
        elif kind == "E1":
            cand = [p, (x, y - 1)]
        elif kind == "E2":
            cand = [p, (x + dx, y + dy)]
        elif kind == "V0":
            cand = [p, (x + dx, y + dy), (x + dx, y)]
        elif kind == "V1":
            cand = [p, (x + dx, y + dy), (x, y + dy)]
        else:
            raise ValueError(f"unknown cell type {kind!r}")
        return tuple(q for q in cand if self.contains(q))

    def cell_geometry(self, p: Point2, kind: str) -> frozenset[Point2]:
        """All pixels, in range or not, whose hexagons meet at the cell."""
        x, y = p
        dx, dy = self.diagonal
        return frozenset({
            "P": [p],
            "E0": [p, (x - 1, y)],
            "E1": [p, (x, y - 1)],
            "E2": [p, (x + dx, y + dy)],
            "V0": [p, (x + dx, y + dy), (x + dx, y)],
            "V1": [p, (x + dx, y + dy), (x, y + dy)],
        }[kind])

    def cell_pixels(self, p: Point2, kind: str) -> tuple[Point2, ...]:
        """In-range pixels incident to virtual cell ``kind`` of pixel ``p``."""
        if kind not in HEX_TYPES:
            raise ValueError(f"unknown cell type {kind!r}")
        return tuple(sorted(q for q in self.cell_geometry(p, kind) if self.contains(q)))

    def edge_owner(self, a: Point2, b: Point2) -> tuple[Point2, str]:
        """The pixel owning the edge between adjacent pixels ``a`` and ``b``."""
        lo, hi = sorted((a, b), key=lambda q: (q[1], q[0]))
        delta = (lo[0] - hi[0], lo[1] - hi[1])
        if delta == (-1, 0):
            return hi, "E0"
        if delta == (0, -1):
            return hi, "E1"
        if delta == self.diagonal:
            return hi, "E2"
        raise ValueError(f"{a} and {b} are not 6-adjacent")


def hex_neighbors(p: Sequence[int], grid: HexGrid) -> frozenset[Point2]:
    p = (int(p[0]), int(p[1]))
    if not grid.contains(p):
        raise IndexError(f"pixel {p} outside {grid.width}x{grid.height} grid")
    dx, dy = grid.diagonal
    x, y = p
    cand = [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1), (x + dx, y + dy), (x - dx, y - dy)]
    return frozenset(q for q in cand if grid.contains(q))


def hex_to_lf_space(grid: HexGrid, max_pixels: int = DEFAULT_MAX_PIXELS) -> LFSpace:
    """The hexagonal complex of ``grid`` with elements named ``((x, y), type)``.

    Element ids: ``6 * (y * width + x) + HEX_TYPES.index(type)``.
    """
    if grid.width * grid.height > max_pixels:
        raise ValueError(f"grid has {grid.width * grid.height} pixels, above the bound {max_pixels}")
    w = grid.width

    def eid(p: Point2, kind: str) -> int:
        return 6 * (p[1] * w + p[0]) + HEX_TYPES.index(kind)

    names = []
    sn = []
    for y in range(grid.height):
        for x in range(w):
            p = (x, y)
            for kind in HEX_TYPES:
                names.append((p, kind))
                s = {eid(p, kind)} | {eid(q, "P") for q in grid.cell_pixels(p, kind)}
                if kind in ("V0", "V1"):
                    corners = sorted(grid.cell_geometry(p, kind))
                    for i, a in enumerate(corners):
                        for b in corners[i + 1:]:
                            q, k = grid.edge_owner(a, b)
                            if grid.contains(q):
                                s.add(eid(q, k))
                sn.append(s)
    return LFSpace(sn, names=names)


def hex_membership(grid: HexGrid, mask: np.ndarray) -> np.ndarray:
    """Virtual-cell words for a binary pixel mask (indexed ``[y, x]``).

    A virtual cell joins the mask when all its in-range incident pixels are
    in it.  The complement uses the same rule, so both sides get the
    6-adjacency.
    """
    mask = np.asarray(mask, dtype=bool)
    words = np.zeros(mask.shape, dtype=np.int64)
    for y in range(grid.height):
        for x in range(grid.width):
            for kind, bit in BIT.items():
                pix = grid.cell_pixels((x, y), kind)
                if all(mask[q[1], q[0]] for q in pix):
                    words[y, x] |= 1 << bit
    return words


def hex_components(grid: HexGrid, mask: np.ndarray) -> list[frozenset[Point2]]:
    """Components of the pixels in ``mask`` under the 6-adjacency."""
    mask = np.asarray(mask, dtype=bool)
    seen: set[Point2] = set()
    out = []
    for y in range(grid.height):
        for x in range(grid.width):
            if not mask[y, x] or (x, y) in seen:
                continue
            comp = {(x, y)}
            seen.add((x, y))
            queue = deque([(x, y)])
            while queue:
                p = queue.popleft()
                for q in hex_neighbors(p, grid):
                    if mask[q[1], q[0]] and q not in seen:
                        seen.add(q)
                        comp.add(q)
                        queue.append(q)
            out.append(frozenset(comp))
    return out


class HexIncidence:
    """Pixel components through the derived hexagonal cell space.

    Precomputes, for every element of ``hex_to_lf_space(grid)``, its
    incident pixels as a bitmask so that many masks can be evaluated
    quickly.
    """

    def __init__(self, grid: HexGrid):
        self.grid = grid
        self.space = hex_to_lf_space(grid)
        w = grid.width
        self.pixel_bits = []
        for p, kind in self.space.names:
            bits = 0
            for q in grid.cell_pixels(p, kind):
                bits |= 1 << (q[1] * w + q[0])
            self.pixel_bits.append(bits)

    def components(self, mask_bits: int) -> list[frozenset[Point2]]:
        members = [e for e, pb in enumerate(self.pixel_bits) if pb & mask_bits == pb]
        inset = set(members)
        seen: set[int] = set()
        w = self.grid.width
        out = []
        for e in members:
            if e in seen or self.space.names[e][1] != "P":
                continue
            seen.add(e)
            queue = deque([e])
            pixels = []
            while queue:
                x = queue.popleft()
                if self.space.names[x][1] == "P":
                    pixels.append(self.space.names[x][0])
                for y in self.space.incidence[x]:
                    if y in inset and y not in seen:
                        seen.add(y)
                        queue.append(y)
            out.append(frozenset(pixels))
        return out

    @staticmethod
    def mask_bits(mask: np.ndarray) -> int:
        flat = np.asarray(mask, dtype=bool).reshape(-1)
        return sum(1 << i for i, v in enumerate(flat) if v)


def hcc_check(space: LFSpace, principal_dim: int) -> bool:
    """Principal cells sharing any incident cell also share an incident
    ``(principal_dim - 1)``-cell."""
    if not verify_axioms(space).passed:
        raise ValueError("hcc_check needs a space satisfying the axioms")
    dims = dimensions(space)
    principal = [e for e in range(space.element_count) if dims[e] == principal_dim]
    touching: dict[int, set[int]] = {e: set() for e in principal}
    facets: dict[int, set[int]] = {e: set() for e in principal}
    for e in principal:
        for x in (*space.incidence[e], e):
            touching[e].add(x)
            if dims[x] == principal_dim - 1:
                facets[e].add(x)
    for i, v in enumerate(principal):
        for w in principal[i + 1:]:
            if touching[v] & touching[w] and not facets[v] & facets[w]:
                return False
    return True


@dataclass
class Bcc14Grid:
    """Voxel mask indexed ``[z, y, x]``."""

    mask: np.ndarray

    def __post_init__(self):
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.mask.ndim != 3 or 0 in self.mask.shape:
            raise ValueError("a 3D grid needs a non-empty 3D mask")


def bcc14_neighbors(p: Sequence[int], grid: Bcc14Grid | None = None) -> frozenset[Point3]:
    p = tuple(int(v) for v in p)
    out = {tuple(a + d for a, d in zip(p, off)) for off in BCC14_OFFSETS}
    if grid is not None:
        shape = grid.mask.shape
        out = {q for q in out if all(0 <= v < s for v, s in zip(q, shape))}
    return frozenset(out)


def bcc14_components(grid: Bcc14Grid, of_foreground: bool = True) -> list[frozenset[Point3]]:
    from .adjacency import mask_components

    mask = grid.mask if of_foreground else ~grid.mask
    return mask_components(mask, BCC14_OFFSETS)
