"""Graph-based digital images and their topological analogs.

Adjacency is indexed by squared distance: two points are ``a``-adjacent
when every coordinate differs by at most 1 and the squared Euclidean
distance is at most ``a``.  In 2D index 1 is the 4-adjacency and 2 the
8-adjacency; in 3D indices 1, 2, 3 are the 6-, 18- and 26-adjacencies.

A topological analog of an image assigns every lower-dimensional cell of
the Cartesian complex over the image to T (foreground) or K (background)
so that closure-connectivity reproduces the ``(a, b)`` component structure.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from . import solver
from .cartesian import CartesianComplex, cell_closure
from .space import _components_bits

Point = tuple[int, ...]

FULL_ENUMERATION_LIMIT = 9
EXHAUSTIVE_VERIFY_LIMIT = 12


class DigitalImage:
    """Boolean foreground mask ``tr`` over a box; the background is the rest."""

    def __init__(self, tr):
        tr = np.asarray(tr, dtype=bool)
        if tr.ndim < 1 or 0 in tr.shape:
            raise ValueError("image extents must all be at least 1")
        self.tr = tr
        self.tr.setflags(write=False)

    @classmethod
    def from_points(cls, dims: Sequence[int], points: Iterable[Sequence[int]]) -> "DigitalImage":
        tr = np.zeros(tuple(dims), dtype=bool)
        for p in points:
            tr[tuple(p)] = True
        return cls(tr)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.tr.shape

    @property
    def n(self) -> int:
        return self.tr.ndim

    @property
    def size(self) -> int:
        return self.tr.size

    @property
    def kr(self) -> np.ndarray:
        return ~self.tr

    def points(self, foreground: bool = True) -> list[Point]:
        mask = self.tr if foreground else ~self.tr
        return [tuple(int(x) for x in p) for p in np.argwhere(mask)]

    def __eq__(self, other):
        return isinstance(other, DigitalImage) and self.tr.shape == other.tr.shape and bool(
            np.array_equal(self.tr, other.tr)
        )

    def __repr__(self):
        return f"DigitalImage(dims={self.dims}, foreground={int(self.tr.sum())})"


@dataclass
class TopologicalImage:
    complex: CartesianComplex
    t: np.ndarray

    def principal_mask(self) -> np.ndarray:
        return self.t[tuple(slice(None, None, 2) for _ in range(self.complex.n))]

    def members(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in c) for c in np.argwhere(self.t)]


@dataclass(frozen=True)
class PairDemand:
    """What one same-subset pair of principal cells requires of its IC."""

    pair: tuple[Point, Point]
    subset: str  # "TR" or "KR"
    squared_distance: int
    side: str  # "T" or "K"
    every: bool

    def as_dict(self) -> dict:
        return {
            "pair": [list(self.pair[0]), list(self.pair[1])],
            "subset": self.subset,
            "squared_distance": self.squared_distance,
            "requires": ("all" if self.every else "any") + " in " + self.side,
        }


@dataclass(frozen=True)
class UnsatCertificate:
    cell: tuple[int, ...]
    demands: tuple[PairDemand, ...]
    size: int = 0

    def as_dict(self) -> dict:
        return {"cell": list(self.cell), "demands": [d.as_dict() for d in self.demands]}


@dataclass
class ConsistencyVerdict:
    consistent: bool
    face_convex_consistent: bool
    witness: DigitalImage | None = None
    face_convex_witness: DigitalImage | None = None
    certificate: UnsatCertificate | None = None
    checked: int = 0
    failures: list[int] = field(default_factory=list)
    face_convex_failures: list[int] = field(default_factory=list)


@lru_cache(maxsize=None)
def offsets(n: int, a: int) -> tuple[Point, ...]:
    """Nonzero offsets in {-1, 0, 1}^n with squared length at most ``a``."""
    return tuple(
        off for off in product((-1, 0, 1), repeat=n) if any(off) and sum(x * x for x in off) <= a
    )


def _check_index(n: int, a: int) -> None:
    if not 1 <= a <= n:
        raise ValueError(f"adjacency index {a} outside 1..{n}")


def a_adjacent(p1: Sequence[int], p2: Sequence[int], a: int) -> bool:
    if len(p1) != len(p2):
        raise ValueError("points differ in dimension")
    d = [x - y for x, y in zip(p1, p2)]
    return any(d) and all(abs(x) <= 1 for x in d) and sum(x * x for x in d) <= a


def mask_components(mask: np.ndarray, offs: Sequence[Point]) -> list[frozenset[Point]]:
    """Flood-fill components of a boolean array under a neighbour offset list."""
    shape = mask.shape
    seen = np.zeros(shape, dtype=bool)
    out = []
    for start in np.argwhere(mask):
        start = tuple(int(x) for x in start)
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for off in offs:
                q = tuple(x + d for x, d in zip(p, off))
                if all(0 <= x < s for x, s in zip(q, shape)) and mask[q] and not seen[q]:
                    seen[q] = True
                    comp.append(q)
                    queue.append(q)
        out.append(frozenset(comp))
    return out


def a_components(img: DigitalImage, a: int, of_foreground: bool = True) -> list[frozenset[Point]]:
    _check_index(img.n, a)
    return mask_components(img.tr if of_foreground else ~img.tr, offsets(img.n, a))


def predicted_consistency(n: int, a: int, b: int) -> ConsistencyVerdict:
    """Closed-form verdict for an ``(a, b)`` pair in dimension ``n``.

    In one dimension every intermediate cell sits between a single pair of
    pixels, so no demands can clash and ``(1, 1)`` is consistent.
    """
    _check_index(n, a)
    _check_index(n, b)
    if n == 1:
        return ConsistencyVerdict(consistent=True, face_convex_consistent=True)
    consistent = a != b and (a == n or b == n)
    face_convex = (a == n and b == 1) or (a == 1 and b == n)
    return ConsistencyVerdict(consistent=consistent, face_convex_consistent=face_convex)


def _ic_order(cx: CartesianComplex, c: tuple[int, ...]) -> tuple[int, ...]:
    # intermediate cell first, then its faces in C order
    rest = sorted(cx.index(f) for f in cell_closure(cx, c) if f != c)
    return (cx.index(c), *rest)


def pair_constraints(
    img: DigitalImage, a: int, b: int, face_convex: bool = False
) -> list[solver.Constraint]:
    """One constraint per close pair of principal cells from the same subset."""
    n = img.n
    _check_index(n, a)
    _check_index(n, b)
    cx = CartesianComplex.for_shape(img.dims)
    shape = img.dims
    tr = img.tr
    half = [off for off in offsets(n, n) if off > tuple([0] * n)]
    out = []
    for p in product(*(range(s) for s in shape)):
        for off in half:
            q = tuple(x + d for x, d in zip(p, off))
            if not all(0 <= x < s for x, s in zip(q, shape)):
                continue
            if tr[p] != tr[q]:
                continue
            d2 = sum(x * x for x in off)
            fg = bool(tr[p])
            index = a if fg else b
            near = d2 <= index
            own = fg  # the pair's own side: T for TR, K for KR
            side = own if near else not own
            every = (not near) or face_convex
            c = tuple(x + y for x, y in zip(p, q))  # (2p + 2q) / 2
            cells = (cx.index(c),) if (face_convex and near) else _ic_order(cx, c)
            demand = PairDemand(
                pair=(p, q),
                subset="TR" if fg else "KR",
                squared_distance=d2,
                side="T" if side else "K",
                every=every,
            )
            out.append(solver.Constraint(cells=cells, side=side, every=every, info=demand))
    return out


def _certificate(cx: CartesianComplex, conflict: solver.Conflict) -> UnsatCertificate:
    cell = tuple(int(x) for x in np.unravel_index(conflict.cell, cx.shape))
    demands = (conflict.constraint.info,) + ((conflict.reason.info,) if conflict.reason else ())
    return UnsatCertificate(cell=cell, demands=demands, size=conflict.size)


def build_analog(
    img: DigitalImage, a: int, b: int, face_convex: bool = False
) -> TopologicalImage | UnsatCertificate:
    """Assign every cell to T or K, or explain why no assignment exists.

    Principal cells copy the image; cells no demand touches go to K.
    """
    cx = CartesianComplex.for_shape(img.dims)
    assignment, conflict = solver.solve(pair_constraints(img, a, b, face_convex))
    if assignment is None:
        return _certificate(cx, conflict)
    t = np.zeros(cx.shape, dtype=bool)
    t[tuple(slice(None, None, 2) for _ in range(img.n))] = img.tr
    flat = t.reshape(-1)
    for idx, side in assignment.items():
        flat[idx] = side
    return TopologicalImage(complex=cx, t=t)


def _pairwise_ok(img: DigitalImage, a: int, b: int, t: np.ndarray) -> bool:
    n = img.n
    cx = CartesianComplex.for_shape(img.dims)
    half = [off for off in offsets(n, n) if off > tuple([0] * n)]
    for p in product(*(range(s) for s in img.dims)):
        for off in half:
            q = tuple(x + d for x, d in zip(p, off))
            if not all(0 <= x < s for x, s in zip(q, img.dims)) or img.tr[p] != img.tr[q]:
                continue
            fg = bool(img.tr[p])
            index = a if fg else b
            c = tuple(x + y for x, y in zip(p, q))
            joined = any(t[f] == fg for f in cell_closure(cx, c))
            if joined != (sum(x * x for x in off) <= index):
                return False
    return True


def _exhaustive_ok(img: DigitalImage, a: int, b: int, t: np.ndarray) -> bool:
    cx = CartesianComplex.for_shape(img.dims)
    space = cx.lf_space
    flat_t = t.reshape(-1)
    t_bits = sum(1 << i for i, v in enumerate(flat_t) if v)
    k_bits = space.full & ~t_bits
    for fg, index, side_bits in ((True, a, t_bits), (False, b, k_bits)):
        pts = img.points(fg)
        offs = offsets(img.n, index)
        for r in range(1, len(pts) + 1):
            for sub in combinations(pts, r):
                mask = np.zeros(img.dims, dtype=bool)
                for p in sub:
                    mask[p] = True
                digital = len(mask_components(mask, offs)) == 1
                prin = 0
                for p in sub:
                    prin |= 1 << cx.index(tuple(2 * x for x in p))
                clos = prin
                for e in range(space.element_count):
                    if side_bits >> e & 1 and space.sn_bits[e] & prin:
                        clos |= 1 << e
                topo = len(_components_bits(space, clos)) == 1
                if digital != topo:
                    return False
    return True


def verify_analog(
    img: DigitalImage, a: int, b: int, topo: TopologicalImage, exhaustive: bool = False
) -> bool:
    """Check that ``topo`` reproduces the ``(a, b)`` connectivity of ``img``.

    The default test looks at every close same-subset pair: its closure in
    its own side is connected exactly when the pair is adjacent.  With
    ``exhaustive`` (images of at most 12 points) every subset of TR and KR
    is also compared against the closure connectivity in the cell space.
    """
    if topo.complex.pixel_shape != img.dims:
        raise ValueError("topological image and digital image differ in shape")
    if not np.array_equal(topo.principal_mask(), img.tr):
        raise ValueError("principal cells of the analog do not match the image")
    _check_index(img.n, a)
    _check_index(img.n, b)
    if not _pairwise_ok(img, a, b, topo.t):
        return False
    if exhaustive:
        if img.size > EXHAUSTIVE_VERIFY_LIMIT:
            raise ValueError(f"exhaustive verification is limited to {EXHAUSTIVE_VERIFY_LIMIT} points")
        return _exhaustive_ok(img, a, b, topo.t)
    return True


def hollow_cubes(m: int) -> DigitalImage:
    """Two hollow ``m``-cubes overlapping in a 2x2x2 corner block.

    Each cube loses its ``(m-2)``-cube interior; the result sits in a box
    with a one-voxel empty margin.
    """
    if m < 3:
        raise ValueError("hollow cubes need m >= 3")
    side = 2 * m - 2 + 2
    tr = np.zeros((side,) * 3, dtype=bool)
    lo_a, lo_b = 1, 1 + m - 2
    tr[lo_a:lo_a + m, lo_a:lo_a + m, lo_a:lo_a + m] = True
    tr[lo_b:lo_b + m, lo_b:lo_b + m, lo_b:lo_b + m] = True
    for lo in (lo_a, lo_b):
        tr[lo + 1:lo + m - 1, lo + 1:lo + m - 1, lo + 1:lo + m - 1] = False
    return DigitalImage(tr)


def _is_simple_closed_curve(points: list[Point], b: int) -> bool:
    if len(points) < 3:
        return False
    pts = set(points)
    for p in points:
        deg = sum(1 for q in pts if a_adjacent(p, q, b))
        if deg != 2:
            return False
    mask = {p: True for p in points}
    start = points[0]
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q in pts:
            if q not in seen and a_adjacent(p, q, b):
                seen.add(q)
                queue.append(q)
    return len(seen) == len(mask)


def is_simple_surface(img: DigitalImage, a: int, b: int) -> bool:
    """TR is a-connected and every point's b-neighbours inside TR form a
    simple closed b-curve."""
    _check_index(img.n, a)
    _check_index(img.n, b)
    if len(a_components(img, a)) != 1:
        return False
    offs = offsets(img.n, b)
    for p in img.points():
        ring = []
        for off in offs:
            q = tuple(x + d for x, d in zip(p, off))
            if all(0 <= x < s for x, s in zip(q, img.dims)) and img.tr[q]:
                ring.append(q)
        if not _is_simple_closed_curve(ring, b):
            return False
    return True


def _mask_image(dims: tuple[int, ...], mask: int) -> DigitalImage:
    size = int(np.prod(dims))
    flat = np.array([(mask >> i) & 1 for i in range(size)], dtype=bool)
    return DigitalImage(flat.reshape(dims))


def _witness_key(mask: int, cert: UnsatCertificate | None) -> tuple:
    bits = tuple(i for i in range(mask.bit_length()) if mask >> i & 1)
    return (len(bits), cert.size if cert else 0, bits)


def exhaustive_pair_check(
    n: int,
    dims: Sequence[int],
    a: int,
    b: int,
    max_points: int = FULL_ENUMERATION_LIMIT,
    samples: int | None = None,
    seed: int = 0,
) -> ConsistencyVerdict:
    """Try to build analogs (plain and face-convex) for every foreground mask.

    Masks are ints whose bit ``i`` marks the ``i``-th point in C order.
    Boxes above ``max_points`` need ``samples``, which draws that many masks
    from a seeded generator.  The reported witness is the smallest failing
    mask by (foreground size, size of the clashing demands, point indices).
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != n:
        raise ValueError(f"dims {dims} do not have {n} axes")
    _check_index(n, a)
    _check_index(n, b)
    size = int(np.prod(dims))
    if size <= max_points and samples is None:
        masks: Iterable[int] = range(1 << size)
    elif samples is not None:
        rng = random.Random(seed)
        masks = sorted({rng.getrandbits(size) for _ in range(samples)})
    else:
        raise ValueError(f"{size} points exceed the enumeration bound {max_points}; pass samples")

    failures: list[tuple[tuple, int, UnsatCertificate]] = []
    fc_failures: list[tuple[tuple, int]] = []
    checked = 0
    for mask in masks:
        img = _mask_image(dims, mask)
        checked += 1
        res = build_analog(img, a, b, face_convex=False)
        if isinstance(res, UnsatCertificate):
            failures.append((_witness_key(mask, res), mask, res))
        fres = build_analog(img, a, b, face_convex=True)
        if isinstance(fres, UnsatCertificate):
            fc_failures.append((_witness_key(mask, fres), mask))
    verdict = ConsistencyVerdict(
        consistent=not failures,
        face_convex_consistent=not fc_failures,
        checked=checked,
        failures=sorted(m for _, m, _ in failures),
        face_convex_failures=sorted(m for _, m in fc_failures),
    )
    if failures:
        _, mask, cert = min(failures, key=lambda f: f[0])
        verdict.witness = _mask_image(dims, mask)
        verdict.certificate = cert
    if fc_failures:
        _, mask = min(fc_failures, key=lambda f: f[0])
        verdict.face_convex_witness = _mask_image(dims, mask)
    return verdict


__all__ = [
    "DigitalImage",
    "TopologicalImage",
    "ConsistencyVerdict",
    "UnsatCertificate",
    "PairDemand",
    "offsets",
    "a_adjacent",
    "a_components",
    "mask_components",
    "predicted_consistency",
    "pair_constraints",
    "build_analog",
    "verify_analog",
    "hollow_cubes",
    "is_simple_surface",
    "exhaustive_pair_check",
]
