"""Membership rules that label the 0- and 1-cells of a 2D image complex.

Cells use combinatorial coordinates ``(row, col)`` on a grid of shape
``(2h-1, 2w-1)``; pixels are the cells with both coordinates even.  Larger
labels are lighter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cartesian import CartesianComplex
from .space import components


@dataclass
class GrayImage2D:
    labels: np.ndarray
    maxval: int | None = None

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.labels.ndim != 2 or 0 in self.labels.shape:
            raise ValueError("a gray image needs a non-empty 2D label array")
        if (self.labels < 0).any():
            raise ValueError("labels must be non-negative")

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]


@dataclass
class CellLabeling:
    complex: CartesianComplex
    labels: np.ndarray

    def pixel_labels(self) -> np.ndarray:
        return self.labels[::2, ::2]

    def values(self) -> list[int]:
        return sorted(int(v) for v in np.unique(self.labels))


def _as_labels(img) -> np.ndarray:
    return img.labels if isinstance(img, GrayImage2D) else GrayImage2D(img).labels


def _spread(px: np.ndarray) -> np.ndarray:
    h, w = px.shape
    out = np.zeros((2 * h - 1, 2 * w - 1), dtype=px.dtype)
    out[::2, ::2] = px
    return out


def max_rule(img) -> CellLabeling:
    """Every lower cell takes the largest label among its incident pixels."""
    px = _as_labels(img)
    out = _spread(px)
    out[::2, 1::2] = np.maximum(px[:, :-1], px[:, 1:])
    out[1::2, ::2] = np.maximum(px[:-1, :], px[1:, :])
    out[1::2, 1::2] = np.maximum.reduce([px[:-1, :-1], px[:-1, 1:], px[1:, :-1], px[1:, 1:]])
    return CellLabeling(CartesianComplex(px.shape), out)


def equnali_vertex(px: np.ndarray, r: int, c: int, padded: np.ndarray | None = None) -> int:
    """Label of the 0-cell whose incident pixels are rows r, r+1 and cols c, c+1."""
    a, b = px[r, c], px[r + 1, c + 1]  # main diagonal
    d, e = px[r, c + 1], px[r + 1, c]  # anti-diagonal
    lightest = max(a, b, d, e)
    main_eq, anti_eq = a == b, d == e
    if main_eq and not anti_eq:
        return int(a)
    if anti_eq and not main_eq:
        return int(d)
    if main_eq and anti_eq and a != d:
        if padded is None:
            padded = np.pad(px, 1, mode="edge")
        # 4x4 window around the vertex; padded index = pixel index + 1
        window = padded[r:r + 4, c:c + 4]
        n_main = int((window == a).sum())
        n_anti = int((window == d).sum())
        if n_main < n_anti:
            return int(a)
        if n_anti < n_main:
            return int(d)
    return int(lightest)


def equnali(img) -> CellLabeling:
    """EquNaLi labels: 1-cells take the lighter pixel; 0-cells prefer the
    equal diagonal pair, then the narrow stripe, then the lightest label."""
    lab = max_rule(img)
    px = lab.pixel_labels()
    padded = np.pad(px, 1, mode="edge")
    h, w = px.shape
    for r in range(h - 1):
        for c in range(w - 1):
            lab.labels[2 * r + 1, 2 * c + 1] = equnali_vertex(px, r, c, padded)
    return lab


def label_components(lab: CellLabeling, value: int) -> list[frozenset[tuple[int, int]]]:
    """Incidence-connected components of the cells carrying ``value``."""
    flat = lab.labels.reshape(-1)
    if not (flat == value).any():
        raise ValueError(f"label {value} does not occur")
    space = lab.complex.lf_space
    mask = [bool(v == value) for v in flat]
    return [frozenset(space.names[e] for e in comp) for comp in components(space, mask)]


def component_counts(lab: CellLabeling) -> dict[int, int]:
    return {v: len(label_components(lab, v)) for v in lab.values()}
