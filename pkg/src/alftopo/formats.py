"""Text formats: PGM (P2), LFS, VOL, hex virtual-cell sidecar, labeled cells.

LFS::

    LFS <element_count>
    <id>: <id> <id> ...      # SN(id), one line per element

VOL::

    VOL <dx> <dy> <dz>
    dz slices of dy rows of dx values in {0, 1}

The volume array is indexed ``[z, y, x]``.

Hex sidecar::

    HEXBITS <width> <height>
    height rows of width integer words (bits 0-1 vertices, 2-4 edges)
"""

from __future__ import annotations

import re

import numpy as np

from .adjacency import DigitalImage
from .labeling import CellLabeling, GrayImage2D
from .space import LFSpace


class ParseError(ValueError):
    """Malformed input file."""


def _text(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not an ASCII text file: {exc}") from None
    return data


def _tokens(text: str) -> list[str]:
    return [tok for line in text.splitlines() for tok in line.split("#", 1)[0].split()]


def _int(tok: str, what: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise ParseError(f"{what}: expected an integer, got {tok!r}")
    return int(tok)


# PGM


def parse_pgm(data: bytes | str) -> GrayImage2D:
    toks = _tokens(_text(data))
    if not toks:
        raise ParseError("empty PGM file")
    if toks[0] != "P2":
        raise ParseError(f"unsupported magic {toks[0]!r}; only ASCII P2 is read")
    if len(toks) < 4:
        raise ParseError("truncated PGM header")
    width, height, maxval = (_int(t, "PGM header") for t in toks[1:4])
    if width < 1 or height < 1:
        raise ParseError(f"PGM extents must be positive, got {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise ParseError(f"PGM maxval {maxval} outside 1..65535")
    body = toks[4:]
    if len(body) < width * height:
        raise ParseError(f"truncated PGM data: {len(body)} of {width * height} values")
    if len(body) > width * height:
        raise ParseError(f"PGM has {len(body) - width * height} trailing values")
    values = np.array([_int(t, "PGM data") for t in body], dtype=np.int64)
    if (values < 0).any() or (values > maxval).any():
        raise ParseError(f"PGM value outside 0..{maxval}")
    return GrayImage2D(values.reshape(height, width), maxval=maxval)


def write_pgm(img: GrayImage2D | np.ndarray) -> str:
    if not isinstance(img, GrayImage2D):
        img = GrayImage2D(img)
    maxval = img.maxval if img.maxval is not None else max(1, int(img.labels.max()))
    lines = ["P2", f"{img.width} {img.height}", str(maxval)]
    lines += [" ".join(str(int(v)) for v in row) for row in img.labels]
    return "\n".join(lines) + "\n"


def threshold(img: GrayImage2D, t: int) -> DigitalImage:
    """Foreground is every pixel whose label exceeds ``t``."""
    return DigitalImage(img.labels > t)


# LFS


def parse_lfs(data: bytes | str) -> LFSpace:
    lines = [ln.split("#", 1)[0].strip() for ln in _text(data).splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty LFS file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "LFS":
        raise ParseError(f"bad LFS header {lines[0]!r}")
    count = _int(head[1], "LFS header")
    if count < 1:
        raise ParseError("an LFS space needs at least one element")
    sn: list[list[int] | None] = [None] * count
    for ln in lines[1:]:
        key, sep, rest = ln.partition(":")
        if not sep:
            raise ParseError(f"bad LFS line {ln!r}; expected '<id>: <ids>'")
        e = _int(key.strip(), "LFS element id")
        if not 0 <= e < count:
            raise ParseError(f"element id {e} outside 0..{count - 1}")
        if sn[e] is not None:
            raise ParseError(f"element {e} listed twice")
        sn[e] = [_int(t, f"SN({e})") for t in rest.split()]
    missing = [e for e, s in enumerate(sn) if s is None]
    if missing:
        raise ParseError(f"no SN line for elements {missing}")
    try:
        return LFSpace(sn)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_lfs(space: LFSpace) -> str:
    lines = [f"LFS {space.element_count}"]
    lines += [f"{e}: " + " ".join(str(x) for x in sorted(s)) for e, s in enumerate(space.sn)]
    return "\n".join(lines) + "\n"


# VOL


def parse_vol(data: bytes | str) -> DigitalImage:
    toks = _tokens(_text(data))
    if len(toks) < 4 or toks[0] != "VOL":
        raise ParseError("bad VOL header; expected 'VOL <dx> <dy> <dz>'")
    dx, dy, dz = (_int(t, "VOL header") for t in toks[1:4])
    if min(dx, dy, dz) < 1:
        raise ParseError(f"VOL extents must be positive, got {dx} {dy} {dz}")
    body = toks[4:]
    if len(body) != dx * dy * dz:
        raise ParseError(f"VOL extent mismatch: header wants {dx * dy * dz} values, found {len(body)}")
    if any(t not in ("0", "1") for t in body):
        raise ParseError("VOL values must be 0 or 1")
    return DigitalImage(np.array([t == "1" for t in body]).reshape(dz, dy, dx))


def write_vol(img: DigitalImage) -> str:
    if img.n != 3:
        raise ValueError("VOL holds 3D images only")
    dz, dy, dx = img.dims
    lines = [f"VOL {dx} {dy} {dz}"]
    for z in range(dz):
        lines += [" ".join("1" if v else "0" for v in row) for row in img.tr[z]]
    return "\n".join(lines) + "\n"


# hex sidecar


def parse_hexbits(data: bytes | str) -> np.ndarray:
    toks = _tokens(_text(data))
    if len(toks) < 3 or toks[0] != "HEXBITS":
        raise ParseError("bad sidecar header; expected 'HEXBITS <width> <height>'")
    w, h = (_int(t, "sidecar header") for t in toks[1:3])
    if w < 1 or h < 1:
        raise ParseError("sidecar extents must be positive")
    body = toks[3:]
    if len(body) != w * h:
        raise ParseError(f"sidecar extent mismatch: want {w * h} words, found {len(body)}")
    words = np.array([_int(t, "sidecar word") for t in body], dtype=np.int64).reshape(h, w)
    if ((words < 0) | (words > 0b11111)).any():
        raise ParseError("sidecar words must fit in 5 bits")
    return words


def write_hexbits(words: np.ndarray) -> str:
    words = np.asarray(words)
    h, w = words.shape
    lines = [f"HEXBITS {w} {h}"] + [" ".join(str(int(v)) for v in row) for row in words]
    return "\n".join(lines) + "\n"


# labeled complex


def write_labeling(lab: CellLabeling) -> str:
    """One ``row col label`` line per cell, combinatorial coordinates."""
    rows, cols = lab.labels.shape
    lines = [f"CELLS {rows} {cols}"]
    lines += [f"{r} {c} {int(lab.labels[r, c])}" for r in range(rows) for c in range(cols)]
    return "\n".join(lines) + "\n"


def parse_labeling(data: bytes | str) -> np.ndarray:
    toks = _tokens(_text(data))
    if len(toks) < 3 or toks[0] != "CELLS":
        raise ParseError("bad header; expected 'CELLS <rows> <cols>'")
    rows, cols = (_int(t, "CELLS header") for t in toks[1:3])
    body = [_int(t, "CELLS line") for t in toks[3:]]
    if len(body) != 3 * rows * cols:
        raise ParseError("cell count does not match the header")
    out = np.full((rows, cols), -1, dtype=np.int64)
    for r, c, v in zip(body[0::3], body[1::3], body[2::3]):
        if not (0 <= r < rows and 0 <= c < cols):
            raise ParseError(f"cell ({r}, {c}) outside {rows}x{cols}")
        out[r, c] = v
    if (out < 0).any():
        raise ParseError("missing or negative cell labels")
    return out
