"""Command-line interface.  Every subcommand prints one JSON report.

Exit status: 0 when the result was computed, 1 for a negative verdict
(axiom failure, unsatisfiable analog, non-surface, non-HCC space), 2 for
bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import adjacency, formats, grids, labeling
from .cartesian import CartesianComplex
from .space import frontier, verify_axioms

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _read(path: str, digests: dict) -> bytes:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    digests[path] = hashlib.sha256(data).hexdigest()
    return data


def _load_image(path: str, digests: dict, thresh: int) -> adjacency.DigitalImage:
    data = _read(path, digests)
    if data.lstrip().startswith(b"VOL"):
        return formats.parse_vol(data)
    return formats.threshold(formats.parse_pgm(data), thresh)


def _dims(text: str) -> tuple[int, ...]:
    """``WxH[xD]`` to an array shape ``(D, H, W)``."""
    try:
        parts = [int(p) for p in text.lower().split("x")]
    except ValueError:
        raise InputError(f"bad extents {text!r}; expected WxH or WxHxD") from None
    if not parts or min(parts) < 1:
        raise InputError(f"bad extents {text!r}")
    return tuple(reversed(parts))


def _summary(comps) -> dict:
    sizes = sorted((len(c) for c in comps), reverse=True)
    return {"count": len(comps), "sizes": sizes}


def _points(points) -> list[list[int]]:
    return sorted(list(p) for p in points)


def cmd_axioms(args, digests):
    space = formats.parse_lfs(_read(args.file, digests))
    report = verify_axioms(space, exhaustive=args.exhaustive)
    return report.as_dict(), OK if report.passed else NEGATIVE


def _subset(text: str, count: int) -> list[int]:
    text = text.strip()
    if text and set(text) <= {"0", "1"} and len(text) == count:
        return [i for i, ch in enumerate(text) if ch == "1"]
    try:
        ids = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise InputError(f"bad subset {text!r}; give comma-separated ids or a 0/1 string") from None
    if any(not 0 <= i < count for i in ids):
        raise InputError(f"subset ids must lie in 0..{count - 1}")
    return ids


def cmd_frontier(args, digests):
    space = formats.parse_lfs(_read(args.file, digests))
    subset = _subset(args.subset, space.element_count)
    return {"subset": subset, "frontier": sorted(frontier(space, subset))}, OK


def cmd_components(args, digests):
    img = _load_image(args.image, digests, args.threshold)
    res = {"dims": list(img.dims), "adjacency": args.adjacency}
    res["foreground"] = _summary(adjacency.a_components(img, args.adjacency))
    if args.background is not None:
        res["background_adjacency"] = args.background
        res["background"] = _summary(adjacency.a_components(img, args.background, of_foreground=False))
    return res, OK


def cmd_analog(args, digests):
    img = _load_image(args.image, digests, args.threshold)
    a, b = args.pair
    out = adjacency.build_analog(img, a, b, face_convex=args.face_convex)
    res = {"dims": list(img.dims), "pair": [a, b], "face_convex": args.face_convex}
    if isinstance(out, adjacency.UnsatCertificate):
        res.update(satisfiable=False, certificate=out.as_dict())
        return res, NEGATIVE
    res.update(satisfiable=True, verified=adjacency.verify_analog(img, a, b, out), t_cells=[list(c) for c in out.members()])
    return res, OK


def cmd_pairs(args, digests):
    n = args.dim
    dims = _dims(args.dims)
    if len(dims) != n:
        raise InputError(f"--dims {args.dims} does not have {n} extents")
    table = []
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            pred = adjacency.predicted_consistency(n, a, b)
            row = {"pair": [a, b], "predicted": pred.consistent, "predicted_face_convex": pred.face_convex_consistent}
            if args.exhaustive:
                v = adjacency.exhaustive_pair_check(n, dims, a, b, samples=args.samples, seed=args.seed)
                row.update(
                    consistent=v.consistent,
                    face_convex_consistent=v.face_convex_consistent,
                    checked=v.checked,
                    failures=len(v.failures),
                    witness=_points(v.witness.points()) if v.witness else None,
                    certificate=v.certificate.as_dict() if v.certificate else None,
                )
            table.append(row)
    return {"dim": n, "dims": list(dims), "seed": args.seed, "table": table}, OK


def cmd_counterexample(args, digests):
    img = adjacency.hollow_cubes(args.m)
    vol = formats.write_vol(img)
    if args.out:
        Path(args.out).write_text(vol)
    res = {
        "m": args.m,
        "dims": list(img.dims),
        "voxels": int(img.tr.sum()),
        "foreground_components_index_1": len(adjacency.a_components(img, 1)),
        "complement_components": {
            str(i): len(adjacency.a_components(img, i, of_foreground=False)) for i in (1, 2, 3)
        },
        "simple_surface_1_2": adjacency.is_simple_surface(img, 1, 2),
        "vol_sha256": hashlib.sha256(vol.encode()).hexdigest(),
    }
    return res, OK


def cmd_surface(args, digests):
    img = formats.parse_vol(_read(args.image, digests))
    a, b = args.pair
    ok = adjacency.is_simple_surface(img, a, b)
    return {"pair": [a, b], "simple_surface": ok}, OK if ok else NEGATIVE


def cmd_label(args, digests):
    img = formats.parse_pgm(_read(args.image, digests))
    rule = labeling.equnali if args.rule == "equnali" else labeling.max_rule
    lab = rule(img)
    if args.dump:
        Path(args.dump).write_text(formats.write_labeling(lab))
    counts = labeling.component_counts(lab)
    return {"rule": args.rule, "components": {str(k): v for k, v in counts.items()}}, OK


def cmd_hexcomp(args, digests):
    img = formats.parse_pgm(_read(args.image, digests))
    bits = formats.parse_hexbits(_read(args.sidecar, digests)) if args.sidecar else None
    grid = grids.HexGrid(img.labels, mirror=args.mirror, bits=bits)
    mask = img.labels > args.threshold
    res = {
        "width": grid.width,
        "height": grid.height,
        "mirror": args.mirror,
        "foreground": _summary(grids.hex_components(grid, mask)),
        "background": _summary(grids.hex_components(grid, ~mask)),
    }
    if bits is not None:
        res["sidecar_matches_mask"] = bool(np.array_equal(bits, grids.hex_membership(grid, mask)))
    if args.write_sidecar:
        Path(args.write_sidecar).write_text(formats.write_hexbits(grids.hex_membership(grid, mask)))
    return res, OK


def cmd_bcccomp(args, digests):
    grid = grids.Bcc14Grid(formats.parse_vol(_read(args.image, digests)).tr)
    res = {
        "dims": list(grid.mask.shape),
        "foreground": _summary(grids.bcc14_components(grid)),
        "background": _summary(grids.bcc14_components(grid, of_foreground=False)),
    }
    return res, OK


def cmd_hcc(args, digests):
    dims = _dims(args.dims)
    if args.kind == "hex":
        if len(dims) != 2:
            raise InputError("hex grids take WxH")
        space, pdim = grids.hex_to_lf_space(grids.HexGrid.blank(dims[1], dims[0])), 2
    else:
        want = 2 if args.kind == "square" else 3
        if len(dims) != want:
            raise InputError(f"{args.kind} complexes take {'WxH' if want == 2 else 'WxHxD'}")
        space, pdim = CartesianComplex.for_shape(dims).lf_space, want
    ok = grids.hcc_check(space, pdim)
    return {"kind": args.kind, "dims": list(dims), "hcc": ok}, OK if ok else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alftopo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("axioms", help="check the four axioms on an LFS file")
    s.add_argument("file")
    s.add_argument("--exhaustive", action="store_true", help="also enumerate all subsets (<= 16 elements)")
    s.set_defaults(func=cmd_axioms)

    s = sub.add_parser("frontier", help="frontier of a subset of an LFS space")
    s.add_argument("file")
    s.add_argument("--subset", required=True, help="comma-separated ids or a 0/1 string")
    s.set_defaults(func=cmd_frontier)

    def image_opts(s):
        s.add_argument("image", help="PGM (P2) or VOL file")
        s.add_argument("--threshold", type=int, default=0, help="PGM labels above this are foreground")

    s = sub.add_parser("components", help="a-components of a binary image")
    image_opts(s)
    s.add_argument("--adjacency", type=int, required=True)
    s.add_argument("--background", type=int, help="also count background components at this index")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("analog", help="build a topological analog or an unsat certificate")
    image_opts(s)
    s.add_argument("--pair", type=int, nargs=2, required=True, metavar=("A", "B"))
    s.add_argument("--face-convex", action="store_true")
    s.set_defaults(func=cmd_analog)

    s = sub.add_parser("pairs", help="consistency table for all (a, b)")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--dims", required=True, help="box extents WxH[xD]")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--samples", type=int, help="random masks instead of full enumeration")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_pairs)

    s = sub.add_parser("counterexample", help="two hollow cubes and their component counts")
    s.add_argument("--m", type=int, default=3)
    s.add_argument("--out", help="write the volume here")
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("surface", help="simple (a, b)-surface test on a VOL file")
    s.add_argument("image")
    s.add_argument("--pair", type=int, nargs=2, required=True, metavar=("A", "B"))
    s.set_defaults(func=cmd_surface)

    s = sub.add_parser("label", help="label cells of a PGM image and count components per label")
    s.add_argument("image")
    s.add_argument("--rule", choices=("equnali", "max"), default="equnali")
    s.add_argument("--dump", help="write the labeled cells here")
    s.set_defaults(func=cmd_label)

    s = sub.add_parser("hexcomp", help="6-adjacency components of a PGM image")
    s.add_argument("image")
    s.add_argument("--threshold", type=int, default=0)
    s.add_argument("--mirror", action="store_true", help="use the (+1,-1)/(-1,+1) diagonal")
    s.add_argument("--sidecar", help="virtual-cell words to check against the mask")
    s.add_argument("--write-sidecar", help="write the derived virtual-cell words here")
    s.set_defaults(func=cmd_hexcomp)

    s = sub.add_parser("bcccomp", help="14-adjacency components of a VOL image")
    s.add_argument("image")
    s.set_defaults(func=cmd_bcccomp)

    s = sub.add_parser("hcc", help="completely-connected test for a grid complex")
    s.add_argument("kind", choices=("hex", "square", "cubic"))
    s.add_argument("dims", help="WxH or WxHxD")
    s.set_defaults(func=cmd_hcc)
    return p


def run(argv: list[str]) -> tuple[dict | None, int]:
    """Parse ``argv`` and run it; returns the report and the exit status."""
    digests: dict[str, str] = {}
    try:
        args = build_parser().parse_args(argv)
        results, status = args.func(args, digests)
    except (InputError, ValueError) as exc:
        print(f"alftopo: error: {exc}", file=sys.stderr)
        return None, INPUT_ERROR
    report = {"command": list(argv), "inputs": digests, "results": results, "exit_status": status}
    return report, status


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, status = run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if report is not None:
        print(json.dumps(report, sort_keys=True, indent=2))
    return status


if __name__ == "__main__":
    sys.exit(main())
