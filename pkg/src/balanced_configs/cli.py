"""Command-line interface.

Subcommands: generate, verify, classify, symmetry, lemmas, render.  Machine
reports are JSON on stdout with a stable shape {tool_version, params,
verdict, details}; a short human-readable summary goes to stderr.  Exit
codes: 0 success or positive verdict, 1 negative verdict (balance failure,
Unknown class, refuted group-balance), 2 input or usage error, 3 internal
numeric error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .classify import UNKNOWN, classify, is_group_balanced, rotation_symmetries_about
from .configs import FinitePointSet, PatchConfig, PeriodicConfig
from .docio import document_from, parse_config, serialize, to_runtime
from .errors import AmbiguousClassError, InsufficientPatchError, ValidationError
from .generators import (
    RotationTilingFlags,
    RotationTilingParams,
    SubsetFlags,
    TriangleGroupFlags,
    TriangleGroupParams,
    gen_hexagonal,
    gen_hyp_rotation_tiling,
    gen_hyp_triangle_group,
    gen_lattice,
    gen_line,
    gen_sphere,
    gen_triangular,
)
from .inequalities import check_angle_bound_60_90, run_catalog
from .render import RenderStyle, render_svg
from .verify import VerifyParams, verify_hyperbolic, verify_plane, verify_sphere
from .geometry import Tolerance

_SUBSET_NAMES = {"vertices": "vertices", "midpoints": "edge_midpoints", "centers": "face_centers"}
_TG_NAMES = {"p_centers": "p_centers", "q_centers": "q_centers", "r_centers": "r_centers"}
_RT_NAMES = {
    "vertices": "vertices",
    "mid_ab": "mid_ab",
    "mid_ac": "mid_ac",
    "mid_bc": "mid_bc",
}


def _parse_sets(raw, names, flags_cls):
    chosen = {}
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        if token not in names:
            raise ValueError(
                f"unknown set {token!r}; expected one of {', '.join(sorted(names))}"
            )
        chosen[names[token]] = True
    if not chosen:
        raise ValueError("at least one set must be selected")
    return flags_cls(**{f: chosen.get(f, False) for f in flags_cls.__dataclass_fields__})


def _parse_pair_list(raw, what, count):
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != count:
        raise ValueError(f"{what} must have {count} comma-separated values")
    return [float(p) for p in parts]


def _parse_basis(raw):
    rows = raw.split(";")
    if len(rows) != 2:
        raise ValueError("basis must be 'ax,ay;bx,by'")
    return [_parse_pair_list(r, "basis row", 2) for r in rows]


def _write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_document(path):
    if path == "-":
        return parse_config(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}", field="input")


def _emit_report(args, verdict, details):
    report = {
        "tool_version": __version__,
        "params": {
            "max_radius": getattr(args, "max_radius", None),
            "residual_tol": getattr(args, "residual_tol", None),
            "class_tol": getattr(args, "class_tol", None),
        },
        "verdict": verdict,
        "details": details,
    }
    print(json.dumps(report, indent=2, default=_jsonable))


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def _verify_params(args):
    return VerifyParams(
        max_radius=args.max_radius,
        tol=Tolerance(
            class_tol=args.class_tol, residual_tol=args.residual_tol, dedup_tol=1e-9
        ),
    )


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args):
    family = args.family
    meta = {"family": family, "tool_version": __version__}
    if family == "triangular":
        config = gen_triangular(args.side)
    elif family == "lattice":
        flags = _parse_sets(args.sets, _SUBSET_NAMES, SubsetFlags)
        v1, v2 = _parse_basis(args.basis)
        config = gen_lattice(v1, v2, flags)
    elif family == "hexagonal":
        flags = _parse_sets(args.sets, _SUBSET_NAMES, SubsetFlags)
        config = gen_hexagonal(args.side, flags)
    elif family == "line":
        config = gen_line(args.count, args.spacing)
    elif family == "sphere":
        flags = _parse_sets(args.sets, _SUBSET_NAMES, SubsetFlags)
        config = gen_sphere(args.kind, flags)
        meta["kind"] = args.kind
    elif family == "triangle-group":
        flags = _parse_sets(args.sets, _TG_NAMES, TriangleGroupFlags)
        p, q, r = (int(x) for x in _parse_pair_list(args.pqr, "--pqr", 3))
        config = gen_hyp_triangle_group(TriangleGroupParams(p, q, r, args.depth), flags)
        meta["pqr"] = args.pqr
        meta["depth"] = str(args.depth)
    elif family == "rotation-tiling":
        flags = _parse_sets(args.sets, _RT_NAMES, RotationTilingFlags)
        a, b, g = (math.radians(x) for x in _parse_pair_list(args.angles, "--angles", 3))
        config = gen_hyp_rotation_tiling(
            RotationTilingParams(a, b, g, args.order, args.depth), flags
        )
        meta["angles"] = args.angles
        meta["depth"] = str(args.depth)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown family {family!r}")
    _write_text(args.output, serialize(document_from(config, metadata=meta)))
    print(f"generated {family} configuration", file=sys.stderr)
    return 0


def _cmd_verify(args):
    doc = _read_document(args.input)
    config = to_runtime(doc)
    params = _verify_params(args)
    if isinstance(config, FinitePointSet) and config.space == "sphere":
        modes = (
            ("scalar_multiple", "tangent_projection")
            if args.mode == "both"
            else (args.mode,)
        )
        reports = {m: verify_sphere(config, params, mode=m) for m in modes}
        passed = all(r.passed for r in reports.values())
        details = {m: r.summary() for m, r in reports.items()}
        worst = max(r.worst_residual for r in reports.values())
    else:
        if isinstance(config, FinitePointSet) and config.space == "disk":
            config = PatchConfig(config.points, 0.0, labels=config.labels)
        if isinstance(config, PatchConfig):
            # a patch can only certify balance within its own radius; clamp
            # the cutoff to what the patch supports and disclose it
            available = float(config.patch_radius - config.center_dists().min())
            if 0.0 < available < params.max_radius:
                params = VerifyParams(max_radius=available, tol=params.tol)
            report = verify_hyperbolic(config, params)
            if params.max_radius < args.max_radius:
                report.notes.append(
                    f"cutoff clamped to certified radius {params.max_radius:.6g} "
                    f"(requested {args.max_radius:g})"
                )
        else:
            report = verify_plane(config, params)
        passed = report.passed
        details = report.summary()
        worst = report.worst_residual
    verdict = "pass" if passed else "fail"
    _emit_report(args, verdict, details)
    print(
        f"balance {verdict}: worst residual {worst:.3e} "
        f"(cutoff {args.max_radius}, tol {args.residual_tol})",
        file=sys.stderr,
    )
    return 0 if passed else 1


def _cmd_classify(args):
    doc = _read_document(args.input)
    config = to_runtime(doc)
    tol = Tolerance(class_tol=args.class_tol, residual_tol=args.residual_tol, dedup_tol=1e-9)
    result = classify(config, tol=tol)
    details = {
        "tag": result.tag,
        "canonical_params": {k: v for k, v in result.canonical_params.items()},
    }
    _emit_report(args, result.tag, details)
    print(f"classified as {result.tag}", file=sys.stderr)
    return 0 if result.tag != UNKNOWN else 1


def _cmd_symmetry(args):
    doc = _read_document(args.input)
    config = to_runtime(doc)
    tol = Tolerance(class_tol=args.class_tol, residual_tol=args.residual_tol, dedup_tol=1e-9)
    result = is_group_balanced(config, tol=tol)
    witnesses = [
        None if w is None else {"center": list(w.center), "angle": w.angle}
        for w in result.witnesses
    ]
    extra = {}
    if isinstance(config, PeriodicConfig) and result.verdict:
        first = config.cartesian_motif()[0]
        extra["rotations_about_first_point"] = rotation_symmetries_about(
            config, first, tol=tol
        )
    details = {"group_balanced": result.verdict, "witnesses": witnesses, **extra}
    _emit_report(args, "pass" if result.verdict else "fail", details)
    print(
        "group-balanced" if result.verdict else "not group-balanced (no witness found)",
        file=sys.stderr,
    )
    return 0 if result.verdict else 1


def _cmd_lemmas(args):
    results = run_catalog(match_tol=args.match_tol)
    sweep_ok = check_angle_bound_60_90(args.samples)
    all_ok = sweep_ok and all(r.passed for r in results)
    details = {
        "entries": [
            {
                "id": r.id,
                "description": r.description,
                "computed": r.computed,
                "expected": r.expected,
                "matches_expected": r.matches_expected,
                "bound_holds": r.bound_holds,
            }
            for r in results
        ],
        "angle_bound_sweep": {"samples": args.samples, "passed": sweep_ok},
    }
    _emit_report(args, "pass" if all_ok else "fail", details)
    for r in results:
        mark = "ok" if r.passed else "FAIL"
        print(f"  {r.id:<4} {r.computed:+.5f} (expected {r.expected:+.2f}) {mark}", file=sys.stderr)
    print(
        f"angle-bound sweep over {args.samples} samples: {'ok' if sweep_ok else 'FAIL'}",
        file=sys.stderr,
    )
    return 0 if all_ok else 1


def _cmd_render(args):
    doc = _read_document(args.input)
    config = to_runtime(doc)
    window = None
    if args.window:
        x0, x1, y0, y1 = _parse_pair_list(args.window, "--window", 4)
        window = ((x0, x1), (y0, y1))
    style = RenderStyle(window=window, size=args.size, show_boundary=not args.no_boundary)
    _write_text(args.output, render_svg(config, style))
    print("rendered", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_tolerance_flags(sub):
    sub.add_argument("--max-radius", type=float, default=6.0,
                     help="verification cutoff (default 6)")
    sub.add_argument("--residual-tol", type=float, default=1e-9,
                     help="balance residual tolerance (default 1e-9)")
    sub.add_argument("--class-tol", type=float, default=1e-6,
                     help="distance class separation tolerance (default 1e-6)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="balanced-configs",
        description="Construct, verify, classify, and render balanced point configurations.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a configuration document")
    gen.add_argument(
        "--family",
        required=True,
        choices=[
            "triangular", "lattice", "hexagonal", "line",
            "sphere", "triangle-group", "rotation-tiling",
        ],
    )
    gen.add_argument("--side", type=float, default=1.0, help="side length (default 1)")
    gen.add_argument("--basis", default="1,0;0,1", help="lattice basis 'ax,ay;bx,by'")
    gen.add_argument("--sets", default="vertices",
                     help="comma-separated point sets to include")
    gen.add_argument("--count", type=int, default=15, help="line point count (default 15)")
    gen.add_argument("--spacing", type=float, default=1.0, help="line spacing (default 1)")
    gen.add_argument("--kind", default="icosahedron",
                     help="spherical tiling kind (Platonic name or ngon(n))")
    gen.add_argument("--pqr", default="2,3,7", help="triangle group signature 'p,q,r'")
    gen.add_argument("--angles", default="40,40,40",
                     help="rotation tiling angles in degrees 'a,b,g'")
    gen.add_argument("--order", type=int, default=3,
                     help="rotation tiling repeats per vertex (default 3)")
    gen.add_argument("--depth", type=int, default=4, help="hyperbolic growth depth")
    gen.add_argument("-o", "--output", default="-", help="output path (default stdout)")
    gen.set_defaults(func=_cmd_generate)

    ver = sub.add_parser("verify", help="check balancedness of a document")
    ver.add_argument("input", help="configuration document path, or - for stdin")
    ver.add_argument("--mode", default="both",
                     choices=["scalar_multiple", "tangent_projection", "both"],
                     help="spherical residual mode (default both)")
    _add_tolerance_flags(ver)
    ver.set_defaults(func=_cmd_verify)

    cls = sub.add_parser("classify", help="identify the configuration type")
    cls.add_argument("input")
    _add_tolerance_flags(cls)
    cls.set_defaults(func=_cmd_classify)

    sym = sub.add_parser("symmetry", help="check group-balancedness")
    sym.add_argument("input")
    _add_tolerance_flags(sym)
    sym.set_defaults(func=_cmd_symmetry)

    lem = sub.add_parser("lemmas", help="run the numeric inequality catalog")
    lem.add_argument("--samples", type=int, default=256,
                     help="angle-bound sweep sample count (default 256)")
    lem.add_argument("--match-tol", type=float, default=0.005,
                     help="tolerance against printed reference values (default 0.005)")
    _add_tolerance_flags(lem)
    lem.set_defaults(func=_cmd_lemmas)

    ren = sub.add_parser("render", help="render a document as SVG")
    ren.add_argument("input")
    ren.add_argument("--window", default=None, help="'xmin,xmax,ymin,ymax' in geometry units")
    ren.add_argument("--size", type=int, default=480, help="longest SVG side in pixels")
    ren.add_argument("--no-boundary", action="store_true", help="omit the unit circle")
    ren.add_argument("-o", "--output", default="-", help="output path (default stdout)")
    ren.set_defaults(func=_cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, InsufficientPatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AmbiguousClassError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # internal numeric or logic failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":  # pragma: no cover
    console_main()
