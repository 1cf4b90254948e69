"""``nullfront`` command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numeric error.
Output files are written through a temp file and renamed only on success.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .adsdist import check_conditions, locus_point
from .errors import (
    DenominatorNearZeroError,
    DomainError,
    ExprSyntaxError,
    InvalidInitialFrameError,
    NotOnAdS3Error,
    NotUnitSpeedError,
    SingularFrameMatrixError,
    StepError,
    UnknownCatalogEntryError,
)
from .export import (
    curvature_to_csv,
    frenet_to_csv,
    mesh_to_csv,
    mesh_to_obj,
    reports_to_json,
    states_to_csv,
    to_json,
)
from .exprdsl import CATALOG_NAMES, catalog, catalog_interval, eval_constant, load_spec_file
from .framed import (
    CurvatureQuad,
    FramedCurve,
    FrameState,
    align_congruence,
    frame_equation_residuals,
    frame_state,
    integrate_frame,
    validate,
)
from .geom4 import basis, triple_product
from .nullcone import DENOM_TOL, SIGMA_TOL, FrontSheet, find_singularities, front_point, sample_mesh
from .regular import frenet_at
from .util import atomic_write

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

GRAMMAR = (
    "nullfront <subcommand> [--curve NAME | --spec FILE.json | --samples FILE.csv] "
    "[--sheet plus|minus] [--range A B] [--s-range A B] [--l-range A B] [--grid NS NL] "
    "[--tol X] [--tol-denom X] [--projection drop1|matrix FILE] [--format obj|csv|json] [--out PATH]"
)

SUBCOMMANDS = ("catalog", "verify", "frame", "frenet", "front", "singular", "integrate", "congruence", "distance", "selftest")


class UsageError(Exception):
    pass


class ValidationFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _number(text: str) -> float:
    try:
        return float(eval_constant(text))
    except (ExprSyntaxError, DomainError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or constant expression: {text!r} ({exc})") from None


def _positive(text: str) -> float:
    x = _number(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nullfront", usage=GRAMMAR, description="Nullcone fronts of framed curves in AdS^3.")
    p.add_argument("--version", action="version", version=f"nullfront {__version__}")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--curve", metavar="NAME", help="built-in catalog entry")
    src.add_argument("--spec", metavar="FILE.json", help="curve-spec JSON document")
    src.add_argument("--samples", metavar="FILE.csv", help="sampled framed curve")
    p.add_argument("--sheet", default="plus", choices=["plus", "minus"])
    p.add_argument("--range", nargs=2, type=_number, metavar=("A", "B"), help="s-interval")
    p.add_argument("--s-range", nargs=2, type=_number, metavar=("A", "B"), help="s-interval of a mesh")
    p.add_argument("--l-range", nargs=2, type=_number, metavar=("A", "B"), help="lambda-interval of a mesh")
    p.add_argument("--grid", nargs="+", type=int, metavar="N", help="NS [NL]")
    p.add_argument("--tol", type=_positive, help="zero tolerance")
    p.add_argument("--tol-denom", type=_positive, help="tolerance on |m +/- n|")
    p.add_argument("--projection", nargs="+", metavar="drop1|matrix FILE")
    p.add_argument("--format", choices=["obj", "csv", "json", "text"])
    p.add_argument("--out", metavar="PATH")
    # subcommand-specific extras
    p.add_argument("--at", type=_number, metavar="S0", help="parameter value (distance, congruence)")
    p.add_argument("--v0", nargs=4, type=_number, metavar="X", help="point of AdS^3 (distance)")
    p.add_argument("--lambda", dest="lam", type=_number, metavar="L", help="v0 = NF(S0, L) (distance)")
    p.add_argument("--other", metavar="SOURCE", help="second curve: catalog name, .json spec or .csv samples")
    p.add_argument("--quad", metavar="FILE.json", help="curvature expressions (integrate)")
    p.add_argument("--step", type=_positive, default=1e-3, help="RK4 step (integrate)")
    p.add_argument("--no-reorth", action="store_true", help="disable reorthonormalization (integrate)")
    return p


# sources -------------------------------------------------------------------------


def _load_source(curve=None, spec=None, samples=None, interval=None, need_frame=True):
    """(FramedCurve or None, gamma CurveSpec or None)."""
    if curve is not None:
        if curve not in CATALOG_NAMES:
            raise UsageError(f"unknown catalog entry {curve!r}; choose from {', '.join(CATALOG_NAMES)}")
        fc = FramedCurve.from_catalog(curve, interval)
        return fc, fc.specs[0]
    if spec is not None:
        name, gamma, v1, v2, iv = load_spec_file(spec)
        if v1 is None or v2 is None:
            if need_frame:
                raise UsageError(f"{spec}: v1 and v2 are required for this subcommand")
            return None, gamma
        return FramedCurve.from_specs(gamma, v1, v2, interval or iv, name=name), gamma
    if samples is not None:
        return FramedCurve.from_csv(samples), None
    raise UsageError("a curve source is required: --curve, --spec or --samples")


def _source(args, need_frame=True):
    return _load_source(args.curve, args.spec, args.samples, _range(args), need_frame)


def _other(text, interval=None):
    if text in CATALOG_NAMES:
        return _load_source(curve=text, interval=interval)[0]
    if text.endswith(".csv"):
        return _load_source(samples=text)[0]
    if text.endswith(".json"):
        return _load_source(spec=text, interval=interval)[0]
    raise UsageError(f"--other must be a catalog name, a .json spec or a .csv sample file: {text!r}")


def _range(args):
    if args.range is None:
        return None
    a, b = args.range
    if not a < b:
        raise UsageError(f"empty range [{a}, {b}]")
    return (a, b)


def _grid(args, default_ns, default_nl=None):
    g = args.grid or []
    if len(g) > 2:
        raise UsageError("--grid takes NS and optionally NL")
    ns = g[0] if g else default_ns
    nl = g[1] if len(g) > 1 else default_nl
    if ns < 2 or (nl is not None and nl < 2):
        raise UsageError("grid sizes must be >= 2")
    return ns, nl


def _projection(args):
    proj = args.projection
    if not proj or proj == ["drop1"]:
        return "drop1"
    if proj[0] == "matrix" and len(proj) == 2:
        P = np.loadtxt(proj[1], delimiter=None if not proj[1].endswith(".csv") else ",", ndmin=2)
        if P.shape != (3, 4):
            raise UsageError(f"projection matrix must be 3x4, got {P.shape}")
        return P
    raise UsageError("--projection takes 'drop1' or 'matrix FILE'")


def _emit(args, text: str):
    if args.out:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _tol(args, default):
    return args.tol if args.tol is not None else default


def _tol_denom(args):
    return args.tol_denom if args.tol_denom is not None else DENOM_TOL


# subcommands ---------------------------------------------------------------------


def cmd_catalog(args):
    names = [args.curve] if args.curve else list(CATALOG_NAMES)
    if args.curve and args.curve not in CATALOG_NAMES:
        raise UsageError(f"unknown catalog entry {args.curve!r}")
    if args.format == "json" or args.curve:
        doc = {}
        for name in names:
            g, v1, v2 = catalog(name)
            doc[name] = {
                "interval": list(catalog_interval(name)),
                "gamma": g.source_text(),
                "v1": v1.source_text(),
                "v2": v2.source_text(),
            }
        _emit(args, to_json(doc))
    else:
        lines = [f"{n}\t[{catalog_interval(n)[0]!r}, {catalog_interval(n)[1]!r}]" for n in names]
        _emit(args, "\n".join(lines) + "\n")


def cmd_verify(args):
    fc, _ = _source(args)
    ns, _ = _grid(args, 200)
    rep = validate(fc, grid=ns, tol=_tol(args, 1e-7))
    s = fc.grid(ns)
    eqs = frame_equation_residuals(fc, s)
    doc = rep.to_dict()
    doc["frame_equations"] = {k: float(v) for k, v in eqs.items()}
    if args.out:
        atomic_write(args.out, to_json(doc))
    lines = [f"{fc.name}: epsilon {fc.epsilon:+d} ({fc.ordering}), {rep.grid} points, tol {rep.tol:g}"]
    for key, val in rep.residuals.items():
        lines.append(f"  {key:<12s} {val:.3e}")
    for key, val in eqs.items():
        lines.append(f"  eq {key:<9s} {val:.3e}")
    lines.append("PASS" if rep.passed else f"FAIL: {', '.join(rep.failures) or 'epsilon changes sign'}")
    sys.stdout.write("\n".join(lines) + "\n")
    if not rep.passed:
        raise ValidationFailure("framed-curve invariants violated")


def cmd_frame(args):
    fc, _ = _source(args)
    ns, _ = _grid(args, 101)
    a, b = _range(args) or fc.interval
    _emit(args, curvature_to_csv(CurvatureQuad.from_framed(fc), np.linspace(a, b, ns)))


def cmd_frenet(args):
    _, gamma = _source(args, need_frame=False)
    if gamma is None:
        raise UsageError("frenet needs a closed-form curve (--curve or --spec)")
    ns, _ = _grid(args, 101)
    if args.curve:
        a, b = _range(args) or catalog_interval(args.curve)
    else:
        a, b = _range(args) or load_spec_file(args.spec)[4]
    tol = _tol(args, 1e-8)
    _emit(args, frenet_to_csv(frenet_at(gamma, s, tol) for s in np.linspace(a, b, ns)))


def cmd_front(args):
    fc, _ = _source(args)
    ns, nl = _grid(args, 64, 16)
    s_range = tuple(args.s_range) if args.s_range else (_range(args) or fc.interval)
    l_range = tuple(args.l_range) if args.l_range else (-1.0, 1.0)
    if not (s_range[0] < s_range[1] and l_range[0] < l_range[1]):
        raise UsageError("ranges must be non-empty")
    mesh = sample_mesh(
        fc,
        FrontSheet.parse(args.sheet),
        s_range,
        l_range,
        ns,
        nl,
        projection=_projection(args),
        tol=_tol(args, SIGMA_TOL),
        tol_denom=_tol_denom(args),
    )
    fmt = args.format or "obj"
    if fmt == "obj":
        _emit(args, mesh_to_obj(mesh))
    elif fmt == "csv":
        _emit(args, mesh_to_csv(mesh))
    else:
        raise UsageError("front supports --format obj or csv")


def cmd_singular(args):
    fc, _ = _source(args)
    ns, _ = _grid(args, 256)
    if ns < 16:
        raise UsageError("singular needs --grid >= 16")
    scan = find_singularities(
        fc, FrontSheet.parse(args.sheet), _range(args) or fc.interval, ns, _tol(args, SIGMA_TOL), _tol_denom(args)
    )
    if scan.skipped:
        # an unclassifiable root would leave the report incomplete
        raise scan.skipped[0]["exception"]
    _emit(args, reports_to_json(scan.points))


def _default_frame(s0, eps) -> FrameState:
    e1, e2, e3 = basis(1), basis(2), basis(3)
    v1, v2 = (e3, e2) if eps == 1 else (e2, e3)
    return FrameState(s0, e1, v1, v2, triple_product(e1, v1, v2))


def cmd_integrate(args):
    if args.quad:
        doc = json.loads(Path(args.quad).read_text())
        cq = CurvatureQuad.from_json(args.quad)
        eps = cq.epsilon or 1
        a, b = _range(args) or (0.0, 1.0)
        init = doc.get("initial")
        if init:
            g, v1, v2 = (np.array([_number(str(x)) for x in init[k]]) for k in ("gamma", "v1", "v2"))
            frame = FrameState(a, g, v1, v2, triple_product(g, v1, v2))
        else:
            frame = _default_frame(a, eps)
    elif args.curve or args.spec or args.samples:
        fc, _ = _source(args)
        cq = CurvatureQuad.from_framed(fc)
        eps = fc.epsilon
        a, b = _range(args) or fc.interval
        frame = frame_state(fc, a)
    else:
        raise UsageError("integrate needs --quad FILE.json or a curve source")
    states = integrate_frame(cq, frame, eps, b, step=args.step, reorthonormalize=not args.no_reorth)
    _emit(args, states_to_csv(states))


def cmd_congruence(args):
    fc1, _ = _source(args)
    if not args.other:
        raise UsageError("congruence needs --other SOURCE")
    fc2 = _other(args.other, _range(args))
    s0 = args.at if args.at is not None else 0.5 * (fc1.interval[0] + fc1.interval[1])
    ns, _ = _grid(args, 201)
    iso, resid = align_congruence(fc1, fc2, s0, grid=ns)
    tol = _tol(args, 1e-6)
    doc = {
        "s0": s0,
        "matrix": iso.matrix.tolist(),
        "isometry_defect": iso.defect(),
        "residual": resid,
        "congruent": bool(resid <= tol and iso.is_isometry()),
    }
    _emit(args, to_json(doc))
    if not doc["congruent"]:
        raise ValidationFailure(f"curves are not congruent (residual {resid:.3e})")


def cmd_distance(args):
    fc, _ = _source(args)
    if args.at is None:
        raise UsageError("distance needs --at S0")
    sheet = FrontSheet.parse(args.sheet)
    if args.v0 is not None:
        v0 = np.array(args.v0)
    elif args.lam is not None:
        v0 = front_point(fc, args.at, args.lam, sheet)
    else:
        v0 = locus_point(fc, args.at, sheet, _tol_denom(args))
    rep = check_conditions(fc, args.at, v0, _tol(args, 1e-7), _tol_denom(args))
    _emit(args, to_json(rep.to_dict()))


def cmd_selftest(args):
    from .acceptance import run_all

    results = run_all()
    text = "\n".join(r.line() for r in results) + "\n"
    passed = sum(r.passed for r in results)
    text += f"{passed}/{len(results)} criteria passed\n"
    _emit(args, text)
    if passed != len(results):
        raise ValidationFailure(f"{len(results) - passed} criteria failed")


COMMANDS = {
    "catalog": cmd_catalog,
    "verify": cmd_verify,
    "frame": cmd_frame,
    "frenet": cmd_frenet,
    "front": cmd_front,
    "singular": cmd_singular,
    "integrate": cmd_integrate,
    "congruence": cmd_congruence,
    "distance": cmd_distance,
    "selftest": cmd_selftest,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        COMMANDS[args.subcommand](args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"usage: {GRAMMAR}\nerror: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationFailure as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NotUnitSpeedError, NotOnAdS3Error, InvalidInitialFrameError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DomainError, DenominatorNearZeroError, StepError, SingularFrameMatrixError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UnknownCatalogEntryError, ExprSyntaxError, OSError, ValueError, KeyError) as exc:
        print(f"usage: {GRAMMAR}\nerror: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
