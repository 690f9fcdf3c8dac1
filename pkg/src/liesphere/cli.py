"""Command line front end.

Reports go to stdout as JSON, diagnostics to stderr.  Exit status is 0
when a verification passes, 1 when it runs but fails, 2 on bad input or a
degenerate configuration (with a JSON error object on stdout).

Tolerance precedence: ``--tol`` flag, then ``APOLLONIUS_TOL``, then the
built-in default.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys
from pathlib import Path

from . import __version__, config
from .apollonius import (
    Configuration,
    apollonius_pairs,
    compute_P,
    line_through_centers,
    p_x_point,
    solve_apollonius,
    verify_first_level,
    verify_inscribed,
    verify_second_level,
)
from .cycles import Sphere
from .errors import LieGeometryError, ValidationError
from .io import (
    ConfigDocument,
    Residual,
    ReportDocument,
    config_to_obj,
    cycle_to_obj,
    dumps,
    load_json,
    parse_config,
)
from .scenarios import (
    DEFAULT_SCENARIO_TOL,
    SCENARIOS,
    ScenarioSpec,
    sample_configuration,
    verify_scenario,
)

log = logging.getLogger("liesphere")

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CliError(LieGeometryError):
    code = "INVALID_INPUT"


class IoFailure(LieGeometryError):
    code = "IO_ERROR"


def _positive(kind):
    def conv(text):
        try:
            val = kind(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"not a valid {kind.__name__}: {text!r}") from exc
        if not val > 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return val

    return conv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liesphere",
        description="Oriented Apollonius problems and concurrency checks in Lie sphere geometry.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="cycles tangent to n+1 given cycles")
    p.add_argument("--input", required=True, help="configuration JSON with n+1 cycles")

    p = sub.add_parser("verify", help="check a concurrency theorem on n+2 cycles")
    p.add_argument("--theorem", required=True, choices=("first-level", "two-step", "inscribed"))
    p.add_argument("--input", required=True, help="configuration JSON with n+2 cycles")
    p.add_argument("--tol", type=_positive(float))
    p.add_argument("--samples", type=_positive(int), default=16,
                   help="tangent hyperplanes sampled per pair (inscribed)")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (inscribed)")

    p = sub.add_parser("scenario", help="build and check a named construction")
    p.add_argument("--name", required=True, choices=SCENARIOS)
    p.add_argument("--params", help="file holding a JSON object of scenario parameters")
    p.add_argument("--dim", type=_positive(int), help="dimension (soddy_line)")
    p.add_argument("--tol", type=_positive(float))
    p.add_argument("--svg", help="also write the scene as SVG (planar scenarios)")
    p.add_argument("--figure", help="also write the scene as a PNG figure (planar scenarios)")

    p = sub.add_parser("random", help="seeded generic configuration")
    p.add_argument("--dim", required=True, type=int)
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--max-attempts", type=_positive(int), default=10_000)

    p = sub.add_parser("render", help="draw a planar configuration as SVG")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--width", type=_positive(int), default=600)
    p.add_argument("--overlay", action="store_true",
                   help="add Apollonius pairs, their center lines and P_X")
    return parser


# -- helpers ------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror}", path=path) from exc


def _write(path: str, text: str | None = None):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror}", path=path) from exc


def _load_doc(path: str) -> ConfigDocument:
    doc = parse_config(_read(path))
    for note in doc.diagnostics:
        log.warning("%s", note)
    return doc


def resolve_tolerances(flag: float | None, default_verify: float, environ=None):
    """(Tolerances record, source) honouring flag > env > default."""
    environ = os.environ if environ is None else environ
    try:
        tols = config.from_env(environ)
    except ValueError as exc:
        raise CliError(f"bad {config.ENV_VAR}: {exc}") from exc
    if flag is not None:
        return tols.replace(verify=float(flag)), "flag"
    if environ.get(config.ENV_VAR):
        return tols, "env"
    return tols.replace(verify=default_verify), "default"


def _tol_record(tols, source) -> dict:
    return {**dataclasses.asdict(tols), "source": source}


def _emit(obj):
    sys.stdout.write(dumps(obj))


def _finish(report: ReportDocument) -> int:
    sys.stdout.write(report.to_json())
    status = EXIT_PASS if report.passed else EXIT_FAIL
    log.info("%s: %s", report.theorem, "pass" if report.passed else "FAIL")
    return status


# -- subcommands --------------------------------------------------------------


def cmd_solve(args) -> int:
    doc = _load_doc(args.input)
    if len(doc.cycles) != doc.dimension + 1:
        raise ValidationError(
            f"solve needs {doc.dimension + 1} cycles in R^{doc.dimension}, "
            f"got {len(doc.cycles)}",
            path="cycles",
        )
    sols = solve_apollonius(doc.cycles, config.from_env())
    _emit({
        "dimension": doc.dimension,
        "count": len(sols),
        "solutions": [cycle_to_obj(s) for s in sols],
        "tool_version": __version__,
    })
    return EXIT_PASS


def _first_level(cfg, tols):
    rep = verify_first_level(cfg, tols.verify, tols)
    tol = tols.verify * rep.scale
    residuals = [Residual(label, d, tol) for label, d in rep.per_line]
    details = {
        "scene_scale": rep.scale,
        "lines": rep.line_count,
        "skipped": [{"line": lab, "reason": why} for lab, why in rep.skipped],
    }
    return rep.point, residuals, details


def _two_step(cfg, tols):
    rep = verify_second_level(cfg, tols.verify, tols)
    residuals = []
    for assign, r in zip(rep.assignments, rep.reports):
        tag = "".join("1" if s else "0" for s in assign.signs)
        residuals.append(Residual(f"assignment {tag}", r.max_distance, tols.verify * r.scale))
    details = {
        "scene_scale": rep.reports[0].scale,
        "assignments": len(rep.assignments),
        "defined_lines": rep.defined_lines,
        "undefined_lines": rep.undefined_lines,
        "distinct_lines": rep.distinct_lines,
        "nominal_line_count": rep.theoretical_lines,
    }
    return rep.reports[0].point, residuals, details


def _inscribed(cfg, tols, samples, seed):
    rep = verify_inscribed(cfg, samples, seed, tols.verify, tols)
    residuals = [Residual("center_offset", rep.center_offset, rep.center_tol * rep.scale)]
    pairs = []
    for pt in rep.per_pair:
        if pt.max_residual is not None:
            residuals.append(Residual(f"pair {pt.index + 1} sampled", pt.max_residual, rep.tol))
        residuals.append(Residual(f"pair {pt.index + 1} span", pt.span_residual, rep.tol))
        pairs.append({"pair": pt.index + 1, "samples": pt.samples, "note": pt.note})
    sphere = rep.sphere
    details = {
        "scene_scale": rep.scale,
        "inscribed": cycle_to_obj(sphere),
        "radius": abs(sphere.signed_radius) if isinstance(sphere, Sphere) else 0.0,
        "samples_per_pair": samples,
        "pairs": pairs,
    }
    return rep.center, residuals, details


def cmd_verify(args) -> int:
    tols, source = resolve_tolerances(args.tol, config.DEFAULT.verify)
    cfg = _load_doc(args.input).to_configuration()
    if args.theorem == "first-level":
        theorem, (point, residuals, details) = "first_level", _first_level(cfg, tols)
        seed = None
    elif args.theorem == "two-step":
        theorem, (point, residuals, details) = "two_step", _two_step(cfg, tols)
        seed = None
    else:
        theorem = "inscribed"
        point, residuals, details = _inscribed(cfg, tols, args.samples, args.seed)
        seed = args.seed
    report = ReportDocument(
        theorem=theorem,
        residuals=residuals,
        tolerances=_tol_record(tols, source),
        tool_version=__version__,
        point=point,
        seed=seed,
        details=details,
    )
    return _finish(report)


def cmd_scenario(args) -> int:
    tols, source = resolve_tolerances(args.tol, DEFAULT_SCENARIO_TOL)
    params = {}
    if args.params:
        params = load_json(_read(args.params))
    spec = ScenarioSpec(args.name, params, args.dim)
    rep = verify_scenario(spec, tols.verify)
    residuals = [Residual(f.name, f.residual, f.tolerance) for f in rep.facts]
    details = {
        "name": rep.name,
        "expected": rep.expected,
        "notes": list(rep.notes),
        "params": spec.params,
        "configuration": config_to_obj(rep.configuration),
    }
    if args.svg or args.figure:
        from .render import render_png, render_svg

        if args.svg:
            _write(args.svg, render_svg(rep.configuration, rep.overlay))
            log.info("wrote %s", args.svg)
        if args.figure:
            render_png(rep.configuration, args.figure, rep.overlay)
            log.info("wrote %s", args.figure)
    seed = params.get("seed") if isinstance(params.get("seed"), int) else None
    report = ReportDocument(
        theorem="scenario",
        residuals=residuals,
        tolerances=_tol_record(tols, source),
        tool_version=__version__,
        point=rep.point,
        seed=seed,
        details=details,
    )
    return _finish(report)


def cmd_random(args) -> int:
    if args.dim < 2:
        raise CliError("random configurations need --dim >= 2")
    cfg, rejected = sample_configuration(args.dim, args.seed, args.max_attempts)
    log.info("accepted after %d rejected draw(s)", rejected)
    _emit(config_to_obj(cfg))
    return EXIT_PASS


def _render_overlay(cfg: Configuration) -> dict:
    px = p_x_point(compute_P(cfg))
    circles, lines = [], []
    for pair in apollonius_pairs(cfg):
        circles += [c for c in (pair.a, pair.a_prime) if isinstance(c, Sphere)]
        try:
            ln = line_through_centers(pair.a, pair.a_prime)
        except LieGeometryError:
            continue
        lines.append((ln.base, tuple(b + d for b, d in zip(ln.base, ln.direction))))
    return {"circles": circles, "lines": lines, "points": [("P_X", tuple(px))]}


def cmd_render(args) -> int:
    from .render import render_svg

    doc = _load_doc(args.input)
    overlay = _render_overlay(doc.to_configuration()) if args.overlay else None
    _write(args.output, render_svg(doc, overlay, args.width))
    log.info("wrote %s", args.output)
    return EXIT_PASS


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "scenario": cmd_scenario,
    "random": cmd_random,
    "render": cmd_render,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="liesphere: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return COMMANDS[args.command](args)
    except LieGeometryError as exc:
        log.error("%s: %s", exc.code, exc.message)
        _emit({"error": exc.to_dict()})
        return EXIT_ERROR
    except ValueError as exc:
        err = CliError(str(exc))
        log.error("%s: %s", err.code, err.message)
        _emit({"error": err.to_dict()})
        return EXIT_ERROR


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:
        # argparse usage errors exit 2, which already matches the input-error status
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
