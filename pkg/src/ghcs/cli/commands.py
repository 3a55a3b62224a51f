"""
ghcs.cli.commands — Subcommand Handlers
=======================================

Each handler takes the parsed argparse namespace and returns an exit code;
exceptions are mapped onto exit codes by ``ghcs.__main__``.

Usage:
    python -m ghcs eval --p 1 --q 1 --a 1 --b 1.5 --x 0.25
    python -m ghcs omega --preset pho-kp --k 1 --eps 0.693147 --zz 1
    python -m ghcs verify --suite bloch --preset ho
    python -m ghcs scan husimi --preset ho --eps 0.693147 --zsq 0..4:0.5 --out csv
    python -m ghcs presets dump registry.json
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from ghcs.auditors.runner import RunReport, build_suite
from ghcs.auditors.unity import moment_check
from ghcs.core.config import BLOCH_TOLERANCE, default_presets_path
from ghcs.core.errors import InvalidParameters
from ghcs.generators.report_files import (
    MOMENT_HEADER,
    OMEGA_HEADER,
    csv_text,
    moment_rows,
    render_svg,
    reports_csv,
    write_text,
)
from ghcs.presets import (
    DEFAULT_B,
    DEFAULT_E0,
    DEFAULT_K,
    PresetRegistry,
    builtin_registry,
    dump_registry,
    load_registry,
)
from ghcs.series.pfq import HypergeometricParams, Kind, eval_pfq
from ghcs.states.families import CSFamily, GKLabel
from ghcs.thermal.density import (
    Route,
    ThermalQuery,
    husimi_q,
    omega_element,
    partition_function,
)

logger = logging.getLogger("ghcs.cli")

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def parse_grid(text: str) -> List[float]:
    """
    ``start..stop:step`` or a single number. Values start + i·step run to the
    lattice point nearest stop (within half a step of it), and that point is
    replaced by stop itself. start is always kept.
    """
    text = text.strip()
    if ".." not in text:
        try:
            return [float(text)]
        except ValueError:
            raise InvalidParameters(f"malformed grid '{text}'") from None
    try:
        span, step_text = text.rsplit(":", 1)
        start_text, stop_text = span.split("..", 1)
        start, stop, step = float(start_text), float(stop_text), float(step_text)
    except ValueError:
        raise InvalidParameters(f"malformed grid '{text}' (expected start..stop:step)") from None
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)) or step <= 0:
        raise InvalidParameters(f"grid '{text}' needs finite bounds and a positive step")
    if stop < start:
        raise InvalidParameters(f"grid '{text}' is empty")
    count = math.floor((stop - start) / step + 0.5)
    values = [start + i * step for i in range(count + 1)]
    if count > 0:
        values[-1] = stop
    return values


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise InvalidParameters(f"'{text}' is not a number") from None


def resolve_registry(args: argparse.Namespace) -> PresetRegistry:
    path = args.presets or default_presets_path()
    if path is not None:
        if any(v is not None for v in (args.k, args.e0, args.b)):
            logger.warning("--k/--e0/--b apply to built-in presets only; ignored for %s", path)
        return load_registry(Path(path))
    return builtin_registry(
        k=DEFAULT_K if args.k is None else args.k,
        e0=DEFAULT_E0 if args.e0 is None else args.e0,
        b=DEFAULT_B if args.b is None else args.b,
    )


def _pair_labels(family: CSFamily, x: complex):
    # z*z' = x realized as z = 1, z' = x (BG/KP) or J = J' = x (GK)
    if family.kind == Kind.GK:
        if x.imag != 0 or x.real < 0:
            raise InvalidParameters("GK presets need a nonnegative real --zz")
        return GKLabel(x.real), GKLabel(x.real)
    return complex(1.0), x


def _labels(family: CSFamily, args: argparse.Namespace):
    if args.zz is not None:
        return _pair_labels(family, parse_complex(args.zz))
    if args.z is None or args.zp is None:
        raise InvalidParameters("give --zz, or both --z and --zp")
    z, zp = parse_complex(args.z), parse_complex(args.zp)
    if family.kind == Kind.GK:
        return GKLabel.from_complex(z), GKLabel.from_complex(zp)
    return z, zp


def _label_value(label) -> complex:
    return label.z if isinstance(label, GKLabel) else complex(label)


def _omega_row(name: str, family: CSFamily, q: ThermalQuery, route: Route) -> list:
    result = omega_element(family, q, route)
    z, zp = _label_value(q.z), _label_value(q.zp)
    return [
        name,
        float(q.eps),
        z.real,
        z.imag,
        zp.real,
        zp.imag,
        result.value.real,
        result.value.imag,
        result.terms_used,
        result.route.value,
    ]


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_text(output, text)
        print(f"wrote {output}")


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    """pFq at x: explicit (p, q, a, b) or the kernel of a preset family."""
    x = parse_complex(args.x)
    if args.preset:
        params = resolve_registry(args).family(args.preset).kernel_params
    else:
        if args.p is None or args.q is None:
            raise InvalidParameters("give --p and --q (with --a/--b), or --preset")
        params = HypergeometricParams(
            args.p, args.q, tuple(args.a or ()), tuple(args.b_list or ())
        )
    result = eval_pfq(params, x.real if x.imag == 0 else x)
    value = complex(result.value)
    shown = f"{value.real:.17g}" if value.imag == 0 else f"{value.real:.17g}{value.imag:+.17g}j"
    converged = "true" if result.converged else "false"
    print(f"value={shown} terms_used={result.terms_used} converged={converged}")
    return EXIT_OK


def cmd_omega(args: argparse.Namespace) -> int:
    """One Ω element as a CSV row."""
    registry = resolve_registry(args)
    family = registry.family(args.preset)
    z, zp = _labels(family, args)
    row = _omega_row(args.preset, family, ThermalQuery(args.eps, z, zp), Route(args.route))
    sys.stdout.write(csv_text(OMEGA_HEADER, [row]))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run a verification suite; exit 1 when any asserted row misses its tolerance."""
    registry = resolve_registry(args)
    runner = build_suite(args.suite, registry, args.preset or None, args.bloch_tolerance)
    reports = runner.execute(parallel=not args.serial)
    outputs = []
    if args.output_dir:
        out_dir = Path(args.output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"verify_{args.suite}.csv"
        write_text(path, reports_csv(reports))
        outputs.append(path)
        moments = [r for r in reports if r.name.startswith("moments:")]
        if moments:
            path = out_dir / "moments.csv"
            write_text(path, csv_text(MOMENT_HEADER, moment_rows(moments)))
            outputs.append(path)
    command = " ".join(["verify", "--suite", args.suite] + [f"--preset {p}" for p in args.preset])
    outcome = RunReport(command, reports, outputs)
    for line in outcome.summary_lines():
        print(line)
    return EXIT_OK if outcome.passed else EXIT_TOLERANCE


def cmd_scan(args: argparse.Namespace) -> int:
    """Grid sweep of omega, husimi or partition; CSV always, SVG on request."""
    registry = resolve_registry(args)
    family = registry.family(args.preset)
    eps_grid = parse_grid(args.eps)
    route = Route(args.route)

    if args.quantity == "omega":
        if args.zz is None:
            raise InvalidParameters("scan omega needs --zz GRID")
        zz_grid = parse_grid(args.zz)
        header = OMEGA_HEADER
        rows = []
        for eps in eps_grid:
            for zz in zz_grid:
                z, zp = _pair_labels(family, complex(zz))
                rows.append(_omega_row(args.preset, family, ThermalQuery(eps, z, zp), route))
        # Plot against z*z' at the first eps, or against eps for a single z*z'
        if len(zz_grid) > 1:
            xs, x_label = zz_grid, "z*z'"
            ys = [row[6] for row in rows[: len(zz_grid)]]
        else:
            xs, x_label = eps_grid, "eps"
            ys = [row[6] for row in rows]
    elif args.quantity == "husimi":
        if args.zsq is None:
            raise InvalidParameters("scan husimi needs --zsq GRID")
        if len(eps_grid) != 1:
            raise InvalidParameters("scan husimi takes a single --eps value")
        zsq_grid = parse_grid(args.zsq)
        eps = eps_grid[0]
        header = ["preset", "eps", "zsq", "value"]
        rows = [
            [args.preset, eps, zsq, husimi_q(family, eps, zsq, normalized=args.normalized)]
            for zsq in zsq_grid
        ]
        xs, ys, x_label = zsq_grid, [row[3] for row in rows], "|z|^2"
    else:
        header = ["preset", "eps", "Z"]
        rows = [[args.preset, eps, partition_function(family.spectrum, eps)] for eps in eps_grid]
        xs, ys, x_label = eps_grid, [row[2] for row in rows], "eps"

    text = csv_text(header, rows)
    out_dir = Path(args.output_dir) if args.output_dir else None
    stem = f"scan_{args.quantity}_{args.preset}"
    if out_dir is None:
        if args.out == "svg":
            raise InvalidParameters("--out svg needs --output-dir")
        sys.stdout.write(text)
        return EXIT_OK
    out_dir.mkdir(parents=True, exist_ok=True)
    _emit(text, out_dir / f"{stem}.csv")
    if args.out == "svg":
        svg = render_svg(xs, ys, f"{args.quantity} ({args.preset})", x_label, args.quantity)
        _emit(svg, out_dir / f"{stem}.svg")
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    """list | validate | dump the registry."""
    if args.action == "validate" and args.file:
        registry = load_registry(Path(args.file))
    else:
        registry = resolve_registry(args)

    if args.action == "list":
        for record in registry:
            family = record.to_family()
            weight = f" weight={record.weight.name}" if record.weight else ""
            print(
                f"{record.name}: {family.kind.value} {family.params.label()} "
                f"spectrum={record.spectrum.variant}{weight}"
            )
        return EXIT_OK

    if args.action == "dump":
        target = Path(args.file) if args.file else None
        if target is None:
            sys.stdout.write(registry.to_json())
        else:
            dump_registry(registry, target)
            print(f"wrote {target}")
        return EXIT_OK

    status = EXIT_OK
    for record in registry:
        weight = record.to_weight()
        if weight is None:
            print(f"{record.name}: ok")
            continue
        report = moment_check(weight, 10)
        verdict = "ok" if report.passed else "FAIL"
        print(f"{record.name}: {verdict} moments worst={report.worst:.3e}")
        if not report.passed:
            status = EXIT_TOLERANCE
    return status


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_registry_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--presets", metavar="FILE", help="Preset registry JSON file")
    parser.add_argument("--k", type=float, help="Bargmann index for pho-* presets (default 1)")
    parser.add_argument("--e0", type=float, help="Zero-point energy for ho-e0 (default 0.5)")
    parser.add_argument("--b", type=float, help="Quadratic spectrum parameter (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghcs",
        description="Generalized hypergeometric coherent states and canonical density matrices",
    )
    parser.add_argument("--version", "-v", action="store_true", help="Show version and exit")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING (default) or ERROR")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_eval = sub.add_parser("eval", help="Evaluate pFq(a; b; x)")
    p_eval.add_argument("--p", type=int)
    p_eval.add_argument("--q", type=int)
    p_eval.add_argument("--a", type=float, nargs="*", default=[])
    p_eval.add_argument("--b", dest="b_list", type=float, nargs="*", default=[])
    p_eval.add_argument("--x", required=True, help="Argument (real or complex, e.g. 0.5+0.1j)")
    p_eval.add_argument("--preset", help="Use the kernel of a preset family")
    p_eval.add_argument("--presets", metavar="FILE", help="Preset registry JSON file")
    p_eval.add_argument("--k", type=float)
    p_eval.add_argument("--e0", type=float)
    p_eval.set_defaults(handler=cmd_eval, b=None)

    p_omega = sub.add_parser("omega", help="One density-matrix element as CSV")
    p_omega.add_argument("--preset", required=True)
    p_omega.add_argument("--eps", type=float, required=True)
    p_omega.add_argument("--zz", help="Kernel argument z*z' (z = 1, z' = value)")
    p_omega.add_argument("--z")
    p_omega.add_argument("--zp")
    p_omega.add_argument(
        "--route", choices=[r.value for r in Route], default=Route.DEFINITION.value
    )
    _add_registry_flags(p_omega)
    p_omega.set_defaults(handler=cmd_omega)

    p_verify = sub.add_parser("verify", help="Run verification suites")
    p_verify.add_argument(
        "--suite", choices=["bloch", "moments", "identities", "all"], default="all"
    )
    p_verify.add_argument("--preset", action="append", default=[], help="Repeatable filter")
    p_verify.add_argument("--bloch-tolerance", type=float, default=BLOCH_TOLERANCE)
    p_verify.add_argument("--output-dir", help="Write the report CSV here")
    p_verify.add_argument("--serial", action="store_true", help="Run checks in one thread")
    _add_registry_flags(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_scan = sub.add_parser("scan", help="Grid sweeps with CSV/SVG output")
    p_scan.add_argument("quantity", choices=["omega", "husimi", "partition"])
    p_scan.add_argument("--preset", required=True)
    p_scan.add_argument("--eps", required=True, help="Value or start..stop:step")
    p_scan.add_argument("--zz", help="Grid of z*z' (omega)")
    p_scan.add_argument("--zsq", help="Grid of |z|^2 (husimi)")
    p_scan.add_argument("--normalized", action="store_true", help="Divide Husimi values by Z")
    p_scan.add_argument(
        "--route", choices=[r.value for r in Route], default=Route.DEFINITION.value
    )
    p_scan.add_argument("--out", choices=["csv", "svg"], default="csv")
    p_scan.add_argument("--output-dir", help="Write files here instead of stdout")
    _add_registry_flags(p_scan)
    p_scan.set_defaults(handler=cmd_scan)

    p_presets = sub.add_parser("presets", help="List, validate or dump the preset registry")
    p_presets.add_argument("action", choices=["list", "validate", "dump"])
    p_presets.add_argument("file", nargs="?", help="Registry file (validate) or target (dump)")
    _add_registry_flags(p_presets)
    p_presets.set_defaults(handler=cmd_presets)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        from ghcs import __version__

        print(f"ghcs {__version__}")
        return EXIT_OK
    if not getattr(args, "handler", None):
        parser.print_help()
        return EXIT_INPUT
    return args.handler(args)
