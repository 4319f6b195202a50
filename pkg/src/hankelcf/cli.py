"""Command-line interface.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or parse error,
3 degenerate input (or orbit breakdown before anything could be checked).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cf import CFParams, fit_canonical_cf, series_from_cf, tau_orbit
from .errors import (
    DegenerateBindings,
    GFSyntaxError,
    HankelCFError,
    NotContractive,
    UnboundVariable,
    UnknownPreset,
    ZeroConstantTerm,
)
from .gflang import eval_gf, parse_gf
from .hankel import hankel_transform
from .presets import get_preset
from .series import PowerSeries
from .somos import somos4_fit
from .verify import verify_preset, verify_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CommandResult:
    code: int
    stdout: str
    stderr: str


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _binding(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return name.strip(), _rational(value)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hankelcf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_source(p, cf=True):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--expr", help="generating function, G = self-reference")
        if cf:
            group.add_argument("--cf", type=_rational_list, metavar="a,b,c,d,e,f")
        p.add_argument("--param", type=_binding, action="append", default=[],
                       metavar="NAME=VALUE")

    p = sub.add_parser("series", help="print power-series coefficients")
    add_source(p)
    p.add_argument("--nmax", type=int, default=10, help="truncation order")

    p = sub.add_parser("hankel", help="print the Hankel transform H_0..H_nmax")
    add_source(p)
    p.add_argument("--nmax", type=int, default=8)

    p = sub.add_parser("tau", help="print the tau orbit of a canonical tuple")
    p.add_argument("--cf", type=_rational_list, required=True, metavar="a,b,c,d,e,f")
    p.add_argument("--steps", type=int, default=6)

    p = sub.add_parser("fit", help="fit the canonical continued-fraction form")
    add_source(p, cf=False)
    p.add_argument("--nmax", type=int, default=12, help="order used for the fit")

    p = sub.add_parser("somos-fit", help="fit (alpha, beta) to a sequence")
    p.add_argument("--values", type=_rational_list, required=True)

    for name in ("verify", "sweep"):
        p = sub.add_parser(name)
        p.add_argument("--preset", required=True)
        p.add_argument("--nmax", type=int, default=10)
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        if name == "verify":
            p.add_argument("--param", type=_binding, action="append", default=[],
                           metavar="NAME=VALUE")
        else:
            p.add_argument("--samples", type=int, default=20)
            p.add_argument("--seed", type=int, default=0)
    return parser


def _source_series(args, order: int) -> PowerSeries:
    if getattr(args, "cf", None) is not None:
        return series_from_cf(_cf_params(args.cf), order)
    return eval_gf(parse_gf(args.expr), dict(args.param), order)


def _cf_params(values) -> CFParams:
    if len(values) != 6:
        raise UsageError(f"--cf needs 6 values, got {len(values)}")
    return CFParams(*values)


def _fmt(values) -> str:
    return ", ".join(str(v) for v in values)


def _emit_reports(reports, fmt: str, out) -> None:
    if fmt == "json":
        payload = [r.to_json_dict() for r in reports]
        out.write(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        if len(reports) == 1:
            out.write(reports[0].to_csv())
        else:
            writer.writerow(["sample", "n", "H_n", "somos_residual"])
            for i, r in enumerate(reports):
                for row in r.csv_rows():
                    writer.writerow([i] + row)
    else:
        out.write("\n\n".join(r.to_text() for r in reports) + "\n")


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd == "series":
        out.write(_fmt(_source_series(args, args.nmax).coeffs) + "\n")
        return EXIT_OK
    if cmd == "hankel":
        s = _source_series(args, max(2 * args.nmax - 2, 0))
        out.write(_fmt(hankel_transform(s, args.nmax)) + "\n")
        return EXIT_OK
    if cmd == "tau":
        orbit = tau_orbit(_cf_params(args.cf), args.steps)
        out.write("n\ta\tb\tc\td\te\tf\n")
        for n, p in enumerate(orbit.steps):
            out.write("\t".join([str(n)] + [str(v) for v in p.astuple()]) + "\n")
        if orbit.breakdown is not None:
            out.write(f"breakdown at step {orbit.breakdown} (a = 0)\n")
            return EXIT_DEGENERATE if orbit.breakdown == 0 else EXIT_OK
        return EXIT_OK
    if cmd == "fit":
        params, unique = fit_canonical_cf(_source_series(args, args.nmax))
        if params is None:
            out.write("none\n")
        else:
            out.write(f"{_fmt(params.astuple())}\n")
            if not unique:
                out.write("note: fit is not unique\n")
        return EXIT_OK
    if cmd == "somos-fit":
        fit = somos4_fit(args.values)
        if fit is None:
            out.write("none\n")
            return EXIT_FAIL
        flag = " (degenerate)" if fit.degenerate else ""
        out.write(f"alpha={fit.params.alpha} beta={fit.params.beta}{flag}\n")
        return EXIT_OK
    if cmd == "verify":
        preset = get_preset(args.preset)
        report = verify_preset(preset.id, dict(args.param), args.nmax)
        _emit_reports([report], args.format, out)
        return EXIT_OK if report.passed else EXIT_FAIL
    if cmd == "sweep":
        preset = get_preset(args.preset)
        reports = verify_sweep(preset.id, args.samples, args.seed, args.nmax)
        _emit_reports(list(reports), args.format, out)
        return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    raise UsageError(f"unknown command {cmd!r}")


def run_command(argv: Sequence[str]) -> CommandResult:
    out, err = io.StringIO(), io.StringIO()
    code = EXIT_OK
    try:
        with contextlib.redirect_stdout(out):
            args = build_parser().parse_args(list(argv))
        code = _dispatch(args, out)
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else EXIT_OK
    except (UsageError, UnknownPreset, GFSyntaxError, UnboundVariable) as exc:
        err.write(f"error: {exc}\n")
        code = EXIT_USAGE
    except (DegenerateBindings, ZeroConstantTerm, NotContractive) as exc:
        err.write(f"degenerate: {exc}\n")
        code = EXIT_DEGENERATE
    except (HankelCFError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        code = EXIT_USAGE
    return CommandResult(code, out.getvalue(), err.getvalue())


def main(argv: Sequence[str] | None = None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
