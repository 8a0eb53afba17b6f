"""Command-line interface.

Four subcommands: ``report`` prints every class and check for a scene
file, ``check`` runs selected identity checks and signals failure
through the exit code, ``milnor`` computes a total Milnor number from
a raw polynomial, and ``table`` tabulates Euler characteristics of
smooth hypersurfaces.  Exit codes: 0 success, 1 failed checks, 2
invalid input, 3 a math-level obstruction such as non-isolated
singularities.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .charclasses import (
    MissingCsmClassError,
    build_report,
    canonical_json,
    chow_to_jsonable,
    fulton_johnson,
    report_to_jsonable,
)
from .chow import AmbientSpace
from .groebner import (
    NonIsolatedSingularitiesError,
    SingularitiesOutsideChartError,
    total_milnor_number,
)
from .polynomials import PolyParseError, VariableMismatchError, parse_polynomial
from .scenefile import SceneFileError, load_scene
from .scenes import SceneValidationError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_MATH = 3

_CHECK_ALIASES = {
    "verdier": "verdier",
    "verdier_smooth": "verdier",
    "defect": "defect",
    "defect_codim1": "defect",
    "pushdown": "pushdown",
    "proper_pushdown": "pushdown",
    "lci": "lci",
    "lci_defect": "lci",
}


class _Output:
    """Stdout wrapper honoring --quiet."""

    def __init__(self, quiet: bool) -> None:
        self.quiet = quiet

    def line(self, text: str = "") -> None:
        if not self.quiet:
            print(text)


def _ambient_label(factors: Sequence[int]) -> str:
    return " x ".join(f"P^{n}" for n in factors)


def _check_keys(report_checks, selection: Optional[str], m: int) -> list[str]:
    if selection is None or selection.strip() == "all":
        wanted = ["verdier", "defect", "pushdown", "lci"]
    else:
        wanted = []
        for raw in selection.split(","):
            name = raw.strip()
            if name == "all":
                wanted.extend(["verdier", "defect", "pushdown", "lci"])
                continue
            if name not in _CHECK_ALIASES:
                raise SceneFileError(f"unknown check {name!r}")
            wanted.append(_CHECK_ALIASES[name])
    keys = {
        "verdier": f"verdier_m{m}",
        "defect": "defect_codim1",
        "pushdown": f"pushdown_m{m}",
        "lci": f"lci_m{m}",
    }
    result = []
    for w in wanted:
        key = keys[w]
        if key in report_checks and key not in result:
            result.append(key)
    return result


def _print_report(report, out: _Output) -> None:
    scene = report.scene
    if scene.name:
        out.line(f"scene: {scene.name}")
    out.line(f"ambient: {_ambient_label(scene.ambient.factors)}")
    degrees = ", ".join("(" + ",".join(str(x) for x in d) + ")" for d in scene.multidegrees)
    out.line(f"degrees: {degrees}")
    if report.milnor_data is not None:
        out.line(
            f"total milnor number: {report.milnor_data.total_milnor}"
            f" (chart {report.milnor_data.chart})"
        )
    mu_values = report.mu.as_stratumwise().values
    if mu_values:
        rendered = ", ".join(f"{k} -> {v}" for k, v in sorted(mu_values.items()))
        out.line(f"mu: {rendered}")
    out.line(f"fulton_johnson: {report.fulton_johnson}")
    out.line(f"milnor_class: {report.milnor_class}")
    out.line(f"csm: {report.csm}")
    out.line(f"euler: {report.euler}")
    if report.localization:
        out.line("localization:")
        for stratum_id, term in report.localization:
            out.line(f"  {stratum_id}: {term}")
    out.line("checks:")
    for name in sorted(report.checks):
        check = report.checks[name]
        status = "pass" if check.passed else "FAIL"
        suffix = ""
        if not check.passed and check.residual is not None:
            suffix = f"  residual: {check.residual}"
        if check.detail:
            suffix += f"  ({check.detail})"
        out.line(f"  {name}: {status}{suffix}")


def cmd_report(args, out: _Output) -> int:
    scene, mu = load_scene(args.scene)
    report = build_report(scene, mu, m_values=(args.m,))
    if args.json:
        out.line(canonical_json(report_to_jsonable(report)))
    else:
        _print_report(report, out)
    return EXIT_OK


def cmd_check(args, out: _Output) -> int:
    scene, mu = load_scene(args.scene)
    report = build_report(scene, mu, m_values=(args.m,))
    keys = _check_keys(report.checks, args.checks, args.m)
    failed = []
    json_payload = {}
    for key in keys:
        check = report.checks[key]
        json_payload[key] = {"pass": check.passed}
        if not check.passed:
            failed.append(key)
            if check.residual is not None:
                json_payload[key]["residual"] = chow_to_jsonable(check.residual)
    if args.json:
        out.line(canonical_json(json_payload))
    else:
        for key in keys:
            check = report.checks[key]
            if check.passed:
                out.line(f"{key}: pass")
            else:
                out.line(f"{key}: FAIL  residual: {check.residual}")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_milnor(args, out: _Output) -> int:
    variables = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not variables:
        raise SceneFileError("--vars needs at least one variable name")
    F = parse_polynomial(args.poly, variables)
    try:
        result = total_milnor_number(F, args.chart)
    except ValueError as exc:
        if isinstance(exc, (NonIsolatedSingularitiesError, SingularitiesOutsideChartError)):
            raise
        raise SceneFileError(str(exc)) from exc
    if args.json:
        out.line(
            canonical_json(
                {
                    "total_milnor": result.total_milnor,
                    "chart": result.chart,
                    "off_curve_dim": result.off_curve_dim,
                }
            )
        )
    else:
        out.line(str(result.total_milnor))
    return EXIT_OK


def cmd_table(args, out: _Output) -> int:
    if args.nmax < 1 or args.dmax < 1:
        raise SceneFileError("table bounds must be at least 1")
    values = {}
    for n in range(1, args.nmax + 1):
        ambient = AmbientSpace((n,))
        for d in range(1, args.dmax + 1):
            values[(n, d)] = fulton_johnson(ambient, [(d,)]).degree()
    if args.json:
        payload = {f"{n},{d}": chi for (n, d), chi in sorted(values.items())}
        out.line(canonical_json({"chi": payload, "dmax": args.dmax, "nmax": args.nmax}))
        return EXIT_OK
    width = max(
        6, *(len(str(chi)) + 2 for chi in values.values())
    )
    header = "n\\d" + "".join(str(d).rjust(width) for d in range(1, args.dmax + 1))
    out.line("chi of a smooth degree-d hypersurface in P^n")
    out.line(header)
    for n in range(1, args.nmax + 1):
        row = str(n).ljust(3) + "".join(
            str(values[(n, d)]).rjust(width) for d in range(1, args.dmax + 1)
        )
        out.line(row)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="milnorcalc",
        description="Exact Milnor, Fulton-Johnson and CSM class calculator "
        "for hypersurfaces in products of projective spaces.",
    )
    parser.add_argument("--json", action="store_true", help="emit canonical JSON")
    parser.add_argument("--quiet", action="store_true", help="suppress normal output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="full class report for a scene file")
    p_report.add_argument("scene", help="path to a scene JSON file")
    p_report.add_argument("--m", type=int, default=1, help="product factor dimension")
    p_report.set_defaults(func=cmd_report)

    p_check = sub.add_parser("check", help="run identity checks for a scene file")
    p_check.add_argument("scene", help="path to a scene JSON file")
    p_check.add_argument(
        "--checks",
        default="all",
        help="comma list from verdier, defect, pushdown, lci (default all)",
    )
    p_check.add_argument("--m", type=int, default=1, help="product factor dimension")
    p_check.set_defaults(func=cmd_check)

    p_milnor = sub.add_parser("milnor", help="total Milnor number of a chart")
    p_milnor.add_argument("--poly", required=True, help="homogeneous polynomial")
    p_milnor.add_argument("--vars", required=True, help="comma list of variables")
    p_milnor.add_argument("--chart", required=True, help="chart variable")
    p_milnor.set_defaults(func=cmd_milnor)

    p_table = sub.add_parser("table", help="Euler characteristics of smooth hypersurfaces")
    p_table.add_argument("--nmax", type=int, default=4)
    p_table.add_argument("--dmax", type=int, default=4)
    p_table.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args.quiet)
    try:
        return args.func(args, out)
    except (NonIsolatedSingularitiesError, SingularitiesOutsideChartError, MissingCsmClassError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (SceneFileError, SceneValidationError, PolyParseError, VariableMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
