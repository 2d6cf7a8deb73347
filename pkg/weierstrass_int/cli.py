"""
CLI module – command dispatch for the ``reduce``, ``integrate``, ``check``,
``split`` and ``power-table`` verbs.

:func:`run` is pure with respect to process state: it returns the exit code,
the rendered output and the diagnostic line instead of printing them.
:func:`main` wires configuration, logging and the standard streams.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

from weierstrass_int.errors import InvalidArgument, WeierstrassError
from weierstrass_int.export import export_power_table, power_table_frame
from weierstrass_int.field import (
    FieldCtx,
    canonical_rep,
    classify_levels,
    ctx_from_invariants,
    ctx_from_q,
    splitting_factorization,
)
from weierstrass_int.parser import parse_expr, parse_q, parse_rational
from weierstrass_int.polyt import deg
from weierstrass_int.reduce import elementary_necessary, full_reduce, integrate, power_table
from weierstrass_int.render import (
    element_payload,
    format_element,
    format_polyt,
    integration_text,
    latex_element,
    latex_integral,
    latex_outcome,
    latex_power_table,
    outcome_payload,
    outcome_text,
    to_latex,
)
from weierstrass_int.utils import DEFAULT_CONFIG, load_config, setup_logging

logger = logging.getLogger("weierstrass_int.cli")

VERBS = ("reduce", "integrate", "check", "split", "power-table")
FORMATS = ("text", "json", "latex")


@dataclass(frozen=True)
class Command:
    """One invocation: a verb, a field and (except for power-table) an expression."""

    verb: str
    expr: Optional[str] = None
    g2: Optional[str] = None
    g3: Optional[str] = None
    q: Optional[str] = None
    format: str = "text"
    assume_hypothesis: bool = False
    n: int = 8
    csv_dir: Optional[str] = None

    def validate(self) -> None:
        """Raise InvalidArgument unless the verb, format and field source are consistent."""
        if self.verb not in VERBS:
            raise InvalidArgument(f"unknown verb {self.verb!r}")
        if self.format not in FORMATS:
            raise InvalidArgument(f"unknown format {self.format!r}")
        by_invariants = self.g2 is not None or self.g3 is not None
        if by_invariants == (self.q is not None):
            raise InvalidArgument("give either --g2/--g3 or --q")
        if by_invariants and (self.g2 is None or self.g3 is None):
            raise InvalidArgument("--g2 and --g3 must be given together")
        if self.verb != "power-table" and not self.expr:
            raise InvalidArgument(f"{self.verb} needs an expression")


@dataclass(frozen=True)
class RunResult:
    """What `run` hands back: the exit code, stdout text and a stderr diagnostic."""

    exit_code: int
    output: str = ""
    diagnostic: str = ""


def build_context(cmd: Command) -> FieldCtx:
    """Build the field context named by *cmd*.

    Parameters
    ----------
    cmd : Command
        Either ``q`` (a polynomial in t) or both invariants ``g2``, ``g3``.

    Returns
    -------
    FieldCtx
        Validated context for k(t, t') with (t')^2 = q.

    Raises
    ------
    ParseError
        If q or an invariant does not parse.
    InvalidField
        If q is not squarefree of degree at least 3.
    DegenerateCurve
        If g2^3 - 27*g3^2 = 0.
    HypothesisNotAssured, HypothesisViolated
        If the hypothesis on q cannot be taken for granted or fails.
    """
    if cmd.q is not None:
        return ctx_from_q(parse_q(cmd.q), cmd.assume_hypothesis)
    return ctx_from_invariants(parse_rational(cmd.g2), parse_rational(cmd.g3))


# ── Verbs ────────────────────────────────────────────────────


def _reduce(cmd: Command, ctx: FieldCtx) -> str:
    f = parse_expr(cmd.expr, ctx)
    outcome = full_reduce(f, ctx)
    if cmd.format == "json":
        return json.dumps(outcome_payload(outcome, ctx), indent=2)
    if cmd.format == "latex":
        return latex_outcome(outcome, f)
    return outcome_text(outcome, ctx)


def _integrate(cmd: Command, ctx: FieldCtx) -> str:
    f = parse_expr(cmd.expr, ctx)
    result = integrate(f, ctx)
    if cmd.format == "json":
        return json.dumps(outcome_payload(result.outcome, ctx, result), indent=2)
    if cmd.format == "latex" and result.success:
        return latex_integral(f, result.antiderivative, result.zeta_coeff)
    return integration_text(result)


def _check(cmd: Command, ctx: FieldCtx) -> str:
    f = parse_expr(cmd.expr, ctx)
    outcome = full_reduce(f, ctx)
    elementary = elementary_necessary(outcome, ctx)
    report = {
        "verdict": outcome.verdict.value,
        "elementary": elementary.value,
        "conditional": outcome.conditional,
    }
    if cmd.format == "json":
        return json.dumps(report, indent=2)
    return "\n".join(f"{key}: {value}" for key, value in report.items())


def _split(cmd: Command, ctx: FieldCtx) -> str:
    f = parse_expr(cmd.expr, ctx)
    d = f.denominator()
    d_n, d_s = splitting_factorization(d, ctx)
    rep = canonical_rep(f, ctx)
    levels = [
        {"factor": format_polyt(p), "multiplicity": mu, "kind": "special" if special else "normal"}
        for p, mu, special in (classify_levels(d, ctx) if deg(d) > 0 else [])
    ]
    if cmd.format == "json":
        return json.dumps(
            {
                "D": format_polyt(d),
                "DN": format_polyt(d_n),
                "DS": format_polyt(d_s),
                "levels": levels,
                "N": element_payload(rep.normal_part),
                "S": element_payload(rep.special_part),
            },
            indent=2,
        )
    if cmd.format == "latex":
        return "\n".join(
            [
                rf"D_N = {to_latex(d_n.as_expr())}, \quad D_S = {to_latex(d_s.as_expr())}",
                rf"\mathcal{{N}}(f) = {latex_element(rep.normal_part)}",
                rf"\mathcal{{S}}(f) = {latex_element(rep.special_part)}",
            ]
        )
    lines = [f"D  = {format_polyt(d)}", f"DN = {format_polyt(d_n)}", f"DS = {format_polyt(d_s)}"]
    lines += [f"  ({lv['factor']})^{lv['multiplicity']}  {lv['kind']}" for lv in levels]
    lines += [f"N(f) = {format_element(rep.normal_part)}", f"S(f) = {format_element(rep.special_part)}"]
    return "\n".join(lines)


def _power_table(cmd: Command, ctx: FieldCtx) -> str:
    rows = power_table(cmd.n, ctx)
    frame = power_table_frame(rows)
    if cmd.csv_dir:
        export_power_table(frame, cmd.csv_dir)
    if cmd.format == "json":
        return json.dumps(frame.to_dict(orient="records"), indent=2)
    if cmd.format == "latex":
        return latex_power_table(rows)
    return frame.to_string(index=False)


_DISPATCH = {
    "reduce": _reduce,
    "integrate": _integrate,
    "check": _check,
    "split": _split,
    "power-table": _power_table,
}


def run(cmd: Command) -> RunResult:
    """Execute *cmd* and map library errors to exit codes.

    Exit codes: 0 success; 2 parse error or division by zero in the input;
    3 invalid field or argument; 4 hypothesis not assured or violated;
    5 internal invariant violation.
    """
    try:
        cmd.validate()
        ctx = build_context(cmd)
        output = _DISPATCH[cmd.verb](cmd, ctx)
    except WeierstrassError as exc:
        logger.error("%s failed: %s: %s", cmd.verb, type(exc).__name__, exc)
        return RunResult(exc.exit_code, "", f"error: {type(exc).__name__}: {exc}")
    return RunResult(0, output)


# ── Argument parsing ─────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g2", type=str, default=None, help="Weierstrass invariant g2 (rational).")
    common.add_argument("--g3", type=str, default=None, help="Weierstrass invariant g3 (rational).")
    common.add_argument("--q", type=str, default=None, help="q as a polynomial in t, e.g. '4*t^3 - z*t'.")
    common.add_argument(
        "--assume-hypothesis",
        action="store_true",
        help="Accept q with nonconstant coefficients; verdicts become conditional.",
    )
    common.add_argument("--format", choices=FORMATS, default=None, help="Output format.")
    common.add_argument(
        "--config",
        type=str,
        default=None,
        help="Path to the YAML configuration file (default: config/settings.yaml).",
    )
    common.add_argument("--log-level", type=str, default=None, help="Logging level.")

    parser = argparse.ArgumentParser(
        prog="weierstrass-int",
        description="Exact reduction and integration in Weierstrass-like differential fields.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in ("reduce", "integrate", "check", "split"):
        p = sub.add_parser(verb, parents=[common])
        p.add_argument("expr", help="Expression in p (℘), p' (℘') and z.")
    table = sub.add_parser("power-table", parents=[common])
    table.add_argument("--n", type=int, default=None, help="Largest power of p.")
    table.add_argument("--csv", dest="csv_dir", default=None, help="Directory for a CSV export.")
    return parser


def command_from_args(args: argparse.Namespace, config: Dict[str, Any]) -> Command:
    """Merge parsed flags over configuration values."""
    n = getattr(args, "n", None)
    return Command(
        verb=args.verb,
        expr=getattr(args, "expr", None),
        g2=args.g2,
        g3=args.g3,
        q=args.q,
        format=args.format or config["output"]["format"],
        assume_hypothesis=args.assume_hypothesis,
        n=config["power_table"]["n_max"] if n is None else n,
        csv_dir=getattr(args, "csv_dir", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse CLI arguments, run the command and write its output."""
    args = build_parser().parse_args(argv)

    missing_config: Optional[str] = None
    try:
        config = load_config(args.config)
    except FileNotFoundError as exc:
        if args.config:
            print(f"error: {exc}", file=sys.stderr)
            return 3
        config, missing_config = DEFAULT_CONFIG, str(exc)

    log_cfg = config["logging"]
    setup_logging(
        log_dir=config["paths"]["log_dir"],
        log_level=args.log_level or log_cfg["level"],
        to_file=log_cfg["to_file"],
    )
    if missing_config:
        logger.warning("%s – using built-in defaults.", missing_config)

    result = run(command_from_args(args, config))
    if result.output:
        print(result.output)
    if result.diagnostic:
        print(result.diagnostic, file=sys.stderr)
    return result.exit_code
