"""
Render module – text, JSON and LaTeX views of elements and results.

Text output re-parses with :mod:`weierstrass_int.parser`: polynomials are
written in descending powers with exact rational coefficients and an
element is written ``(A) + (B)*p'``.  No floating point is ever printed.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Symbol, latex

from weierstrass_int.arith import QQ, BigRational, RatFunZ, constant_value, to_polyz_pair
from weierstrass_int.field import FieldCtx, KElem
from weierstrass_int.polyt import T, PolyT, RatFunT, coeffs
from weierstrass_int.reduce import IntegrationResult, PowerRow, ReductionOutcome

W = Symbol("w")
ZETA = Symbol("zeta")
LATEX_NAMES = {T: r"\wp", W: r"\wp'"}


# ── Text ─────────────────────────────────────────────────────


def format_rational(c: BigRational) -> str:
    """``-3/20``, ``2``: an exact rational without decimals."""
    return str(QQ.convert(c))


def _join_terms(terms: Sequence[Tuple[bool, str]]) -> str:
    """Join ``(negative, body)`` pairs into ``a - b + c``."""
    if not terms:
        return "0"
    out = []
    for i, (negative, body) in enumerate(terms):
        if i == 0:
            out.append(_negate(body) if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def _negate(body: str) -> str:
    """Prefix a minus sign; a leading power is parenthesized since '-' binds to the base."""
    head = body.split("*", 1)[0]
    if "^" in head and not head.startswith("("):
        return f"-({body})"
    return f"-{body}"


def _is_group(text: str) -> bool:
    """True when *text* is one parenthesized group such as ``(p + 1)``."""
    if not text.startswith("(") or not text.endswith(")"):
        return False
    depth = 0
    for i, ch in enumerate(text):
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth == 0 and i < len(text) - 1:
            return False
    return True


def _monomial(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _rational_term(c: BigRational, var: str, k: int) -> Tuple[bool, str]:
    mono = _monomial(var, k)
    negative = c < 0
    mag = format_rational(-c if negative else c)
    if not mono:
        return negative, mag
    if mag == "1":
        return negative, mono
    return negative, f"{mag}*{mono}"


def _format_dense(coefficients: Sequence, var: str, scalar) -> str:
    """Format low-first *coefficients* with a per-coefficient formatter."""
    terms = []
    for k in range(len(coefficients) - 1, -1, -1):
        c = coefficients[k]
        if c:
            terms.append(scalar(c, var, k))
    return _join_terms(terms)


def format_polyz(p, var: str = "z") -> str:
    """A polynomial in z over Q."""
    return _format_dense(list(reversed(p.rep.to_list())), var, _rational_term)


def format_ratfunz(a: RatFunZ) -> str:
    """An element of k as a polynomial in z or ``(num)/(den)`` with a monic den."""
    num, den = to_polyz_pair(a)
    if den.is_ground:
        return format_polyz(num)
    return f"({format_polyz(num)})/({format_polyz(den)})"


def _k_term(c: RatFunZ, var: str, k: int) -> Tuple[bool, str]:
    value = constant_value(c)
    if value is not None:
        return _rational_term(value, var, k)
    mono = _monomial(var, k)
    body = f"({format_ratfunz(c)})"
    return False, f"{body}*{mono}" if mono else body


def format_polyt(p: PolyT, var: str = "p") -> str:
    """A polynomial in t over Q(z), printed in the variable *var*."""
    return _format_dense(coeffs(p), var, _k_term)


def format_ratfunt(f: RatFunT, var: str = "p") -> str:
    """An element of k(t) as a polynomial or ``(num)/(den)``."""
    if f.is_poly:
        return format_polyt(f.num, var)
    return f"({format_polyt(f.num, var)})/({format_polyt(f.den, var)})"


def format_element(f: KElem) -> str:
    """Text form of an element of K.

    Parameters
    ----------
    f : KElem
        Element ``A + B*t'``.

    Returns
    -------
    str
        ``(A) + (B)*p'`` with zero components dropped; A is parenthesized
        only next to a nonzero B and when it is not already one group.
        ``"0"`` for the zero element.
    """
    if not f:
        return "0"
    parts = []
    if f.A:
        a = format_ratfunt(f.A)
        parts.append(f"({a})" if f.B and not _is_group(a) else a)
    if f.B:
        parts.append(f"({format_ratfunt(f.B)})*p'")
    return " + ".join(parts)


def format_integral(antiderivative: KElem, zeta_coeff: Optional[BigRational]) -> str:
    """``antiderivative + zeta_coeff*zeta`` with the ζ-term omitted when absent."""
    text = format_element(antiderivative)
    if not zeta_coeff:
        return text
    negative, body = _rational_term(zeta_coeff, "zeta", 1)
    if text == "0":
        return f"-{body}" if negative else body
    return f"{text} - {body}" if negative else f"{text} + {body}"


def format_field(ctx: FieldCtx) -> Dict[str, str]:
    """q and its splitting q = q_N*q_S, written in t."""
    return {
        "q": format_polyt(ctx.q, "t"),
        "qN": format_polyt(ctx.q_N, "t"),
        "qS": format_polyt(ctx.q_S, "t"),
    }


def outcome_text(outcome: ReductionOutcome, ctx: FieldCtx) -> str:
    """Multi-line report of a reduction: field, g, h, s, l, eta and the verdict."""
    fld = format_field(ctx)
    lines = [
        f"field: q = {fld['q']}, qN = {fld['qN']}, qS = {fld['qS']}",
        f"g   = {format_element(outcome.g)}",
        f"h   = {format_element(outcome.h)}",
        f"s   = {format_element(outcome.s)}",
        f"l   = {format_element(outcome.l)}",
        f"eta = {format_polyt(outcome.eta)}",
        f"verdict: {outcome.verdict.value}"
        + (" (conditional on the hypothesis)" if outcome.conditional else ""),
    ]
    return "\n".join(lines)


def integration_text(result: IntegrationResult) -> str:
    """The antiderivative, or ``no antiderivative: `` followed by the obstructions."""
    if result.success:
        return format_integral(result.antiderivative, result.zeta_coeff)
    return "no antiderivative: " + "; ".join(result.obstructions)


# ── JSON ─────────────────────────────────────────────────────


def element_payload(f: KElem) -> Dict[str, Dict[str, str]]:
    """``{"A": {"num", "den"}, "B": {"num", "den"}}`` as exact strings."""
    return {
        name: {"num": format_polyt(comp.num), "den": format_polyt(comp.den)}
        for name, comp in (("A", f.A), ("B", f.B))
    }


def outcome_payload(
    outcome: ReductionOutcome,
    ctx: FieldCtx,
    integration: Optional[IntegrationResult] = None,
) -> Dict[str, Any]:
    """The fixed JSON document for a reduction.

    Parameters
    ----------
    outcome : ReductionOutcome
        Result of :func:`full_reduce`.
    ctx : FieldCtx
        Field context, printed under ``field``.
    integration : IntegrationResult, optional
        When given and successful, its text is used for ``antiderivative``.

    Returns
    -------
    dict
        Keys ``field, g, h, s, l, eta, verdict, conditional, zeta_coeff,
        antiderivative``.  ``antiderivative`` is ``None`` only when no
        antiderivative exists in K or K(ζ).
    """
    antiderivative = None
    zeta = outcome.zeta_coeff
    if integration is not None and integration.success:
        antiderivative = integration_text(integration)
    elif outcome.eta_antideriv is not None:
        antiderivative = format_element(outcome.g + outcome.eta_antideriv)
    elif outcome.zeta_antideriv is not None:
        antiderivative = format_integral(outcome.g + outcome.zeta_antideriv, zeta)
    return {
        "field": format_field(ctx),
        "g": element_payload(outcome.g),
        "h": element_payload(outcome.h),
        "s": element_payload(outcome.s),
        "l": element_payload(outcome.l),
        "eta": format_polyt(outcome.eta),
        "verdict": outcome.verdict.value,
        "conditional": outcome.conditional,
        "zeta_coeff": None if zeta is None else format_rational(zeta),
        "antiderivative": antiderivative,
    }


# ── LaTeX ────────────────────────────────────────────────────


def _ratfunt_expr(f: RatFunT):
    return f.num.as_expr() / f.den.as_expr()


def element_expr(f: KElem):
    """The sympy expression ``A + B*w`` with w standing for ℘'."""
    return _ratfunt_expr(f.A) + _ratfunt_expr(f.B) * W


def to_latex(expr) -> str:
    """sympy LaTeX with t printed as \\wp and w as \\wp'."""
    return latex(expr, symbol_names=LATEX_NAMES)


def latex_element(f: KElem) -> str:
    return to_latex(element_expr(f))


def latex_integral(f: KElem, antiderivative: KElem, zeta_coeff: Optional[BigRational]) -> str:
    """``\\int f \\, dz = ...`` including the ζ-term."""
    rhs = element_expr(antiderivative)
    if zeta_coeff:
        rhs = rhs + QQ.to_sympy(zeta_coeff) * ZETA
    return rf"\int {to_latex(element_expr(f))} \, dz = {to_latex(rhs)}"


def latex_outcome(outcome: ReductionOutcome, f: KElem) -> str:
    """An ``aligned`` block listing f, g, h, s, l and eta."""
    lines = [
        rf"f &= {latex_element(f)} \\",
        rf"g &= {latex_element(outcome.g)} \\",
        rf"h &= {latex_element(outcome.h)} \\",
        rf"s &= {latex_element(outcome.s)} \\",
        rf"l &= {latex_element(outcome.l)} \\",
        rf"\eta &= {to_latex(outcome.eta.as_expr())}",
    ]
    return "\\begin{aligned}\n" + "\n".join(lines) + "\n\\end{aligned}"


def latex_power_table(rows: List[PowerRow]) -> str:
    """One aligned line per power: ``\\int \\wp(z)^n \\, dz = ...``."""
    lines = []
    for row in rows:
        rhs = element_expr(row.g) + QQ.to_sympy(row.z_coeff) * Symbol("z")
        rhs = rhs + QQ.to_sympy(row.zeta_coeff) * ZETA
        lines.append(rf"\int \wp(z)^{{{row.n}}} \, dz &= {to_latex(rhs)} \\")
    return "\\begin{aligned}\n" + "\n".join(lines) + "\n\\end{aligned}"
