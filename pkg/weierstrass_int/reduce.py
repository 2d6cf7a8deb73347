"""
Reduce module – additive decomposition of elements of K.

Every f in K is written as ``f = g' + h + s + l + eta`` by three stages:

* Hermite reduction lowers the multiplicity of normal poles,
* special reduction removes poles at special factors of q except for a
  simple remainder ``(theta/gamma)*t'``,
* polynomial reduction lowers the t-degree of the integral part below
  ``deg q - 1``.

On top of the decomposition sit the in-field integrability decision, the
degree bound that rules out elementary integrals, the ζ-aware integrator
and the table of integrals of powers of t.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

from weierstrass_int.arith import (
    KZ,
    QQ,
    BigRational,
    RatFunZ,
    constant_value,
    is_derivative_in_k,
)
from weierstrass_int.errors import (
    HypothesisViolated,
    InvalidArgument,
    NotInvertible,
    ReductionError,
)
from weierstrass_int.field import (
    FieldCtx,
    KElem,
    canonical_rep,
    k_deriv,
)
from weierstrass_int.polyt import (
    ONE,
    T_POLY,
    PolyT,
    RatFunT,
    coeffs,
    const_t,
    deg,
    gcd_t,
    kappa,
    lc,
    mod_reduce,
    partial_t,
    squarefree_decomposition,
    xgcd_t,
)

logger = logging.getLogger("weierstrass_int.reduce")


class Verdict(str, Enum):
    """Integrability verdicts; the values are the strings printed and serialized."""

    IN_FIELD = "InField"
    NOT_IN_FIELD = "NotInField"
    NOT_ELEMENTARY = "NotElementary"
    INCONCLUSIVE = "Inconclusive"


# ── Result types ─────────────────────────────────────────────


class HermiteResult(NamedTuple):
    g: KElem
    f0: KElem
    h: KElem


class SpecialResult(NamedTuple):
    g: KElem
    f1: KElem
    s: KElem


class PolyResult(NamedTuple):
    g: KElem
    f2: KElem
    eta: PolyT


@dataclass(frozen=True)
class ReductionOutcome:
    """``f = g' + h + s + l + eta`` together with the verdicts."""

    g: KElem
    h: KElem
    s: KElem
    l: KElem
    eta: PolyT
    verdict: Verdict
    conditional: bool
    eta_antideriv: Optional[RatFunZ] = None
    zeta_coeff: Optional[BigRational] = None
    zeta_antideriv: Optional[RatFunZ] = None

    @property
    def remainders_vanish(self) -> bool:
        return not (self.h or self.s or self.l)


@dataclass(frozen=True)
class IntegrationResult:
    """An antiderivative ``antiderivative + zeta_coeff*ζ`` or the obstructions."""

    outcome: ReductionOutcome
    antiderivative: Optional[KElem]
    zeta_coeff: Optional[BigRational]
    obstructions: Tuple[str, ...] = ()

    @property
    def success(self) -> bool:
        return self.antiderivative is not None


@dataclass(frozen=True)
class PowerRow:
    """∫ tⁿ dz = g + z_coeff*z + zeta_coeff*ζ."""

    n: int
    g: KElem
    z_coeff: BigRational
    zeta_coeff: BigRational
    paths_agree: bool


# ── Hermite reduction ────────────────────────────────────────


def local_basis_psi(v: PolyT, mu: int, u: PolyT, ctx: FieldCtx) -> Tuple[KElem, KElem]:
    """``psi_i = (v**(1-mu) * w_i)' * u * v**mu`` for the basis w = (1, t')."""
    k = 1 - mu
    U, V = RatFunT(u), RatFunT(v)
    kv, dv = RatFunT(kappa(v)), RatFunT(partial_t(v))
    psi1 = ctx.elem(U * k * kv, U * k * dv)
    psi2 = ctx.elem(
        U * (k * dv * ctx.q + V * ctx.dq_half),
        U * (k * kv + V * ctx.t2_coeff),
    )
    return psi1, psi2


def _mod_reduce(c: RatFunT, v: PolyT) -> PolyT:
    try:
        return mod_reduce(c, v)
    except NotInvertible as exc:
        raise ReductionError(f"reduction modulo {v.as_expr()} failed: {exc}") from exc


def _addition_term(r1: PolyT, r2: PolyT, v: PolyT, mu: int, ctx: FieldCtx) -> KElem:
    """Integral g_a making the numerators of g + g_a vanish modulo e/gcd(e, v)."""
    if deg(ctx.e) < 1:
        return ctx.zero
    e1 = ctx.e.exquo(gcd_t(ctx.e, v))
    if deg(e1) < 1:
        return ctx.zero
    inv = _mod_reduce(RatFunT(ONE, v ** (mu - 1)), e1)
    return ctx.elem((-r1 * inv).rem(e1), (-r2 * inv).rem(e1))


def _split_off_e(w: KElem, ctx: FieldCtx) -> Tuple[KElem, KElem]:
    """Split w with squarefree denominator into ``(f0, h)``.

    f0 has a denominator dividing e; h is proper with a denominator coprime to e.
    """
    d_w = w.denominator()
    if deg(d_w) < 1:
        return w, ctx.zero
    common = gcd_t(d_w, ctx.e)
    d_star = d_w.exquo(common)
    if deg(d_star) < 1:
        return w, ctx.zero
    _, _, u = xgcd_t(d_star, common)
    parts = [RatFunT((n * u).rem(d_star), d_star) for n in w.numerators(d_w)]
    h = ctx.elem(*parts)
    return w - h, h


def hermite_reduce(fN: KElem, ctx: FieldCtx) -> HermiteResult:
    """Reduce an element with normal denominator.

    Returns ``(g, f0, h)`` with ``fN = g' + f0 + h``; f0 has a denominator
    dividing e (its polynomial part included) and h has a squarefree normal
    denominator coprime with e.
    """
    g, cur = ctx.zero, fN
    while True:
        d = cur.denominator()
        levels = squarefree_decomposition(d) if deg(d) > 0 else []
        if not levels or levels[-1][1] <= 1:
            break
        v, mu = levels[-1]
        u = d.exquo(v**mu)

        psi1, psi2 = local_basis_psi(v, mu, u, ctx)
        a1, a2 = cur.numerators(d)
        det = psi1.A * psi2.B - psi2.A * psi1.B
        if not det:
            raise ReductionError(f"singular local basis at {v.as_expr()}")
        c1 = (psi2.B * a1 - psi2.A * a2) / det
        c2 = (psi1.A * a2 - psi1.B * a1) / det
        r1, r2 = _mod_reduce(c1, v), _mod_reduce(c2, v)

        vm = v ** (mu - 1)
        step = ctx.elem(RatFunT(r1, vm), RatFunT(r2, vm))
        step = step + _addition_term(r1, r2, v, mu, ctx)
        cur = cur - k_deriv(step, ctx)
        g = g + step

        if cur.denominator().rem(v**mu).is_zero:
            raise ReductionError(f"multiplicity of {v.as_expr()} did not drop below {mu}")
        logger.debug("Hermite step at v = %s, mu = %d", v.as_expr(), mu)

    f0, h = _split_off_e(cur, ctx)
    return HermiteResult(g, f0, h)


# ── Special reduction ────────────────────────────────────────


def special_reduce(fS: KElem, ctx: FieldCtx) -> SpecialResult:
    """Reduce an element with special denominator.

    Returns ``(g, f1, s)`` with ``fS = g' + f1 + s``, f1 in I_K/q_N and
    ``s = (theta/gamma)*t'``.

    Raises
    ------
    HypothesisViolated
        If a special level of the denominator does not divide q.
    """
    g, f1, cur = ctx.zero, ctx.zero, fS
    s = ctx.zero
    last_mu: Optional[int] = None

    while True:
        rep = canonical_rep(cur, ctx)
        f1, cur = f1 + rep.normal_part, rep.special_part
        d = cur.denominator()
        if deg(d) < 1:
            f1 = f1 + cur
            break

        v, mu = squarefree_decomposition(d)[-1]
        if last_mu is not None and mu >= last_mu:
            raise ReductionError(f"special multiplicity did not drop below {last_mu}")
        last_mu = mu
        q_v, rem = ctx.q.div(v)
        if not rem.is_zero:
            raise HypothesisViolated(f"special factor {v.as_expr()} does not divide q")
        dv = RatFunT(partial_t(v))
        v_mu = RatFunT(v**mu)

        # (i) remove the order-mu pole of the 1-component with (b*t'/v**mu)'
        b = _mod_reduce(cur.A * v_mu * 2 / ((1 - 2 * mu) * RatFunT(q_v) * dv), v)
        if not b.is_zero:
            term = ctx.elem(0, RatFunT(b, v**mu))
            cur = cur - k_deriv(term, ctx)
            g = g + term

        rep = canonical_rep(cur, ctx)
        f1, cur = f1 + rep.normal_part, rep.special_part

        if mu >= 2:
            # (ii) remove the order-mu pole of the t'-component with (a/v**(mu-1))'
            a = _mod_reduce(cur.B * v_mu / ((mu - 1) * dv), v)
            if not a.is_zero:
                term = ctx.elem(RatFunT(a, v ** (mu - 1)))
                cur = cur + k_deriv(term, ctx)
                g = g - term
            logger.debug("Special step at v = %s, mu = %d", v.as_expr(), mu)
            continue

        theta = (cur.B * v).as_poly().rem(v)
        s = ctx.elem(0, RatFunT(theta, v))
        rest = cur - s
        if not rest.is_integral:
            raise ReductionError("special reduction left a non-integral residue")
        f1 = f1 + rest
        break

    return SpecialResult(g, f1, s)


# ── Polynomial reduction ─────────────────────────────────────


def l_lambda(lam: int, ctx: FieldCtx) -> RatFunZ:
    """Leading coefficient of S*((t**lam * t')'), i.e. (lam + deg q/2)*lc(q)."""
    return KZ.convert(QQ(2 * lam + ctx.degree, 2)) * ctx.lc_q


def split_integral_part(f: KElem, ctx: FieldCtx) -> Tuple[KElem, PolyT, PolyT]:
    """Write f in I_K/q_N as ``(a + b*t')/q_N + w + r*t'``.

    Returns ``(N, w, r)`` with N the proper part over q_N.

    Raises
    ------
    InvalidArgument
        If f*q_N is not integral.
    """
    a, b = f.A * ctx.e, f.B * ctx.e
    if not (a.is_poly and b.is_poly):
        raise InvalidArgument(f"not in I_K/q_N: {f}")
    (w, a_rem), (r, b_rem) = a.num.div(ctx.e), b.num.div(ctx.e)
    normal = ctx.elem(RatFunT(a_rem, ctx.e), RatFunT(b_rem, ctx.e))
    return normal, w, r


def upsilon(r: PolyT) -> PolyT:
    """Υ(r) = ∫ r dt, so that Υ' = κ(Υ) + r*t'."""
    return r.integrate()


def s_star(w: PolyT, r: PolyT) -> PolyT:
    """S* = w − κ(Υ(r)), the t'-free polynomial left after removing Υ'."""
    return w - kappa(upsilon(r))


def poly_reduce(f: KElem, ctx: FieldCtx) -> PolyResult:
    """Reduce an element of I_K/q_N.

    Returns ``(g, f2, eta)`` with ``f = g' + f2 + eta``, f2 proper over q_N
    and ``deg eta < deg q - 1``.
    """
    g, cur = ctx.zero, f
    bound = ctx.degree - 1
    while True:
        normal, w, r = split_integral_part(cur, ctx)
        star = s_star(w, r)
        d = deg(star)
        if d < bound:
            break
        lam = d - bound
        delta = lc(star) / l_lambda(lam, ctx)
        term = ctx.elem(0, (T_POLY**lam).mul_ground(delta))
        cur = cur - k_deriv(term, ctx)
        g = g + term

        _, w_new, r_new = split_integral_part(cur, ctx)
        if deg(s_star(w_new, r_new)) >= d:
            raise ReductionError(f"degree {d} did not drop in polynomial reduction")

    g = g + ctx.elem(upsilon(r))
    return PolyResult(g, normal, star)


# ── Whole reduction and verdicts ─────────────────────────────


def _exceeds_elementary_bound(eta: PolyT, ctx: FieldCtx) -> bool:
    return QQ(deg(eta)) > QQ(ctx.degree, 2) - 1


def _constant_term(eta: PolyT) -> RatFunZ:
    cs = coeffs(eta)
    return cs[0] if cs else KZ.zero


def _zeta_form(eta: PolyT, ctx: FieldCtx) -> Optional[Tuple[BigRational, RatFunZ]]:
    """``(c1, ∫c0)`` when ``eta = c1*t + c0`` with c1 ∈ Q and c0 ∈ k'."""
    if ctx.degree != 3 or deg(eta) != 1:
        return None
    c0, c1 = coeffs(eta)
    c1 = constant_value(c1)
    if c1 is None:
        return None
    anti = is_derivative_in_k(c0)
    if anti is None:
        return None
    return c1, anti


def full_reduce(f: KElem, ctx: FieldCtx) -> ReductionOutcome:
    """Decompose ``f = g' + h + s + l + eta`` and decide in-field integrability.

    The pipeline is :func:`canonical_rep`, then :func:`hermite_reduce` on the
    normal part and :func:`special_reduce` on the special part, then
    :func:`poly_reduce` on what both leave over.

    Parameters
    ----------
    f : KElem
        The integrand.
    ctx : FieldCtx
        Field context; its hypothesis mode sets ``conditional``.

    Returns
    -------
    ReductionOutcome
        Verdict InField iff h = s = l = 0 and eta lies in k'.  When only a
        ``c*t`` term with rational c blocks that, ``zeta_coeff`` and
        ``zeta_antideriv`` describe the antiderivative in K(ζ).
    """
    if not f:
        return ReductionOutcome(
            g=ctx.zero, h=ctx.zero, s=ctx.zero, l=ctx.zero, eta=const_t(0),
            verdict=Verdict.IN_FIELD, conditional=ctx.conditional,
            eta_antideriv=KZ.zero,
        )

    rep = canonical_rep(f, ctx)
    hermite = hermite_reduce(rep.normal_part, ctx)
    special = special_reduce(rep.special_part, ctx)
    poly = poly_reduce(hermite.f0 + special.f1, ctx)

    g = hermite.g + special.g + poly.g
    h, s, l, eta = hermite.h, special.s, poly.f2, poly.eta

    eta_antideriv: Optional[RatFunZ] = None
    zeta_coeff: Optional[BigRational] = None
    zeta_antideriv: Optional[RatFunZ] = None
    remainders_vanish = not (h or s or l)
    if remainders_vanish and deg(eta) <= 0:
        eta_antideriv = is_derivative_in_k(_constant_term(eta))
    elif remainders_vanish:
        zeta = _zeta_form(eta, ctx)
        if zeta is not None:
            zeta_coeff, zeta_antideriv = -zeta[0], zeta[1]

    if eta_antideriv is not None:
        verdict = Verdict.IN_FIELD
    elif _exceeds_elementary_bound(eta, ctx):
        verdict = Verdict.NOT_ELEMENTARY
    else:
        verdict = Verdict.NOT_IN_FIELD

    logger.info(
        "Reduced: h=%s s=%s l=%s deg eta=%d -> %s",
        bool(h), bool(s), bool(l), deg(eta), verdict.value,
    )
    return ReductionOutcome(
        g=g, h=h, s=s, l=l, eta=eta, verdict=verdict,
        conditional=ctx.conditional, eta_antideriv=eta_antideriv,
        zeta_coeff=zeta_coeff, zeta_antideriv=zeta_antideriv,
    )


def elementary_necessary(outcome: ReductionOutcome, ctx: FieldCtx) -> Verdict:
    """NotElementary iff deg eta > deg q/2 − 1, otherwise Inconclusive."""
    if _exceeds_elementary_bound(outcome.eta, ctx):
        return Verdict.NOT_ELEMENTARY
    return Verdict.INCONCLUSIVE


# ── Integration ──────────────────────────────────────────────


def verify_antiderivative(result: IntegrationResult, f: KElem, ctx: FieldCtx) -> bool:
    """Differentiate the antiderivative (with ζ' = −t) and compare with f."""
    if not result.success:
        return False
    derivative = k_deriv(result.antiderivative, ctx)
    if result.zeta_coeff:
        derivative = derivative - ctx.t * result.zeta_coeff
    return derivative == f


def _obstructions(outcome: ReductionOutcome) -> Tuple[str, ...]:
    found = []
    if outcome.h:
        found.append("nonzero Hermite remainder h")
    if outcome.s:
        found.append("nonzero special remainder s")
    if outcome.l:
        found.append("nonzero remainder l")
    if deg(outcome.eta) > 0:
        found.append("polynomial remainder eta of positive degree without a zeta form")
    elif outcome.eta:
        found.append("polynomial remainder eta not a derivative in Q(z)")
    return tuple(found)


def integrate(f: KElem, ctx: FieldCtx) -> IntegrationResult:
    """Integrate f in K, or in K(ζ) for a cubic q, or report why not."""
    outcome = full_reduce(f, ctx)
    if outcome.verdict is Verdict.IN_FIELD:
        result = IntegrationResult(outcome, outcome.g + outcome.eta_antideriv, None)
    elif outcome.zeta_coeff is not None:
        result = IntegrationResult(
            outcome, outcome.g + outcome.zeta_antideriv, outcome.zeta_coeff
        )
    else:
        return IntegrationResult(outcome, None, None, _obstructions(outcome))

    if not verify_antiderivative(result, f, ctx):
        raise ReductionError("antiderivative does not differentiate back to the integrand")
    return result


# ── Powers of t ──────────────────────────────────────────────


@dataclass(frozen=True)
class _Integral:
    g: KElem
    z: BigRational
    zeta: BigRational

    def __add__(self, other: "_Integral") -> "_Integral":
        return _Integral(self.g + other.g, self.z + other.z, self.zeta + other.zeta)

    def scale(self, c: BigRational) -> "_Integral":
        return _Integral(self.g * c, self.z * c, self.zeta * c)


def _recurrence_table(n_max: int, ctx: FieldCtx) -> List[_Integral]:
    """Unroll ∫ tⁿ for q = q3*t³ + q2*t² + q1*t + q0 with constant coefficients.

    (t^(n-2)*t')' = (n-1/2)*q3*tⁿ + (n-1)*q2*t^(n-1) + (n-3/2)*q1*t^(n-2)
    + (n-2)*q0*t^(n-3), starting from ∫ 1 = z and ∫ t = −ζ.
    """
    q0, q1, q2, q3 = (constant_value(c) for c in coeffs(ctx.q))
    zero = QQ(0)
    table = [
        _Integral(ctx.zero, QQ(1), zero),
        _Integral(ctx.zero, zero, QQ(-1)),
    ]
    for n in range(2, n_max + 1):
        acc = _Integral(ctx.elem(0, T_POLY ** (n - 2)), zero, zero)
        acc = acc + table[n - 1].scale(-(n - 1) * q2)
        acc = acc + table[n - 2].scale(-QQ(2 * n - 3, 2) * q1)
        if n >= 3:
            acc = acc + table[n - 3].scale(-(n - 2) * q0)
        table.append(acc.scale(1 / (QQ(2 * n - 1, 2) * q3)))
    return table[: n_max + 1]


def _reducer_row(n: int, ctx: FieldCtx) -> _Integral:
    outcome = integrate(ctx.t**n, ctx).outcome
    c0 = constant_value(_constant_term(outcome.eta))
    if c0 is None:
        raise ReductionError(f"non-constant eta for t^{n}")
    if outcome.verdict is Verdict.IN_FIELD:
        return _Integral(outcome.g, c0, QQ(0))
    if outcome.zeta_coeff is None:
        raise ReductionError(f"t^{n} has no zeta form")
    return _Integral(outcome.g, c0, outcome.zeta_coeff)


def power_table(n_max: int, ctx: FieldCtx) -> List[PowerRow]:
    """Integrals of tⁿ for n = 0..n_max, by recurrence and by reduction.

    Raises
    ------
    InvalidArgument
        If q is not a cubic with constant coefficients or n_max < 0.
    ReductionError
        If the two computations disagree.
    """
    if ctx.degree != 3 or not kappa(ctx.q).is_zero:
        raise InvalidArgument("power table needs a cubic q with constant coefficients")
    if n_max < 0:
        raise InvalidArgument(f"n_max must be non-negative, got {n_max}")

    rows = []
    for n, expected in enumerate(_recurrence_table(n_max, ctx)):
        got = _reducer_row(n, ctx)
        agree = got == expected
        if not agree:
            raise ReductionError(f"power table paths disagree at n = {n}")
        rows.append(PowerRow(n, expected.g, expected.z, expected.zeta, agree))
    logger.info("Power table computed for n = 0..%d", n_max)
    return rows
