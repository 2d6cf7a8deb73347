"""
Field module – the extension K = k(t, t') with (t')² = q(t).

Elements are stored in the integral basis {1, t'} as ``A + B*t'`` with
``A, B`` in k(t).  A :class:`FieldCtx` carries q together with its
splitting ``q = q_N * q_S`` into a normal cofactor and a monic special
part, and the differential denominator e of the basis.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

from weierstrass_int.arith import QQ, BigRational, RatFunZ
from weierstrass_int.errors import (
    DegenerateCurve,
    DivisionByZero,
    HypothesisNotAssured,
    HypothesisViolated,
    InvalidArgument,
    InvalidField,
    ReductionError,
)
from weierstrass_int.polyt import (
    ONE,
    T,
    PolyT,
    RatFunT,
    deg,
    gcd_t,
    kappa,
    lc,
    lcm_t,
    partial_t,
    poly_t,
    resultant_quadratic_m,
    squarefree_decomposition,
    xgcd_t,
)

logger = logging.getLogger("weierstrass_int.field")


class HypothesisMode(str, Enum):
    """How the hypothesis on special points was established."""

    AUTO_VERIFIED = "auto_verified"
    ASSUMED = "assumed"


# ── Field context ────────────────────────────────────────────


@dataclass(frozen=True)
class FieldCtx:
    """Immutable description of K = k(t, t') with (t')² = q."""

    q: PolyT
    lc_q: RatFunZ
    q_S: PolyT
    q_N: PolyT
    e: PolyT
    hypothesis_mode: HypothesisMode
    g2: Optional[BigRational] = None
    g3: Optional[BigRational] = None
    dq_half: RatFunT = field(init=False, repr=False, compare=False)
    t2_coeff: RatFunT = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        # t'' = t2_coeff * t' + dq_half
        object.__setattr__(self, "dq_half", RatFunT(partial_t(self.q)) / 2)
        object.__setattr__(self, "t2_coeff", RatFunT(kappa(self.q), self.q) / 2)

    @property
    def conditional(self) -> bool:
        return self.hypothesis_mode is HypothesisMode.ASSUMED

    @property
    def degree(self) -> int:
        return deg(self.q)

    # ── Element constructors ─────────────────────────────────

    def elem(self, a=0, b=0) -> "KElem":
        """``a + b*t'`` with a, b anything liftable to k(t)."""
        return KElem(RatFunT.lift(a), RatFunT.lift(b), self.q)

    @property
    def zero(self) -> "KElem":
        return self.elem(0)

    @property
    def t(self) -> "KElem":
        return self.elem(T)

    @property
    def y(self) -> "KElem":
        return self.elem(0, 1)


# ── Elements ─────────────────────────────────────────────────


@dataclass(frozen=True)
class KElem:
    """The element ``A + B*t'`` of K."""

    A: RatFunT
    B: RatFunT
    q: PolyT = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", RatFunT.lift(self.A))
        object.__setattr__(self, "B", RatFunT.lift(self.B))

    def _coerce(self, other) -> "KElem":
        if isinstance(other, KElem):
            if other.q != self.q:
                raise InvalidArgument("elements of different fields")
            return other
        return KElem(RatFunT.lift(other), RatFunT.lift(0), self.q)

    def __add__(self, other) -> "KElem":
        return k_ops(self, self._coerce(other), "add")

    __radd__ = __add__

    def __sub__(self, other) -> "KElem":
        return k_ops(self, self._coerce(other), "sub")

    def __rsub__(self, other) -> "KElem":
        return k_ops(self._coerce(other), self, "sub")

    def __mul__(self, other) -> "KElem":
        return k_ops(self, self._coerce(other), "mul")

    __rmul__ = __mul__

    def __truediv__(self, other) -> "KElem":
        return k_ops(self, self._coerce(other), "div")

    def __rtruediv__(self, other) -> "KElem":
        return k_ops(self._coerce(other), self, "div")

    def __neg__(self) -> "KElem":
        return KElem(-self.A, -self.B, self.q)

    def __pow__(self, n: int) -> "KElem":
        if n < 0:
            return 1 / (self ** (-n))
        result, base = self._coerce(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.A) or bool(self.B)

    # ── Denominators ─────────────────────────────────────────

    def denominator(self) -> PolyT:
        """Monic common denominator of A and B w.r.t. {1, t'}."""
        return lcm_t([self.A.den, self.B.den])

    def numerators(self, d: PolyT | None = None) -> Tuple[PolyT, PolyT]:
        """Polynomials ``(a, b)`` with ``self = (a + b*t')/d``."""
        d = self.denominator() if d is None else d
        return (
            self.A.num * d.exquo(self.A.den),
            self.B.num * d.exquo(self.B.den),
        )

    @property
    def is_integral(self) -> bool:
        return self.A.is_poly and self.B.is_poly

    def __str__(self) -> str:
        return f"({self.A}) + ({self.B})*t'"


@dataclass(frozen=True)
class CanonicalRep:
    """``f = normal_part + special_part``.

    The normal part is proper over D_N (denominator free of special factors);
    the special part carries every special pole and the integral part of f.
    """

    normal_part: KElem
    special_part: KElem


# ── Arithmetic and derivation ────────────────────────────────


def k_ops(a: KElem, b: KElem, op: str) -> KElem:
    """Exact ``add | sub | mul | div`` in K using (t')² = q.

    Parameters
    ----------
    a, b : KElem
        Operands over the same q.
    op : str
        One of ``add``, ``sub``, ``mul``, ``div``.

    Returns
    -------
    KElem
        The result in the basis {1, t'}; division multiplies by the
        conjugate and divides by the norm ``A² − B²q``.

    Raises
    ------
    DivisionByZero
        If ``op == "div"`` and *b* is zero.
    ValueError
        For an unknown operation name.
    """
    q = a.q
    if op == "add":
        return KElem(a.A + b.A, a.B + b.B, q)
    if op == "sub":
        return KElem(a.A - b.A, a.B - b.B, q)
    if op == "mul":
        return KElem(a.A * b.A + a.B * b.B * q, a.A * b.B + a.B * b.A, q)
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero in K")
        norm = b.A**2 - b.B**2 * q
        if not norm:
            raise ReductionError("zero norm of a nonzero element: q is a square")
        num = k_ops(a, KElem(b.A, -b.B, q), "mul")
        return KElem(num.A / norm, num.B / norm, q)
    raise ValueError(f"unknown field operation: {op!r}")


def k_deriv(f: KElem, ctx: FieldCtx) -> KElem:
    """The derivation of K extending d/dz, with t' = y and y' = t''."""
    A, B = f.A, f.B
    new_a = A.kappa() + B.partial_t() * ctx.q + B * ctx.dq_half
    new_b = A.partial_t() + B.kappa() + B * ctx.t2_coeff
    return KElem(new_a, new_b, f.q)


# ── Splitting factorization ──────────────────────────────────


def _special_gcd(p: PolyT, q: PolyT) -> PolyT:
    """gcd of p with res_y(κ(p) + ∂_t(p)*y, y² − q)."""
    r = resultant_quadratic_m(kappa(p), partial_t(p), q)
    return gcd_t(r, p)


def _split(d: PolyT, q: PolyT) -> Tuple[PolyT, PolyT]:
    d_n, d_s = ONE, ONE
    for part, mu in squarefree_decomposition(d):
        g = _special_gcd(part, q)
        d_s = d_s * g**mu
        d_n = d_n * part.exquo(g) ** mu
    return d_n.mul_ground(lc(d)), d_s


def splitting_factorization(d: PolyT, ctx: FieldCtx) -> Tuple[PolyT, PolyT]:
    """Split ``d = D_N * D_S`` into normal and (monic) special factors."""
    d = poly_t(d)
    if d.is_zero:
        raise InvalidArgument("splitting factorization of zero")
    return _split(d, ctx.q)


def is_special(p: PolyT, ctx: FieldCtx) -> bool:
    """True iff the irreducible p has a special point among its roots."""
    p = poly_t(p)
    if deg(p) < 1:
        return False
    return deg(_special_gcd(p.monic(), ctx.q)) >= 1


def classify_levels(d: PolyT, ctx: FieldCtx) -> List[Tuple[PolyT, int, bool]]:
    """Squarefree levels of d split into ``(factor, multiplicity, special)``."""
    rows: List[Tuple[PolyT, int, bool]] = []
    for part, mu in squarefree_decomposition(poly_t(d)):
        g = _special_gcd(part, ctx.q)
        if deg(g) > 0:
            rows.append((g, mu, True))
        rest = part.exquo(g)
        if deg(rest) > 0:
            rows.append((rest, mu, False))
    return rows


def canonical_rep(f: KElem, ctx: FieldCtx) -> CanonicalRep:
    """Unique split ``f = N(f) + S(f)`` by the normal/special denominators.

    Parameters
    ----------
    f : KElem
        Any element of K.
    ctx : FieldCtx
        Field context supplying q.

    Returns
    -------
    CanonicalRep
        N(f) has numerators of degree below D_N and denominator D_N; S(f) is
        the rest.  For a polynomial or an all-special denominator N(f) = 0.
    """
    d = f.denominator()
    if deg(d) < 1:
        return CanonicalRep(ctx.zero, f)
    d_n, d_s = splitting_factorization(d, ctx)
    if deg(d_n) < 1:
        return CanonicalRep(ctx.zero, f)

    _, _, u = xgcd_t(d_n, d_s)
    parts = [RatFunT((a * u).rem(d_n), d_n) for a in f.numerators(d)]
    normal = KElem(parts[0], parts[1], f.q)
    return CanonicalRep(normal, f - normal)


# ── Context construction ─────────────────────────────────────


def ctx_from_q(
    q,
    assume_hypothesis: bool = False,
    g2: Optional[BigRational] = None,
    g3: Optional[BigRational] = None,
) -> FieldCtx:
    """Validate q and build the field context.

    Raises
    ------
    InvalidField
        If q has degree < 3 or is not squarefree.
    HypothesisNotAssured
        If q has nonconstant coefficients and the hypothesis is not assumed.
    HypothesisViolated
        If a special factor of q has nonconstant coefficients.
    """
    q = poly_t(q)
    if deg(q) < 3:
        raise InvalidField(f"q must have degree >= 3, got {deg(q)}")
    if deg(gcd_t(q, partial_t(q))) > 0:
        raise InvalidField("q is not squarefree")

    if kappa(q).is_zero:
        mode = HypothesisMode.AUTO_VERIFIED
    elif assume_hypothesis:
        mode = HypothesisMode.ASSUMED
    else:
        raise HypothesisNotAssured(
            "q has nonconstant coefficients; pass --assume-hypothesis"
        )

    q_n, q_s = _split(q, q)
    if not kappa(q_s).is_zero:
        raise HypothesisViolated(f"special factor {q_s.as_expr()} is not constant")
    e = q_n.monic() if deg(q_n) > 0 else ONE

    logger.info(
        "Field q = %s: q_N = %s, q_S = %s (%s)",
        q.as_expr(), q_n.as_expr(), q_s.as_expr(), mode.value,
    )
    return FieldCtx(
        q=q, lc_q=lc(q), q_S=q_s, q_N=q_n, e=e,
        hypothesis_mode=mode, g2=g2, g3=g3,
    )


def ctx_from_invariants(g2, g3) -> FieldCtx:
    """Context of the Weierstrass field q = 4t³ − g2*t − g3.

    Raises
    ------
    DegenerateCurve
        If g2³ − 27*g3² = 0.
    """
    g2, g3 = QQ.convert(g2), QQ.convert(g3)
    if g2**3 - 27 * g3**2 == 0:
        raise DegenerateCurve(f"g2^3 - 27*g3^2 = 0 for g2 = {g2}, g3 = {g3}")
    q = poly_t(4 * T**3 - QQ.to_sympy(g2) * T - QQ.to_sympy(g3))
    ctx = ctx_from_q(q)
    return replace(ctx, g2=g2, g3=g3)
