"""
Arithmetic module – exact rationals and the base differential field k = Q(z).

Scalars are sympy ground-domain elements: ``QQ`` for the constants and the
fraction field ``QQ(z)`` for k.  Both are kept in canonical (cancelled) form
by sympy, so equality of values is equality of representations.  The
derivation on k is d/dz.
"""

from __future__ import annotations

import logging
import operator
from typing import Callable, Dict, Optional, Tuple

from sympy import QQ, Poly, Symbol
from sympy.polys.fields import FracElement

from weierstrass_int.errors import DivisionByZero

logger = logging.getLogger("weierstrass_int.arith")

# ── Domains ──────────────────────────────────────────────────

Z = Symbol("z")
KZ = QQ.frac_field(Z)
ZGEN = KZ.field.gens[0]

BigRational = QQ.dtype
RatFunZ = FracElement
PolyZ = Poly

_FIELD_OPS: Dict[str, Callable] = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rational(numerator: int, denominator: int = 1) -> BigRational:
    """Build the exact rational ``numerator/denominator``."""
    if denominator == 0:
        raise DivisionByZero(f"{numerator}/0")
    return QQ(numerator, denominator)


def ratfun(value) -> RatFunZ:
    """Coerce an int, a rational, a sympy expression in z or an element of k into k."""
    if isinstance(value, RatFunZ):
        return value
    if isinstance(value, (int, BigRational)):
        return KZ.convert(value)
    return KZ.from_sympy(value)


def constant_value(a: RatFunZ) -> Optional[BigRational]:
    """Return *a* as a rational if it is a constant of k, else ``None``."""
    if a.numer.is_ground and a.denom.is_ground:
        return QQ.from_sympy(KZ.to_sympy(a))
    return None


# ── Conversion between k and Q[z] ────────────────────────────


def polyz(expr) -> PolyZ:
    """Return *expr* as a polynomial in z over Q."""
    return Poly(expr, Z, domain=QQ)


def to_polyz_pair(a: RatFunZ) -> Tuple[PolyZ, PolyZ]:
    """Split *a* into ``(num, den)`` over Q[z] with a monic denominator."""
    num = polyz(a.numer.as_expr())
    den = polyz(a.denom.as_expr())
    lc = den.rep.LC()
    return num.quo_ground(lc), den.monic()


def from_polyz(num: PolyZ, den: PolyZ | None = None) -> RatFunZ:
    """Inverse of :func:`to_polyz_pair`."""
    if den is None:
        return KZ.from_sympy(num.as_expr())
    if den.is_zero:
        raise DivisionByZero("zero denominator in Q(z)")
    return KZ.from_sympy(num.as_expr() / den.as_expr())


# ── Field operations ─────────────────────────────────────────


def base_field_ops(a: RatFunZ, b: RatFunZ, op: str) -> RatFunZ:
    """Exact ``add | sub | mul | div`` in k.

    Raises
    ------
    DivisionByZero
        If ``op == "div"`` and *b* is zero.
    ValueError
        For an unknown operation name.
    """
    if op not in _FIELD_OPS:
        raise ValueError(f"unknown field operation: {op!r}")
    a, b = ratfun(a), ratfun(b)
    if op == "div" and not b:
        raise DivisionByZero("division by zero in Q(z)")
    return _FIELD_OPS[op](a, b)


def deriv_z(f: RatFunZ) -> RatFunZ:
    """The derivation d/dz of k."""
    return ratfun(f).diff(ZGEN)


# ── Rational integration in k ────────────────────────────────


def gcdex_diophantine(a: Poly, b: Poly, c: Poly) -> Tuple[Poly, Poly]:
    """Solve ``s*a + t*b == c`` with ``s == 0`` or ``deg s < deg b``.

    *c* must lie in the ideal generated by *a* and *b*.
    """
    s, g = a.half_gcdex(b)
    s = s * c.exquo(g)
    if not s.is_zero and s.degree() >= b.degree():
        s = s.rem(b)
    t = (c - s * a).exquo(b)
    return s, t


def hermite_rational(f: RatFunZ) -> Tuple[RatFunZ, PolyZ, RatFunZ]:
    """Hermite reduction over k = Q(z), linear version.

    Returns
    -------
    tuple
        ``(g, poly, r)`` with ``f = g' + poly + r``, *r* proper with a
        squarefree denominator.
    """
    a, d = to_polyz_pair(ratfun(f))
    poly, a = a.div(d)
    g = KZ.zero

    dm = d.gcd(d.diff())
    ds = d.quo(dm)
    while dm.degree() > 0:
        ddm = dm.diff()
        dm2 = dm.gcd(ddm)
        dms = dm.quo(dm2)
        ds_ddm_dm = (ds * ddm).quo(dm)
        b, c = gcdex_diophantine(-ds_ddm_dm, dms, a)
        a = c - b.diff() * ds.quo(dms)
        g = g + from_polyz(b, dm)
        dm = dm2

    q, r = a.div(ds)
    poly = poly + q
    return g, poly, from_polyz(r, ds)


def is_derivative_in_k(f: RatFunZ) -> Optional[RatFunZ]:
    """Return F with ``deriv_z(F) == f`` when f ∈ k', otherwise ``None``."""
    g, poly, r = hermite_rational(f)
    if r:
        logger.debug("no antiderivative in Q(z): residual %s", r)
        return None
    return g + from_polyz(poly.integrate())
