"""
Polynomial module – polynomials and rational functions in t over k = Q(z).

``PolyT`` is a sympy ``Poly`` in ``t`` whose domain is the fraction field
``QQ(z)``; ``RatFunT`` is a normalized quotient of two of them.  Two
derivations act on k[t]: κ differentiates the coefficients, ∂_t is the
formal t-derivative.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.subresultants_qq_zz import sylvester

from weierstrass_int.arith import KZ, Z, BigRational, RatFunZ, deriv_z, ratfun
from weierstrass_int.errors import (
    DivisionByZero,
    InvalidArgument,
    NotInvertible,
    OrderOfZero,
)

logger = logging.getLogger("weierstrass_int.polyt")

T = Symbol("t")
PolyT = Poly


# ── Construction helpers ─────────────────────────────────────


def poly_t(expr) -> PolyT:
    """Return *expr* (a sympy expression in t and z, or a number) as a PolyT."""
    if isinstance(expr, Poly):
        return expr
    if isinstance(expr, (int, BigRational, RatFunZ)):
        return const_t(expr)
    return Poly(expr, T, domain=KZ)


def const_t(c) -> PolyT:
    """The constant polynomial *c* (an int, rational or element of k)."""
    return Poly.from_list([ratfun(c)], T, domain=KZ)


def from_coeffs(coeffs: Sequence) -> PolyT:
    """Build a PolyT from coefficients indexed by the power of t."""
    return Poly.from_list([ratfun(c) for c in reversed(list(coeffs))], T, domain=KZ)


def coeffs(p: PolyT) -> List[RatFunZ]:
    """Coefficients of *p* indexed by the power of t (empty for zero)."""
    return list(reversed(p.rep.to_list()))


def deg(p: PolyT) -> int:
    """t-degree with the convention deg 0 = -1."""
    return -1 if p.is_zero else p.degree()


def lc(p: PolyT) -> RatFunZ:
    """Leading coefficient as an element of k."""
    return KZ.zero if p.is_zero else p.rep.LC()


ONE = const_t(1)
ZERO = const_t(0)
T_POLY = poly_t(T)


# ── Fraction-free view in Q[t, z] ────────────────────────────


def _clear_z(p: PolyT, primitive: bool = False) -> Tuple[RatFunZ, Poly]:
    """Write *p* as ``P/c`` with P in Q[t, z] and c in Q[z].

    With *primitive* the z-content of P is divided out as well; c then
    no longer relates P to p.
    """
    if p.get_domain() != KZ:
        p = p.set_domain(KZ)
    c, prim = p.clear_denoms(convert=True)
    if primitive:
        _, prim = prim.primitive()
    return ratfun(c), prim.inject()


def _restore_z(p: Poly) -> PolyT:
    return p.eject(Z).set_domain(KZ)


def _cancel(num: PolyT, den: PolyT) -> Tuple[PolyT, PolyT]:
    c_num, big_num = _clear_z(num)
    c_den, big_den = _clear_z(den)
    g = big_num.gcd(big_den)
    if g.degree(T) < 1:
        return num, den
    num = _restore_z(big_num.exquo(g)).mul_ground(c_den / c_num)
    return num, _restore_z(big_den.exquo(g))


# ── Rational functions in t ──────────────────────────────────


@dataclass(frozen=True)
class RatFunT:
    """Normalized ``num/den`` with gcd(num, den) = 1 and a monic denominator."""

    num: PolyT
    den: PolyT = ONE

    def __post_init__(self) -> None:
        num, den = poly_t(self.num), poly_t(self.den)
        if den.is_zero:
            raise DivisionByZero("zero denominator in Q(z)(t)")
        if num.is_zero:
            den = ONE
        elif not den.is_ground:
            num, den = _cancel(num, den)
        lead = den.rep.LC()
        if lead != KZ.one:
            num, den = num.quo_ground(lead), den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def lift(cls, value) -> "RatFunT":
        if isinstance(value, RatFunT):
            return value
        return cls(poly_t(value))

    # ── Arithmetic ───────────────────────────────────────────

    def __add__(self, other) -> "RatFunT":
        other = RatFunT.lift(other)
        if self.den == other.den:
            return RatFunT(self.num + other.num, self.den)
        return RatFunT(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunT":
        return RatFunT(-self.num, self.den)

    def __sub__(self, other) -> "RatFunT":
        return self + (-RatFunT.lift(other))

    def __rsub__(self, other) -> "RatFunT":
        return RatFunT.lift(other) - self

    def __mul__(self, other) -> "RatFunT":
        other = RatFunT.lift(other)
        return RatFunT(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunT":
        other = RatFunT.lift(other)
        if not other:
            raise DivisionByZero("division by zero in Q(z)(t)")
        return RatFunT(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunT":
        return RatFunT.lift(other) / self

    def __pow__(self, n: int) -> "RatFunT":
        if n < 0:
            return RatFunT(ONE) / (self ** (-n))
        return RatFunT(self.num**n, self.den**n)

    def __bool__(self) -> bool:
        return not self.num.is_zero

    # ── Structure ────────────────────────────────────────────

    @property
    def is_poly(self) -> bool:
        return self.den.is_ground

    def as_poly(self) -> PolyT:
        if not self.is_poly:
            raise InvalidArgument(f"not a polynomial in t: {self}")
        return self.num

    def kappa(self) -> "RatFunT":
        """κ extended to k(t) by the quotient rule."""
        return RatFunT(kappa(self.num) * self.den - self.num * kappa(self.den), self.den**2)

    def partial_t(self) -> "RatFunT":
        """∂_t extended to k(t) by the quotient rule."""
        return RatFunT(
            partial_t(self.num) * self.den - self.num * partial_t(self.den),
            self.den**2,
        )

    def __str__(self) -> str:
        if self.is_poly:
            return str(self.num.as_expr())
        return f"({self.num.as_expr()})/({self.den.as_expr()})"


# ── Ring operations ──────────────────────────────────────────


def poly_ops(a: PolyT, b, op: str):
    """Exact ``add | sub | mul | divmod | eval_at`` on k[t].

    For ``eval_at`` the second argument is the point (an element of k)
    and the result lies in k.
    """
    if op == "eval_at":
        point = ratfun(b)
        acc = KZ.zero
        for c in a.rep.to_list():
            acc = acc * point + c
        return acc
    a, b = poly_t(a), poly_t(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        if b.is_zero:
            raise DivisionByZero("polynomial division by zero")
        return a.div(b)
    raise ValueError(f"unknown polynomial operation: {op!r}")


def gcd_t(a: PolyT, b: PolyT) -> PolyT:
    """Monic gcd over k[t], computed fraction-free in Q[t, z]."""
    if a.is_zero and b.is_zero:
        raise InvalidArgument("gcd of two zero polynomials")
    if a.is_zero or b.is_zero:
        return b.monic() if a.is_zero else a.monic()
    g = _clear_z(a)[1].gcd(_clear_z(b)[1])
    return _restore_z(g).monic()


def xgcd_t(a: PolyT, b: PolyT) -> Tuple[PolyT, PolyT, PolyT]:
    """Return ``(g, s, u)`` with ``s*a + u*b == g`` and g the monic gcd."""
    if a.is_zero and b.is_zero:
        raise InvalidArgument("xgcd of two zero polynomials")
    s, u, g = a.gcdex(b)
    lead = g.rep.LC()
    if lead != KZ.one:
        s, u, g = s.quo_ground(lead), u.quo_ground(lead), g.monic()
    return g, s, u


def lcm_t(polys: Iterable[PolyT]) -> PolyT:
    """Monic lcm of nonzero polynomials."""
    acc = ONE
    for p in polys:
        acc = (acc * p).exquo(gcd_t(acc, p)).monic()
    return acc


def squarefree_decomposition(d: PolyT) -> List[Tuple[PolyT, int]]:
    """Yun decomposition ``d = lc(d) * prod(D_i**mu_i)`` in increasing mu_i.

    Each ``D_i`` is monic, squarefree and of positive degree; the parts are
    pairwise coprime.
    """
    if d.is_zero:
        raise InvalidArgument("squarefree decomposition of zero")
    _, parts = _clear_z(d, primitive=True)[1].sqf_list()
    levels = [(_restore_z(p).monic(), k) for p, k in parts if p.degree(T) > 0]
    return sorted(levels, key=lambda item: item[1])


# ── Derivations ──────────────────────────────────────────────


def kappa(p: PolyT) -> PolyT:
    """Differentiate the coefficients of *p* with respect to z."""
    if p.is_zero:
        return p
    return Poly.from_list([deriv_z(c) for c in p.rep.to_list()], T, domain=KZ)


def partial_t(p: PolyT) -> PolyT:
    """Formal derivative in t."""
    return p.diff(T)


# ── Resultants ───────────────────────────────────────────────


def resultant_quadratic_m(d0_const: PolyT, d0_lin: PolyT, q: PolyT) -> PolyT:
    """res_y(d0_const + d0_lin*y, y**2 - q) in closed form."""
    return d0_const**2 - d0_lin**2 * q


def sylvester_resultant(d0_const: PolyT, d0_lin: PolyT, q: PolyT) -> PolyT:
    """The same resultant as the determinant of the Sylvester matrix in y."""
    y = Symbol("y")
    f = d0_lin.as_expr() * y + d0_const.as_expr()
    m = y**2 - q.as_expr()
    matrix = sylvester(f, m, y)
    return poly_t(matrix.det(method="berkowitz"))


# ── Modular arithmetic and orders ────────────────────────────


def mod_reduce(c: RatFunT, v: PolyT) -> PolyT:
    """The unique r with deg r < deg v and r ≡ c mod v.

    Raises
    ------
    NotInvertible
        If the denominator of *c* shares a factor with *v*.
    """
    c = RatFunT.lift(c)
    if deg(v) < 1:
        raise InvalidArgument("modulus must have positive degree")
    s, h = c.den.half_gcdex(v)
    if h.degree() > 0:
        raise NotInvertible(f"{c.den.as_expr()} is not invertible modulo {v.as_expr()}")
    s = s.quo_ground(h.rep.LC())
    return (c.num * s).rem(v)


def _multiplicity(a: PolyT, p: PolyT) -> int:
    n = 0
    while True:
        quo, rem = a.div(p)
        if not rem.is_zero:
            return n
        a, n = quo, n + 1


def order_at(f: RatFunT, p: PolyT) -> int:
    """ν_p(f) for an irreducible p (irreducibility is not checked)."""
    f = RatFunT.lift(f)
    if not f:
        raise OrderOfZero("the order of 0 is +infinity")
    if deg(p) < 1:
        raise InvalidArgument("order at a constant polynomial")
    return _multiplicity(f.num, p) - _multiplicity(f.den, p)


def order_at_infinity(f: RatFunT) -> int:
    """ν_∞(f) = deg den − deg num."""
    f = RatFunT.lift(f)
    if not f:
        raise OrderOfZero("the order of 0 is +infinity")
    return deg(f.den) - deg(f.num)
