"""Unit tests for the polyt module (k[t] and k(t))."""

from __future__ import annotations

import random

import pytest

from weierstrass_int.arith import KZ, Z, ZGEN, ratfun
from weierstrass_int.errors import DivisionByZero, InvalidArgument, NotInvertible, OrderOfZero
from weierstrass_int.polyt import (
    ONE,
    T,
    RatFunT,
    const_t,
    deg,
    gcd_t,
    kappa,
    lcm_t,
    mod_reduce,
    order_at,
    order_at_infinity,
    partial_t,
    poly_ops,
    poly_t,
    resultant_quadratic_m,
    squarefree_decomposition,
    sylvester_resultant,
    xgcd_t,
)

from tests.helpers import random_poly

G2, G3 = 4, 1


# ── Ring operations ──────────────────────────────────────────


def test_poly_ops_mul_and_divmod() -> None:
    assert poly_ops(poly_t(T + 1), poly_t(T - 1), "mul") == poly_t(T**2 - 1)
    quo, rem = poly_ops(poly_t(T**3 + 1), poly_t(T + 1), "divmod")
    assert quo == poly_t(T**2 - T + 1)
    assert rem.is_zero


def test_poly_ops_eval_at_root_of_q() -> None:
    """−1 is a root of 4t³ + 4."""
    assert poly_ops(poly_t(4 * T**3 + 4), -1, "eval_at") == KZ.zero
    assert poly_ops(poly_t(4 * T**3 + 4), 0, "eval_at") == ratfun(4)


def test_poly_ops_divide_by_zero() -> None:
    with pytest.raises(DivisionByZero):
        poly_ops(poly_t(T), const_t(0), "divmod")


def test_deg_of_zero() -> None:
    assert deg(const_t(0)) == -1
    assert deg(ONE) == 0


# ── gcd / xgcd / lcm ─────────────────────────────────────────


def test_gcd_examples() -> None:
    assert gcd_t(poly_t(T**2), poly_t(T + 1)) == ONE
    assert gcd_t(poly_t(T**3 + 1), poly_t(2 * T + 2)) == poly_t(T + 1)


def test_gcd_of_two_zeros() -> None:
    with pytest.raises(InvalidArgument):
        gcd_t(const_t(0), const_t(0))


def test_xgcd_coprime_pair() -> None:
    """s·t² + u·(t + 1) = 1."""
    a, b = poly_t(T**2), poly_t(T + 1)
    g, s, u = xgcd_t(a, b)
    assert g == ONE
    assert s * a + u * b == ONE


def test_xgcd_bezout_random() -> None:
    """Bézout identity with a monic gcd dividing both inputs."""
    rng = random.Random(3)
    for _ in range(200):
        a, b = random_poly(rng, 5), random_poly(rng, 5)
        if a.is_zero and b.is_zero:
            continue
        g, s, u = xgcd_t(a, b)
        assert s * a + u * b == g
        assert g.LC() == KZ.one
        assert a.rem(g).is_zero and b.rem(g).is_zero


def test_lcm_is_monic() -> None:
    assert lcm_t([poly_t(2 * T), poly_t(T**2 + T)]) == poly_t(T**2 + T)
    assert lcm_t([poly_t(T - Z), poly_t(T**2 - Z**2)]) == poly_t(T**2 - Z**2)


def test_gcd_with_z_denominators() -> None:
    """Denominators and contents in z do not affect the gcd."""
    a = poly_t(T**2 - Z**2).mul_ground(1 / (ZGEN + 1))
    b = poly_t((T + Z) * (T - 1)).mul_ground(ZGEN**2)
    assert gcd_t(a, b) == poly_t(T + Z)
    assert gcd_t(a, poly_t(T - 1)) == ONE


# ── Squarefree decomposition ─────────────────────────────────


def test_squarefree_decomposition_examples() -> None:
    assert squarefree_decomposition(poly_t(T**2 * (T + 1))) == [
        (poly_t(T + 1), 1),
        (poly_t(T), 2),
    ]
    assert squarefree_decomposition(poly_t(T**3 + 1)) == [(poly_t(T**3 + 1), 1)]
    assert squarefree_decomposition(poly_t((T**2 - Z) ** 2 * (T + 1) ** 3)) == [
        (poly_t(T**2 - Z), 2),
        (poly_t(T + 1), 3),
    ]
    assert squarefree_decomposition(poly_t((Z + 1) ** 2 * (T - Z) ** 2 * (T + 1))) == [
        (poly_t(T + 1), 1),
        (poly_t(T - Z), 2),
    ]


def test_squarefree_decomposition_reassembles() -> None:
    rng = random.Random(4)
    pool = [T, T + 1, T**2 - Z, T - 2]
    for _ in range(20):
        d = poly_t(3)
        for factor in rng.sample(pool, k=rng.randint(1, 3)):
            d = d * poly_t(factor) ** rng.randint(1, 3)
        levels = squarefree_decomposition(d)
        product = ONE
        for part, mu in levels:
            assert deg(gcd_t(part, partial_t(part))) == 0
            product = product * part**mu
        assert product.mul_ground(d.LC()) == d
        for i, (p1, _) in enumerate(levels):
            for p2, _ in levels[i + 1 :]:
                assert gcd_t(p1, p2) == ONE


def test_squarefree_decomposition_of_zero() -> None:
    with pytest.raises(InvalidArgument):
        squarefree_decomposition(const_t(0))


# ── Derivations ──────────────────────────────────────────────


def test_kappa_and_partial_t() -> None:
    assert kappa(poly_t(Z * T**2 + 1)) == poly_t(T**2)
    assert kappa(poly_t(4 * T**3 + 4)).is_zero
    assert partial_t(poly_t(4 * T**3 - G2 * T - G3)) == poly_t(12 * T**2 - G2)


def test_derivations_commute() -> None:
    rng = random.Random(6)
    for _ in range(20):
        p = random_poly(rng, 5)
        assert kappa(partial_t(p)) == partial_t(kappa(p))


def test_ratfunt_normalizes() -> None:
    """t/(2t²) is stored as (1/2)/t with a monic denominator."""
    f = RatFunT(poly_t(T), poly_t(2 * T**2))
    assert f.den == poly_t(T)
    assert f.num == const_t(ratfun(1) / 2)
    with pytest.raises(DivisionByZero):
        RatFunT(ONE, const_t(0))


def test_ratfunt_cancels_across_z_denominators() -> None:
    """((t + z)(t − 1)/(z + 1)) / (z(t + z)) = (t − 1)/(z(z + 1))."""
    num = poly_t((T + Z) * (T - 1)).mul_ground(1 / (ZGEN + 1))
    f = RatFunT(num, poly_t(Z * (T + Z)))
    assert f.den == ONE
    assert f.num == poly_t(T - 1).mul_ground(1 / (ZGEN * (ZGEN + 1)))

    g = RatFunT(poly_t(T**2 - Z**2), poly_t(2 * Z * T - 2 * Z**2))
    assert g.den == ONE
    assert g.num == poly_t(T + Z).mul_ground(1 / (2 * ZGEN))


def test_ratfunt_quotient_rules() -> None:
    f = RatFunT(poly_t(Z), poly_t(T))
    assert f.kappa() == RatFunT(ONE, poly_t(T))
    assert f.partial_t() == RatFunT(poly_t(-Z), poly_t(T**2))


# ── Resultants ───────────────────────────────────────────────


def test_resultant_closed_form_examples() -> None:
    q = poly_t(4 * T**3 + 4)
    assert resultant_quadratic_m(const_t(0), ONE, q) == -q
    assert resultant_quadratic_m(ONE, const_t(0), q) == ONE
    q = poly_t(4 * T**3 - G2 * T - G3)
    dq = partial_t(q)
    assert resultant_quadratic_m(const_t(0), dq, q) == -(dq**2) * q


def test_resultant_matches_sylvester_determinant() -> None:
    rng = random.Random(9)
    for _ in range(100):
        c, b, q = random_poly(rng, 3), random_poly(rng, 2), random_poly(rng, 3)
        if b.is_zero:
            b = ONE
        assert resultant_quadratic_m(c, b, q) == sylvester_resultant(c, b, q)


# ── Modular reduction ────────────────────────────────────────


def test_mod_reduce_examples() -> None:
    t = poly_t(T)
    assert mod_reduce(RatFunT(const_t(-4), poly_t(2 * T**3 - 4)), t) == ONE
    assert mod_reduce(RatFunT(poly_t(T**2 + 3)), t) == const_t(3)
    assert mod_reduce(RatFunT(ONE, poly_t(T + 2)), poly_t(T + 1)) == ONE


def test_mod_reduce_higher_degree_modulus() -> None:
    """r ≡ c mod v for a quadratic v."""
    v = poly_t(T**2 - Z)
    c = RatFunT(poly_t(T**3 + Z), poly_t(T + 1))
    r = mod_reduce(c, v)
    assert deg(r) < 2
    assert (c.num - r * c.den).rem(v).is_zero


def test_mod_reduce_not_invertible() -> None:
    with pytest.raises(NotInvertible):
        mod_reduce(RatFunT(ONE, poly_t(T)), poly_t(T**2 + T))


# ── Orders ───────────────────────────────────────────────────


def test_orders_examples() -> None:
    assert order_at_infinity(RatFunT(poly_t(T**2 + 1), poly_t(T**3))) == 1
    assert order_at(RatFunT(poly_t(T + 1), poly_t(T**3)), poly_t(T)) == -3
    with pytest.raises(OrderOfZero):
        order_at(RatFunT(const_t(0)), poly_t(T))
    with pytest.raises(OrderOfZero):
        order_at_infinity(RatFunT(const_t(0)))


def test_orders_are_valuations() -> None:
    """ν(fg) = ν(f) + ν(g) and ν(f + g) ≥ min, with equality when orders differ."""
    rng = random.Random(12)
    p = poly_t(T + 1)
    pool = [T, T + 1, T**2 - 2]
    for _ in range(25):
        f = RatFunT(random_poly(rng, 3), poly_t(rng.choice(pool)) ** rng.randint(1, 2))
        g = RatFunT(random_poly(rng, 3), poly_t(rng.choice(pool)) ** rng.randint(1, 2))
        if not f or not g:
            continue
        assert order_at(f * g, p) == order_at(f, p) + order_at(g, p)
        assert order_at_infinity(f * g) == order_at_infinity(f) + order_at_infinity(g)
        if f + g:
            low = min(order_at(f, p), order_at(g, p))
            assert order_at(f + g, p) >= low
            if order_at(f, p) != order_at(g, p):
                assert order_at(f + g, p) == low
