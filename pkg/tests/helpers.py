"""Shared builders for the test-suite: fields, the worked example and random elements."""

from __future__ import annotations

import random
from typing import List, Sequence

from weierstrass_int.arith import QQ, Z, ZGEN
from weierstrass_int.field import FieldCtx, KElem, ctx_from_invariants, ctx_from_q
from weierstrass_int.polyt import T, ONE, PolyT, RatFunT, from_coeffs, poly_t

INVARIANTS = [(0, -4), (4, 1), (1, 1)]

# Denominator pools for q = 4t³ + 4: the first mixes normal and special
# factors, the second is used for the splitting oracle.
REDUCTION_POOL = [T, T + 1, T**2 - T + 1, T**2 - 2]
SPLITTING_POOL = [T, T + 1, T**2 - T + 1, T - 2, T**2 + T + 1]
# For q = 4t³ − z*t: t is special, t² − z/4 divides q_N, the rest are normal.
ASSUMED_POOL = [T, T + 1, T**2 - Z / 4, T - Z]


def example_ctx() -> FieldCtx:
    """g2 = 0, g3 = −4, i.e. q = 4t³ + 4."""
    return ctx_from_invariants(0, -4)


def assumed_ctx() -> FieldCtx:
    """q = 4t³ − z*t, accepted under the assumed hypothesis."""
    return ctx_from_q(4 * T**3 - Z * T, assume_hypothesis=True)


def z_elem(ctx: FieldCtx) -> KElem:
    return ctx.elem(ZGEN)


def example_normal(ctx: FieldCtx) -> KElem:
    """N(f) = (−4 − t')/t²."""
    return (-4 - ctx.y) / ctx.t**2


def example_special(ctx: FieldCtx) -> KElem:
    """S(f) = (2(z+1)t² + 2(2z+1)t − 4z + t')/(t + 1)."""
    t, z = ctx.t, z_elem(ctx)
    return (2 * (z + 1) * t**2 + 2 * (2 * z + 1) * t - 4 * z + ctx.y) / (t + 1)


def example_integrand(ctx: FieldCtx) -> KElem:
    return example_normal(ctx) + example_special(ctx)


def example_antiderivative(ctx: FieldCtx) -> KElem:
    """(1 + t')/t + z*t'/(t + 1)."""
    t = ctx.t
    return (1 + ctx.y) / t + z_elem(ctx) * ctx.y / (t + 1)


# ── Random elements ──────────────────────────────────────────


def random_coeff(rng: random.Random, with_z: bool = True):
    """A small integer, sometimes shifted by a multiple of z."""
    c = QQ(rng.randint(-10, 10))
    if with_z and rng.random() < 0.3:
        return QQ.to_sympy(c) + rng.randint(-3, 3) * Z
    return QQ.to_sympy(c)


def random_poly(rng: random.Random, max_deg: int, with_z: bool = True) -> PolyT:
    return from_coeffs([random_coeff(rng, with_z) for _ in range(rng.randint(0, max_deg) + 1)])


def random_denominator(
    rng: random.Random,
    pool: Sequence,
    max_factors: int = 2,
    max_mult: int = 2,
) -> PolyT:
    d = ONE
    for _ in range(rng.randint(0, max_factors)):
        d = d * poly_t(rng.choice(pool)) ** rng.randint(1, max_mult)
    return d


def random_elem(
    rng: random.Random,
    ctx: FieldCtx,
    pool: Sequence = tuple(REDUCTION_POOL),
    max_deg: int = 2,
) -> KElem:
    """A random element ``(a + b*t')/d`` with d drawn from *pool*."""
    d = random_denominator(rng, pool)
    a, b = random_poly(rng, max_deg), random_poly(rng, max_deg)
    return ctx.elem(RatFunT(a, d), RatFunT(b, d))


def random_elems(seed: int, count: int, ctx: FieldCtx, **kwargs) -> List[KElem]:
    rng = random.Random(seed)
    return [random_elem(rng, ctx, **kwargs) for _ in range(count)]
