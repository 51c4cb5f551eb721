"""Shared builders for randomized exact-arithmetic tests."""

from __future__ import annotations

import random
from fractions import Fraction

from crtypes.gaussian import GaussianRational
from crtypes.poly import Poly, PolyRing

SMALL_COEFFS = [
    GaussianRational(0),
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
    GaussianRational(2),
    GaussianRational(Fraction(1, 2)),
    GaussianRational(1, 1),
]


def random_poly(ring: PolyRing, rng: random.Random, max_terms: int = 4,
                max_exp: int = 2) -> Poly:
    """A random sparse polynomial with small exponents and coefficients."""
    p = ring.zero()
    for _ in range(rng.randrange(max_terms + 1)):
        key = tuple(rng.randrange(max_exp + 1) for _ in range(2 * ring.nv))
        c = rng.choice(SMALL_COEFFS)
        p = p + ring.monomial(key, c)
    return p


def random_point(ring: PolyRing, rng: random.Random):
    vals = [
        GaussianRational(0),
        GaussianRational(1),
        GaussianRational(-1),
        GaussianRational(0, 1),
        GaussianRational(Fraction(1, 2), Fraction(-1, 2)),
        GaussianRational(2, 1),
    ]
    return [rng.choice(vals) for _ in range(ring.nv)]
