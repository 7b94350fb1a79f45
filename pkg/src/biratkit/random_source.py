"""Seeded randomness for the probabilistic methods.

Streams depend only on the seed (Mersenne Twister seeded from an int or a
string hashed with SHA-512), so they are reproducible across platforms.
"""

from __future__ import annotations

import random
from typing import List

from .field import FieldSpec
from .polynomial import Polynomial, PolynomialRing

QQ_BOUND = 10_000


class RandomSource:
    def __init__(self, seed: int = 0, qq_bound: int = QQ_BOUND):
        self.seed = seed
        self.qq_bound = qq_bound
        self._rng = random.Random(seed)

    def spawn(self, label) -> "RandomSource":
        """Independent child stream determined by (seed, label)."""
        return RandomSource_from(f"{self.seed}/{label}", self.qq_bound)

    def scalar(self, field: FieldSpec, nonzero: bool = False):
        while True:
            v = field.random_element(self._rng, self.qq_bound)
            if v or not nonzero:
                return v

    def scalars(self, field: FieldSpec, k: int) -> list:
        return [self.scalar(field) for _ in range(k)]

    def linear_form(self, ring: PolynomialRing) -> Polynomial:
        while True:
            f = ring.linear_form(self.scalars(ring.field, ring.nvars))
            if not f.is_zero():
                return f

    def combination(self, polys: List[Polynomial]) -> Polynomial:
        """Random K-linear combination of ``polys`` (never identically zero coefficients)."""
        ring = polys[0].ring
        field = ring.field
        out = {}
        for g in polys:
            c = self.scalar(field)
            if not c:
                continue
            for m, v in g.terms.items():
                out[m] = out.get(m, 0) + c * v
        if field.p:
            p = field.p
            return Polynomial(ring, {m: v % p for m, v in out.items() if v % p})
        return Polynomial(ring, {m: v for m, v in out.items() if v})

    def point(self, field: FieldSpec, k: int) -> list:
        while True:
            pt = self.scalars(field, k)
            if any(pt):
                return pt

    def randrange(self, n: int) -> int:
        return self._rng.randrange(n)


class _StrSeeded(RandomSource):
    def __init__(self, seed_str: str, qq_bound: int):
        self.seed = seed_str
        self.qq_bound = qq_bound
        self._rng = random.Random(seed_str)


def RandomSource_from(seed_str: str, qq_bound: int = QQ_BOUND) -> RandomSource:
    return _StrSeeded(seed_str, qq_bound)
