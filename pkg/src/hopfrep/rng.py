"""Deterministic seeded randomness.

Every randomized search derives its stream from (seed, labels...) through a
stable hash, so results are reproducible bit-for-bit across runs and across
parallel sweeps (each task owns the stream named by its task labels).
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction
from typing import Iterable, List

from .field import Scalar, sc
from .linalg import Mat

DEFAULT_SEED = 0


def stream(seed: int, *labels) -> random.Random:
    h = hashlib.sha256(repr((seed,) + labels).encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


SMALL_POOL = [0, 1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 2)]
UNIT_POOL = [1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3)]


def random_scalar(rng: random.Random, pool=SMALL_POOL) -> Scalar:
    return sc(rng.choice(pool))


def random_invertible(rng: random.Random, n: int) -> Mat:
    """Invertible by construction: product of unit-triangular and diagonal factors."""
    lower = Mat.identity(n)
    upper = Mat.identity(n)
    for i in range(n):
        for j in range(i):
            if rng.random() < 0.5:
                lower.rows[i][j] = random_scalar(rng)
            if rng.random() < 0.5:
                upper.rows[j][i] = random_scalar(rng)
    diag = Mat.diag([sc(rng.choice(UNIT_POOL)) for _ in range(n)])
    return lower * diag * upper


def random_matrix(rng: random.Random, n: int, m: int) -> Mat:
    out = Mat.zeros(n, m)
    for i in range(n):
        for j in range(m):
            out.rows[i][j] = random_scalar(rng)
    return out
