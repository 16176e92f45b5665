"""Seeded random instances shared by unit and acceptance tests."""

import random
from fractions import Fraction

import numpy as np

from cycletime.dioid import NEG_INF, POS_INF
from cycletime.ncp import PicInstance
from cycletime.pteg import Pteg
from cycletime.sldi import Sldi

DENSITIES = (0.2, 0.5, 0.9)


def random_rmax(rng: random.Random, rows: int, cols: int | None = None, density=0.5, lo=-5, hi=5):
    """Exact matrix over R_max: each entry an integer in [lo, hi] with
    probability ``density``, otherwise -inf."""
    cols = rows if cols is None else cols
    M = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            M[i, j] = Fraction(rng.randint(lo, hi)) if rng.random() < density else NEG_INF
    return M


def random_extended(rng: random.Random, rows: int, cols: int | None = None, lo=-5, hi=5):
    """Exact matrix over the extended reals, infinities included."""
    cols = rows if cols is None else cols
    M = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            u = rng.random()
            M[i, j] = NEG_INF if u < 0.25 else POS_INF if u < 0.3 else Fraction(rng.randint(lo, hi))
    return M


def random_pic(rng: random.Random, n: int | None = None, density: float | None = None) -> PicInstance:
    n = n or rng.randint(1, 6)
    density = density if density is not None else rng.choice(DENSITIES)
    return PicInstance(*(random_rmax(rng, n, density=density) for _ in range(3)))


def _windows(rng: random.Random, n: int, density: float, lo_range, width):
    A = np.full((n, n), NEG_INF, dtype=object)
    B = np.full((n, n), POS_INF, dtype=object)
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                A[i, j] = Fraction(rng.randint(*lo_range))
                if rng.random() < 0.6:
                    B[i, j] = A[i, j] + rng.randint(0, width)
            elif rng.random() < 0.1:
                B[i, j] = Fraction(rng.randint(*lo_range))
    return A, B


def random_pteg(rng: random.Random, n: int, density: float = 0.4) -> Pteg:
    """Random characteristic matrices of a P-TEG with small integer windows."""
    A0, B0 = _windows(rng, n, density / 2, (0, 4), 6)
    A1, B1 = _windows(rng, n, density, (0, 6), 8)
    return Pteg(A0, A1, B0, B1)


def random_sldi(rng: random.Random, n: int | None = None, modes: int | None = None) -> Sldi:
    n = n or rng.randint(1, 4)
    modes = modes or rng.randint(1, 3)
    density = rng.choice((0.3, 0.5, 0.8))
    return Sldi({"abc"[k]: random_pteg(rng, n, density) for k in range(modes)})


def random_schedule(rng: random.Random, alphabet, max_len: int = 8) -> tuple:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_len)))
