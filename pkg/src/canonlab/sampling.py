"""Seeded random displays for property sweeps.

The generator produces triangular-by-construction displays with prescribed
diagonal tangent valuations, so the Hasse invariant is exact and the
strict level bound holds by construction.  The residue skeleton of the
structure matrix is resampled until its determinant is a unit, which is
quick; everything after that is deterministic in the rng.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Optional, Sequence

from .display import DisplayData
from .ring import LocalFieldElem
from .witt import WittVec

DEFAULT_SEED = 20260810


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    """Seed for randomized sweeps; CANONLAB_SEED overrides the default."""
    raw = os.environ.get("CANONLAB_SEED")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"CANONLAB_SEED must be an integer, got {raw!r}")


def random_integral_element(rng: random.Random, p: int, e: int, size: int = 3) -> LocalFieldElem:
    """A random element of the valuation ring with small coefficients."""
    coeffs = [Fraction(rng.randint(-size, size)) for _ in range(e)]
    return LocalFieldElem(p, e, tuple(coeffs))


def _residue_skeleton(rng, p, g, h, zero_diag, pairs):
    """Random residue matrix over F_p honoring the triangular zero pattern,
    resampled until invertible."""
    from ._linalg import det

    for _ in range(200):
        M = [[0] * h for _ in range(h)]
        for i in range(g):
            for j in range(g):
                if i > j:
                    M[i][j] = 0
                elif i == j:
                    M[i][j] = 0 if i in zero_diag else rng.randint(1, p - 1)
                else:
                    M[i][j] = rng.randint(0, p - 1)
            for j in range(g, h):
                M[i][j] = rng.randint(0, p - 1)
        for j in range(g, h):
            for t in range(h):
                M[j][t] = 0
        for i, j in pairs.items():
            M[i][j] = 1  # tangent row reaches its paired column
            M[j][i] = 1  # paired row reaches back
        unpaired = [j for j in range(g, h) if j not in pairs.values()]
        for j in unpaired:
            M[j][j] = 1
            for t in range(h):
                if t != j and rng.random() < 0.3:
                    M[j][t] = rng.randint(0, p - 1)
        d = det([[Fraction(x) for x in row] for row in M])
        if d != 0 and d.numerator % p != 0:
            return M
    raise RuntimeError("could not sample an invertible residue skeleton")


def random_triangular_display(
    rng: random.Random,
    p: int,
    e: int,
    g: int,
    h: int,
    N: int,
    L: int = 6,
    allow_ramified_hasse: bool = True,
) -> DisplayData:
    """A valid display with upper-triangular tangent block mod pR and
    H < (p-1)/p^N by construction."""
    bound = Fraction(p - 1, p ** N)
    U = [Fraction(0)] * g
    if (
        allow_ramified_hasse
        and e >= 2
        and Fraction(1, e) < bound
        and h > g
        and rng.random() < 0.75
    ):
        U[rng.randrange(g)] = Fraction(1, e)
    zero_diag = {i for i in range(g) if U[i] > 0}
    free_l = list(range(g, h))
    pairs = {}
    for i in sorted(zero_diag):
        pairs[i] = free_l.pop(rng.randrange(len(free_l)))
    skeleton = _residue_skeleton(rng, p, g, h, zero_diag, pairs)

    pi = LocalFieldElem.pi(p, e)
    rows = []
    for i in range(h):
        row = []
        for j in range(h):
            base = LocalFieldElem.from_rational(skeleton[i][j], p, e)
            if i < g and j < g and i == j and i in zero_diag:
                unit = rng.randint(1, p - 1)
                k = int(U[i] * e)
                x0 = unit * LocalFieldElem.pi_pow(p, e, k)
                # optional junk strictly above the prescribed valuation
                if rng.random() < 0.5:
                    x0 = x0 + p * random_integral_element(rng, p, e, 2)
            elif i < g and j < g and i > j:
                x0 = (
                    p * random_integral_element(rng, p, e, 2)
                    if rng.random() < 0.5
                    else LocalFieldElem.zero(p, e)
                )
            else:
                x0 = base
                if rng.random() < 0.4:
                    x0 = x0 + pi * LocalFieldElem.from_rational(
                        rng.randint(0, p - 1), p, e
                    ) if e > 1 else x0 + p * random_integral_element(rng, p, e, 1)
            comps = [x0]
            for _ in range(L - 1):
                comps.append(
                    random_integral_element(rng, p, e, 2)
                    if rng.random() < 0.3
                    else LocalFieldElem.zero(p, e)
                )
            row.append(WittVec(tuple(comps)))
        rows.append(tuple(row))
    return DisplayData(g, h, tuple(rows))


def sweep_parameters(rng: random.Random, count: int) -> list:
    """(p, e, g, h, N) combinations for a hypotheses sweep."""
    out = []
    while len(out) < count:
        p = rng.choice([2, 3])
        e = rng.choice([1, 2, 3])
        g = rng.randint(1, 3)
        h = rng.randint(g, min(5, g + 3))
        N = rng.choice([1, 1, 2])
        out.append((p, e, g, h, N))
    return out
