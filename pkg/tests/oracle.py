"""Brute-force lattice enumeration used as an independent reference."""

import math
from fractions import Fraction

import numpy as np


def brute(germ, a, bound):
    """Minimum of the log discrepancy over lattice points with all w_i in (0, bound]."""
    r, d = germ.index, germ.dim
    facs = [(np.array(i.generators, dtype=np.int64), e) for i, e in a.factors if e]
    den = 1
    for _, e in facs:
        den = den * e.denominator // math.gcd(den, e.denominator)
    best = None
    for k in range(r):
        base = [k * x % r for x in germ.weights]  # numerators over r
        axes = [np.arange(b if b else r, r * bound + 1, r, dtype=np.int64) for b in base]
        u = np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, d)
        val = u.sum(axis=1) * den
        for gens, e in facs:
            val = val - (e * den).numerator * (u @ gens.T).min(axis=1)
        m = Fraction(int(val.min()), r * den)
        best = m if best is None else min(best, m)
    return best
