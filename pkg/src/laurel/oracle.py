"""Naive reference scan and random test pairs."""

from __future__ import annotations

import itertools
import random

from .algebra import LaurentSeries, Poly


def random_pair(p: int, seed: int, prec: int) -> tuple[LaurentSeries, LaurentSeries]:
    """Two series in X^-1 F_p[[X^-1]]; coefficient i of each is drawn in turn, so
    a higher ``prec`` extends rather than changes the pair."""
    rnd = random.Random(seed)
    a, b = [], []
    for _ in range(prec):
        a.append(rnd.randrange(p))
        b.append(rnd.randrange(p))
    return LaurentSeries(p, -1, a, prec), LaurentSeries(p, -1, b, prec)


def brute_force_scan(theta: LaurentSeries, phi: LaurentSeries, D: int):
    """(min product1, argmin, min product2, argmin) over every nonzero q of degree <= D.

    Each q is multiplied out in full; argmins are reported in monic form.
    """
    p = theta.p

    def key(v):
        return float("-inf") if v is None else v

    best1 = best2 = None
    for d in range(D + 1):
        for cs in itertools.product(range(p), repeat=d):
            for lead in range(1, p):
                q = Poly(list(cs) + [lead], p)
                e1 = (q * theta).frac_norm().exp
                e2 = (q * phi).frac_norm().exp
                v1 = None if e1 is None or e2 is None else d + e1 + e2
                v2 = None if v1 is None else v1 + d
                name = str(q.monic())
                c1 = (key(v1), name, v1)
                c2 = (key(v2), name, v2)
                if best1 is None or c1[:2] < best1[:2]:
                    best1 = c1
                if best2 is None or c2[:2] < best2[:2]:
                    best2 = c2
    return best1[2], best1[1], best2[2], best2[1]
