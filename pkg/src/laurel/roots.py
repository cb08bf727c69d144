"""Roots of polynomials in F_p[X][Z] inside F_p((X^-1)) by Newton lifting.

Convergence is certified with Hasse derivatives.  Write P^[j] for the j-th
Hasse derivative and delta = P(z)/P'(z).  If

    |P^[j](z)| * |delta|^(j-1) < |P'(z)|     for every j >= 2,

Newton's iteration from z converges to a root r with |r - z| <= |delta|, the
unique root in that ball.  For integral data this is the usual
|P(z)| < |P'(z)|^2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .algebra import LaurentSeries, NormLog2, Poly, PrecisionError, _same_field


class HenselConditionError(ValueError):
    """The seed is not close enough to a simple root."""


class BivarPoly:
    """P(X, Z) = sum_i coeffs[i](X) * Z^i."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Sequence[Poly], p: Optional[int] = None):
        cs = list(coeffs)
        if p is None:
            if not cs:
                raise ValueError("need p for an empty polynomial")
            p = cs[0].p
        for c in cs:
            if c.p != p:
                raise ValueError("coefficients over different fields")
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("the zero polynomial has no roots to find")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BivarPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, BivarPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __call__(self, z):
        """Horner evaluation at a LaurentSeries (or anything supporting * and +)."""
        acc = LaurentSeries.from_poly(self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * z + c
        return acc

    def hasse(self, j: int) -> "BivarPoly":
        """j-th Hasse derivative in Z: sum_i C(i, j) c_i Z^(i-j)."""
        p = self.p
        cs = [c.scale(comb(i, j)) for i, c in enumerate(self.coeffs) if i >= j]
        if not cs or all(c.is_zero() for c in cs):
            return None
        return BivarPoly(cs, p)

    def derivative(self) -> Optional["BivarPoly"]:
        return self.hasse(1)

    def __str__(self):
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            z = "" if i == 0 else ("Z" if i == 1 else f"Z^{i}")
            cs = str(c)
            if not z:
                terms.append(f"({cs})")
            elif cs == "1":
                terms.append(z)
            else:
                terms.append(f"({cs})*{z}")
        return " + ".join(terms)

    def __repr__(self):
        return f"BivarPoly({str(self)!r}, p={self.p})"


@dataclass(frozen=True)
class RootCertificate:
    root: LaurentSeries
    residual_valuation: int
    derivative_norm: NormLog2
    residuals: tuple[int, ...] = field(default=())

    @property
    def precision(self) -> Optional[int]:
        return self.root.prec


def _log(n: NormLog2) -> Optional[int]:
    return n.exp


def newton_condition(P: BivarPoly, z: LaurentSeries) -> tuple[bool, Optional[int], str]:
    """Check the Hasse-derivative convergence condition at z.

    Returns (ok, log2 |delta| bound, explanation).
    """
    val = P(z).norm()
    d1 = P.derivative()
    if d1 is None:
        return False, None, "P' vanishes identically (inseparable in Z)"
    der = d1(z).norm()
    if der.is_zero or der.upper_bound:
        return False, None, f"|P'(seed)| = {der} is indistinguishable from zero"
    if val.is_zero:
        return True, None, "seed is an exact root"
    log_delta = val.exp - der.exp
    for j in range(2, P.degree + 1):
        hj = P.hasse(j)
        if hj is None:
            continue
        h = hj(z).norm()
        if h.is_zero:
            continue
        if h.exp + (j - 1) * log_delta >= der.exp:
            return False, log_delta, (
                f"|P^[{j}](seed)| * |P(seed)/P'(seed)|^{j - 1} = 2^{h.exp + (j - 1) * log_delta}"
                f" is not below |P'(seed)| = 2^{der.exp}")
    return True, log_delta, "ok"


def residual_valuation(value: LaurentSeries) -> int:
    """Largest v with |value| <= 2^-v provable from the known coefficients."""
    if value.is_zero():
        if value.prec is None:
            raise ValueError("exact zero residual has infinite valuation")
        return value.prec + 1
    return -value.top


def verify_algebraic(P: BivarPoly, F: LaurentSeries) -> int:
    """Provable valuation v of P(F): |P(F)| <= 2^-v.

    A negative or small v with a nonzero leading term is a refutation of
    P(F) = 0 at that scale.
    """
    _same_field(P.coeffs[0], F)
    value = P(F)
    if value.is_zero() and value.prec is None:
        return 10**9
    return residual_valuation(value)


def _slack(P: BivarPoly, top: int) -> int:
    # worst-case precision loss in Horner evaluation at a series of leading exponent top
    return max(c.degree + max(0, i - 1) * max(top, 0) for i, c in enumerate(P.coeffs)) + 2


def newton_root(P: BivarPoly, seed: LaurentSeries, target: int, max_iter: int = 200) -> RootCertificate:
    """Lift ``seed`` to a root F with |P(F)| <= 2^-target."""
    p = P.p
    _same_field(P.coeffs[0], seed)
    z = seed.with_precision(None)
    if z.is_zero() and P(z).is_zero():
        return RootCertificate(LaurentSeries.zero(p, target), 10**9, NormLog2.ZERO)
    ok, _, why = newton_condition(P, z)
    if not ok:
        raise HenselConditionError(why)
    d1 = P.derivative()
    top = z.top if z.top is not None else 0
    work = target + _slack(P, top)
    residuals: list[int] = []
    for _ in range(max_iter):
        zs = z.truncate(work).with_precision(work) if z.prec is None else z
        val = P(zs)
        der = d1(zs)
        if der.is_zero():
            raise PrecisionError("derivative indistinguishable from zero during lifting")
        residuals.append(residual_valuation(val))
        if val.is_zero():
            root_prec = min(work, val.prec + der.top)
            root = zs.truncate(root_prec)
            v = verify_algebraic(P, root)
            if v >= target:
                ok, _, why = newton_condition(P, root.with_precision(None))
                if not ok:
                    raise HenselConditionError(f"lifted value left the convergence region: {why}")
                return RootCertificate(root, v, der.norm(), tuple(residuals))
            work += target - v + 4
            continue
        delta = val / der
        z = (zs - delta).truncate(work).with_precision(None)
    raise PrecisionError("Newton iteration did not converge")


def seed_candidates(p: int, top: int, depth: int):
    for lead in range(1, p):
        for rest in itertools.product(range(p), repeat=depth - 1):
            yield LaurentSeries(p, top, (lead,) + rest, None)


def seed_search(P: BivarPoly, top_range: tuple[int, int], depth: int = 4,
                widen: bool = True) -> list[LaurentSeries]:
    """One Newton seed per root whose leading exponent lies in ``top_range``.

    Candidates are all Laurent polynomials with a nonzero coefficient at
    X^top and ``depth`` coefficients in total.  Candidates that converge to
    the same root are merged; the seed reported for a root is its own
    truncation when that passes the convergence test.  An empty list means
    no root was found with leading exponent in range.  If nothing is found
    the depth is doubled once.
    """
    lo, hi = top_range
    branches: list[tuple[LaurentSeries, LaurentSeries]] = []  # (lifted root, first seed)
    for top in range(lo, hi + 1):
        for z in seed_candidates(P.p, top, depth):
            ok, log_delta, _ = newton_condition(P, z)
            if not ok:
                continue
            if log_delta is None:
                log_delta = -(10**6)
            if any(_within(z, r, log_delta) for r, _ in branches):
                continue
            need = max(-log_delta, depth - top, 0) + 4
            root = newton_root(P, z, need + _slack(P, max(top, 0))).root
            if not any(_within(root, r, log_delta) for r, _ in branches):
                branches.append((root, z))
    if not branches and widen:
        return seed_search(P, top_range, 2 * depth, widen=False)
    seeds = []
    for root, first in branches:
        own = root.truncate(depth - 1 - root.top).with_precision(None) if root.top is not None else first
        ok, _, _ = newton_condition(P, own)
        seeds.append(own if ok else first)
    return sorted(seeds, key=lambda s: (s.top if s.top is not None else 0, s.coeffs))


def _within(z: LaurentSeries, root: LaurentSeries, log_radius: int) -> bool:
    diff = (z - root).norm()
    return diff.exp is None or diff.exp <= log_radius


def find_root(P: BivarPoly, target: int, top_range: tuple[int, int], depth: int = 4,
              prefix: Optional[Sequence[int]] = None) -> RootCertificate:
    """Seed search followed by lifting; ``prefix`` selects a branch by its leading coefficients."""
    seeds = seed_search(P, top_range, depth)
    if prefix is not None:
        seeds = [s for s in seeds if tuple(s.coeffs[: len(prefix)]) == tuple(prefix)]
    if not seeds:
        raise HenselConditionError(f"no root with leading exponent in {top_range}")
    if len(seeds) > 1:
        raise ValueError(f"{len(seeds)} roots match; pass a prefix to select one")
    return newton_root(P, seeds[0], target)


def bivar(p: int, *coeffs: Sequence[int]) -> BivarPoly:
    """Shorthand: bivar(p, c0, c1, ...) with each c_i a constant-first coefficient list."""
    return BivarPoly([Poly(c, p) for c in coeffs], p)
