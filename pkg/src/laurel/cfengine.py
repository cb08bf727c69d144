"""Continued fractions in F_p((X^-1)).

A truncated series is expanded by running Euclid on the rational function it
equals up to its precision.  A partial quotient a_{n+1} is emitted only while

    2 * (deg q_n + deg a_{n+1}) + 2 <= N

where N is the input precision: every series agreeing with the input through
X^-N then has the same first n+1 partial quotients, so no emitted letter can
be contradicted by a more precise input.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .algebra import LaurentSeries, Poly, PrecisionError, _same_field, series_from_rational


class Halt(str, Enum):
    COUNT = "requested-count-reached"
    PRECISION = "precision-exhausted"
    RATIONAL = "input-was-rational"


class PrecisionShortfall(PrecisionError):
    """A word is too short to pin down the requested precision."""

    def __init__(self, requested: int, achievable: int):
        super().__init__(f"word certifies precision {achievable}, {requested} requested")
        self.requested = requested
        self.achievable = achievable


@dataclass(frozen=True)
class CFWord:
    """[a0; a1, a2, ...] with every tail letter of degree >= 1."""

    a0: Poly
    tail: tuple[Poly, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(self.tail))
        for i, a in enumerate(self.tail, start=1):
            _same_field(self.a0, a)
            if a.degree < 1:
                raise ValueError(f"partial quotient a_{i} = {a} has degree < 1")

    @classmethod
    def from_letters(cls, letters: Sequence[Poly]) -> "CFWord":
        if not letters:
            raise ValueError("a continued fraction needs at least a_0")
        return cls(letters[0], tuple(letters[1:]))

    @classmethod
    def from_tail(cls, tail: Iterable[Poly], p: int) -> "CFWord":
        """[0; tail]"""
        return cls(Poly.zero(p), tuple(tail))

    @property
    def p(self) -> int:
        return self.a0.p

    @property
    def letters(self) -> tuple[Poly, ...]:
        return (self.a0,) + self.tail

    def __len__(self):
        """Number of letters including a_0."""
        return 1 + len(self.tail)

    def prefix(self, count: int) -> "CFWord":
        """The first ``count`` letters (a_0 included)."""
        return CFWord(self.a0, self.tail[:max(0, count - 1)])

    def __str__(self):
        inner = ", ".join(str(a) for a in self.tail)
        return f"[{self.a0}; {inner}]" if self.tail else f"[{self.a0}]"


@dataclass(frozen=True)
class ConvergentPair:
    n: int
    p: Poly
    q: Poly


@dataclass(frozen=True)
class ExpansionResult:
    word: CFWord
    halt: Halt
    precision: Optional[int] = None


# ---------------------------------------------------------------- convergents


def convergents(w: CFWord) -> list[ConvergentPair]:
    """p_n/q_n for n = 0 .. len(tail), with (p_-1, q_-1) = (1, 0)."""
    p = w.p
    p_prev, q_prev = Poly.one(p), Poly.zero(p)
    p_cur, q_cur = w.a0, Poly.one(p)
    out = [ConvergentPair(0, p_cur, q_cur)]
    for n, a in enumerate(w.tail, start=1):
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        out.append(ConvergentPair(n, p_cur, q_cur))
    return out


def denominator_degrees(w: CFWord) -> list[int]:
    """deg q_n for n = 0 .. len(tail), straight from the letter degrees."""
    out, d = [0], 0
    for a in w.tail:
        d += a.degree
        out.append(d)
    return out


def reversal_quotient(w: CFWord, n: Optional[int] = None) -> tuple[Poly, Poly]:
    """(q_{n-1}, q_n); their ratio is [0; a_n, ..., a_1]."""
    if n is None:
        n = len(w.tail)
    if n < 1 or n > len(w.tail):
        raise ValueError("need 1 <= n <= number of tail letters")
    cs = convergents(w.prefix(n + 1))
    return cs[n - 1].q, cs[n].q


# ---------------------------------------------------------------- expansion


def _trim_np(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def _np_divmod(u: np.ndarray, v: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    # constant-first int64 arrays, both reduced and trimmed, v nonzero
    dv = len(v) - 1
    du = len(u) - 1
    if du < dv:
        return u[:0], u
    u = u.copy()
    inv = pow(int(v[-1]), -1, p)
    q = np.zeros(du - dv + 1, dtype=np.int64)
    for k in range(du, dv - 1, -1):
        c = int(u[k])
        if c:
            f = c * inv % p
            q[k - dv] = f
            seg = u[k - dv:k + 1]
            seg -= f * v
            seg %= p
    return q, _trim_np(u[:dv])


def _euclid_letters(num: np.ndarray, den: np.ndarray, p: int, max_terms: Optional[int],
                    budget: Optional[int]):
    """Partial quotients of num/den.

    Yields (letter coefficients, remainder_is_zero).  With a ``budget`` N the
    emission rule stops the generator before an uncertified letter.
    """
    u, v = num, den
    deg_q = 0
    count = 0
    while True:
        a, r = _np_divmod(u, v, p)
        if count > 0:
            if budget is not None and 2 * (deg_q + len(a) - 1) + 2 > budget:
                return
            deg_q += len(a) - 1
        count += 1
        yield a, len(r) == 0, deg_q
        if len(r) == 0 or (max_terms is not None and count >= max_terms):
            return
        u, v = v, r


def cf_expand(F: LaurentSeries, max_terms: int) -> ExpansionResult:
    """Partial quotients of F, as many as its precision certifies (at most max_terms)."""
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    p = F.p
    N = F.prec
    if N is None:
        if F.is_zero():
            return ExpansionResult(CFWord(Poly.zero(p)), Halt.RATIONAL, None)
        shift = max(0, -F.low)
        num = _series_to_poly(F.shift(shift))
        return cf_expand_rational(num, Poly.monomial(shift, p), max_terms)
    if N < 0:
        raise PrecisionError("precision too small to determine a_0")
    A = _series_to_poly(F.shift(N))  # truncation times X^N
    num = np.array(A.coeffs, dtype=np.int64)
    den = np.zeros(N + 1, dtype=np.int64)
    den[N] = 1
    letters: list[Poly] = []
    halt = Halt.PRECISION
    for a, rem_zero, deg_q in _euclid_letters(num, den, p, max_terms, N):
        letters.append(Poly(a.tolist(), p))
        if rem_zero:
            halt = Halt.RATIONAL if 2 * deg_q + 2 <= N else Halt.PRECISION
            break
        if len(letters) >= max_terms:
            halt = Halt.COUNT
            break
    return ExpansionResult(CFWord.from_letters(letters), halt, N)


def _series_to_poly(F: LaurentSeries) -> Poly:
    # F with no known negative-exponent coefficients that matter; drop them
    if F.is_zero():
        return Poly.zero(F.p)
    cs = [0] * (F.top + 1) if F.top >= 0 else []
    for e, c in F.terms().items():
        if e >= 0:
            cs[e] = c
    return Poly(cs, F.p)


def cf_expand_rational(num: Poly, den: Poly, max_terms: Optional[int] = None) -> ExpansionResult:
    """Exact expansion of num/den by the extended Euclidean algorithm."""
    _same_field(num, den)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    p = num.p
    letters = []
    u, v = num, den
    while True:
        a, r = divmod(u, v)
        letters.append(a)
        if r.is_zero():
            return ExpansionResult(CFWord.from_letters(letters), Halt.RATIONAL, None)
        if max_terms is not None and len(letters) >= max_terms:
            return ExpansionResult(CFWord.from_letters(letters), Halt.COUNT, None)
        u, v = v, r


# ---------------------------------------------------------------- evaluation


def certified_precision(w: CFWord) -> int:
    """Precision to which every continuation of w has the same value: 2 deg q_n."""
    return 2 * sum(a.degree for a in w.tail)


def cf_eval(w: CFWord, prec: int, exact: bool = False) -> LaurentSeries:
    """Value of the word as a series known through X^-prec.

    The word is read as the prefix of an infinite expansion: p_n/q_n is used
    for the first n with 2 deg q_n >= prec.  With ``exact`` (or an empty
    tail) the word is the whole continued fraction of a rational function.
    """
    if exact or not w.tail:
        pq = convergents(w)[-1]
        return series_from_rational(pq.p, pq.q, prec)
    n = certified_index(w, prec)
    pq = convergents(w.prefix(n + 1))[-1]
    return series_from_rational(pq.p, pq.q, prec)


def certified_index(w: CFWord, prec: int) -> int:
    """Smallest n with 2 deg q_n >= prec."""
    d = 0
    if prec <= 0:
        return 0
    for n, a in enumerate(w.tail, start=1):
        d += a.degree
        if 2 * d >= prec:
            return n
    raise PrecisionShortfall(prec, 2 * d)


def eval_eventually_periodic(preperiod: CFWord, period: Sequence[Poly], prec: int) -> LaurentSeries:
    """[preperiod, period, period, ...] to precision ``prec`` by unrolling."""
    period = tuple(period)
    if not period:
        raise ValueError("empty period")
    for a in period:
        if a.degree < 1:
            raise ValueError(f"period letter {a} has degree < 1")
    per_deg = sum(a.degree for a in period)
    have = sum(a.degree for a in preperiod.tail)
    reps = max(1, -(-(prec - 2 * have) // (2 * per_deg)) + 1)
    w = CFWord(preperiod.a0, preperiod.tail + period * reps)
    return cf_eval(w, prec)
