"""Littlewood products |q| * ||q Theta|| * ||q Phi|| computed exactly in log2 form.

All quantities are integer exponents: deg q, log2 ||q Theta||, log2 ||q Phi||.
An exponent of None stands for an exact zero (log = -infinity).  When a
fractional part vanishes to the available precision its exponent is only an
upper bound, and the report says so.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

import numpy as np

from .algebra import LaurentSeries, NormLog2, Poly, PrecisionError
from .cfengine import (CFWord, cf_eval, cf_expand, convergents, denominator_degrees,
                       eval_eventually_periodic, certified_precision)
from .words import Word, is_palindrome, mirror

_NEG = np.iinfo(np.int64).min  # exact zero inside numpy arrays


def thread_count(default: int = 1) -> int:
    raw = os.environ.get("LAUREL_THREADS")
    if raw is None:
        return default
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"LAUREL_THREADS={raw!r} is not an integer") from None
    return max(1, n)


def _add(*xs: Optional[int]) -> Optional[int]:
    if any(x is None for x in xs):
        return None
    return sum(xs)


def _key(x: Optional[int]) -> float:
    return float("-inf") if x is None else x


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class LittlewoodReport:
    q: Poly
    exponents: tuple[int, Optional[int], Optional[int]]
    product1: Optional[int]
    product2: Optional[int]
    precision_ok: bool = True

    @property
    def deg(self) -> int:
        return self.exponents[0]

    def as_dict(self) -> dict:
        return {
            "q": str(self.q),
            "deg_q": self.exponents[0],
            "log2_frac_q_theta": self.exponents[1],
            "log2_frac_q_phi": self.exponents[2],
            "product1": self.product1,
            "product2": self.product2,
            "precision_ok": self.precision_ok,
        }


def _report(q: Poly, e1: NormLog2, e2: NormLog2) -> LittlewoodReport:
    d = q.degree
    p1 = _add(d, e1.exp, e2.exp)
    p2 = None if p1 is None else p1 + d
    ok = not (e1.upper_bound or e2.upper_bound)
    return LittlewoodReport(q, (d, e1.exp, e2.exp), p1, p2, ok)


def product_at(q: Poly, theta: LaurentSeries, phi: LaurentSeries) -> LittlewoodReport:
    """Exponents of |q|, ||q theta||, ||q phi||."""
    if q.is_zero():
        raise ValueError("q must be nonzero")
    e1 = (theta * q).frac_norm()
    e2 = (phi * q).frac_norm()
    return _report(q, e1, e2)


# ------------------------------------------------------------------ normalization


def normalize(theta: LaurentSeries) -> tuple[LaurentSeries, str]:
    """A series with norm <= 1/2 equivalent to theta for (Theta, 1/Theta) questions.

    |theta| >= 2 gives 1/theta (the pair is merely swapped); |theta| = 1 gives
    1/(X theta).  The label records what was done.
    """
    if theta.top is None:
        raise PrecisionError("cannot normalize a series indistinguishable from zero")
    if theta.top < 0:
        return theta, "none"
    if theta.top > 0:
        return theta.inverse(), "1/Theta"
    return theta.shift(1).inverse(), "1/(X*Theta)"


def normalized_word(word: CFWord) -> tuple[CFWord, str]:
    """Word-level counterpart of ``normalize`` for a0 of positive degree."""
    if word.a0.is_zero():
        return word, "none"
    if word.a0.degree >= 1:
        return CFWord.from_tail(word.letters, word.p), "1/Theta"
    raise ValueError("a0 is a nonzero constant; expand 1/(X*Theta) instead")


# ------------------------------------------------------------------ exhaustive scan


@dataclass(frozen=True)
class ScanResult:
    min_product1: Optional[int]
    argmin_product1: Poly
    min_product2: Optional[int]
    argmin_product2: Poly
    per_degree: tuple[LittlewoodReport, ...]
    upper_bound: bool = False

    def as_dict(self) -> dict:
        return {
            "min_product1": self.min_product1,
            "argmin_product1": str(self.argmin_product1),
            "min_product2": self.min_product2,
            "argmin_product2": str(self.argmin_product2),
            "upper_bound": self.upper_bound,
            "per_degree": [r.as_dict() for r in self.per_degree],
        }


class _FracTable:
    """Coefficients of X^-1, X^-2, ... of frac(X^i * theta) for i = 0..D."""

    def __init__(self, theta: LaurentSeries, D: int):
        self.p = theta.p
        self.exact = theta.prec is None
        if self.exact:
            low = theta.low if theta.low is not None else 0
            self.width = max(0, -low) + 1
        else:
            self.width = theta.prec
        cols = max(self.width, 0)
        # rows[i, j] = coefficient of X^-(j+1) in X^i * theta
        self.rows = np.zeros((D + 1, cols), dtype=np.int64)
        for e, c in theta.terms().items():
            for i in range(D + 1):
                j = -e - i - 1
                if 0 <= j < cols:
                    self.rows[i, j] = c

    def known(self, d: int) -> int:
        """Number of known fractional coefficients of q * theta for deg q = d."""
        return self.width if self.exact else max(0, self.width - d)


def _first_nonzero(block: np.ndarray, width: int, exact: bool):
    """(exponent array, upper-bound mask) for a block of fractional digit vectors."""
    if block.shape[1] == 0:
        if exact:
            return np.full(len(block), _NEG, dtype=np.int64), np.zeros(len(block), dtype=bool)
        return np.full(len(block), -width - 1, dtype=np.int64), np.ones(len(block), dtype=bool)
    nz = block != 0
    has = nz.any(axis=1)
    first = np.argmax(nz, axis=1)
    exps = -(first + 1)
    if exact:
        exps = np.where(has, exps, _NEG)  # exact zero
        ub = np.zeros(len(block), dtype=bool)
    else:
        exps = np.where(has, exps, -width - 1)
        ub = ~has
    return exps, ub


def _monic(d: int, digits: Sequence[int], p: int) -> Poly:
    return Poly(list(digits) + [1], p)


def _chunk_best(args):
    (t1, t2, d, start, stop, p) = args
    n = stop - start
    idx = np.arange(start, stop, dtype=np.int64)
    if d:
        powers = p ** np.arange(d, dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % p
    else:
        digits = np.zeros((n, 0), dtype=np.int64)
    out = []
    for tab in (t1, t2):
        w = tab.known(d)
        rows = tab.rows[:, :w]
        vec = (digits @ rows[:d] + rows[d][None, :]) % p if d else np.broadcast_to(rows[0], (n, w)) % p
        out.append(_first_nonzero(vec, w, tab.exact))
    (e1, u1), (e2, u2) = out
    neg = (e1 == _NEG) | (e2 == _NEG)
    prod = np.where(neg, _NEG, d + np.where(neg, 0, e1) + np.where(neg, 0, e2))
    best = prod.min()
    ties = np.flatnonzero(prod == best)
    cands = sorted((str(_monic(d, digits[i].tolist(), p)), int(i)) for i in ties)
    s, i = cands[0]
    e1i = None if e1[i] == _NEG else int(e1[i])
    e2i = None if e2[i] == _NEG else int(e2[i])
    return (None if best == _NEG else int(best)), s, _monic(d, digits[i].tolist(), p), e1i, e2i, bool(u1[i] or u2[i])


def _degree_best(t1, t2, d: int, p: int, workers: int, chunk: int = 1 << 14):
    total = p ** d
    jobs = [(t1, t2, d, s, min(total, s + chunk), p) for s in range(0, total, chunk)]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_chunk_best, jobs))
    else:
        results = [_chunk_best(j) for j in jobs]
    # deterministic reduction: smallest product, then least canonical string
    return min(results, key=lambda r: (_key(r[0]), r[1]))


def scan(theta: LaurentSeries, phi: LaurentSeries, D: int, workers: Optional[int] = None) -> ScanResult:
    """Minimal Littlewood exponents over all nonzero q of degree <= D.

    Only monic q are enumerated: multiplying q by a nonzero constant leaves
    every exponent unchanged.  Ties go to the least canonical string.
    """
    if D < 0:
        raise ValueError("D must be >= 0")
    if theta.p != phi.p:
        raise ValueError("theta and phi live over different fields")
    p = theta.p
    if workers is None:
        workers = thread_count()
    t1, t2 = _FracTable(theta, D), _FracTable(phi, D)
    per_degree = []
    for d in range(D + 1):
        val, s, q, e1, e2, ub = _degree_best(t1, t2, d, p, workers)
        p2 = None if val is None else val + d
        per_degree.append(LittlewoodReport(q, (d, e1, e2), val, p2, not ub))
    b1 = min(per_degree, key=lambda r: (_key(r.product1), str(r.q)))
    b2 = min(per_degree, key=lambda r: (_key(r.product2), str(r.q)))
    return ScanResult(b1.product1, b1.q, b2.product2, b2.q, tuple(per_degree),
                      upper_bound=not (b1.precision_ok and b2.precision_ok))


def monic_exponents(theta: LaurentSeries, D: int, d_min: int = 1):
    """Yield (q, log2 ||q theta||, upper-bound flag) for every monic q, d_min <= deg q <= D."""
    p = theta.p
    tab = _FracTable(theta, D)
    for d in range(d_min, D + 1):
        w = tab.known(d)
        rows = tab.rows[:, :w]
        total = p ** d
        powers = p ** np.arange(d, dtype=np.int64)
        for s in range(0, total, 1 << 14):
            idx = np.arange(s, min(total, s + (1 << 14)), dtype=np.int64)
            digits = (idx[:, None] // powers[None, :]) % p
            vec = (digits @ rows[:d] + rows[d][None, :]) % p
            exps, ub = _first_nonzero(vec, w, tab.exact)
            for k in range(len(idx)):
                e = None if exps[k] == _NEG else int(exps[k])
                yield _monic(d, digits[k].tolist(), p), e, bool(ub[k])


# ------------------------------------------------------------------ Bad witness


@dataclass(frozen=True)
class BadWitness:
    letters_examined: int
    max_quotient_degree: int

    def as_dict(self) -> dict:
        return {"letters_examined": self.letters_examined,
                "max_quotient_degree": self.max_quotient_degree}


def bad_witness(word: CFWord, count: Optional[int] = None) -> BadWitness:
    """Largest degree among the first ``count`` partial quotients a_1, a_2, ..."""
    tail = word.tail if count is None else word.tail[:count]
    return BadWitness(len(tail), max((a.degree for a in tail), default=0))


# ------------------------------------------------------------------ palindromic checkpoints


@dataclass(frozen=True)
class PalindromeCheckpoint:
    n: int
    report: LittlewoodReport
    deg_q_prev: int
    deg_q_n: int
    deg_a_next: int
    frac_theta_exact: bool     # log2 ||q_{n-1} Theta|| == -deg q_n
    frac_inverse_bound: bool   # log2 ||q_{n-1} / Theta|| <= -deg q_{n-1}
    product_bound: bool        # product2 <= deg q_{n-1} - deg q_n < 0

    @property
    def ok(self) -> bool:
        return self.frac_theta_exact and self.frac_inverse_bound and self.product_bound

    def as_dict(self) -> dict:
        d = self.report.as_dict()
        d.update(n=self.n, deg_q_prev=self.deg_q_prev, deg_q_n=self.deg_q_n,
                 frac_theta_exact=self.frac_theta_exact,
                 frac_inverse_bound=self.frac_inverse_bound,
                 product_bound=self.product_bound)
        return d


def palindromic_prefixes(word: CFWord, n_min: int = 2) -> list[int]:
    tail = word.tail
    return [n for n in range(n_min, len(tail) + 1) if tail[:n] == tail[:n][::-1]]


def palindrome_checkpoints(word: CFWord, prec: Optional[int] = None, n_min: int = 2,
                           n_max: Optional[int] = None) -> tuple[list[PalindromeCheckpoint], str]:
    """Reports at q = q_{n-1} for each palindromic prefix a_1..a_n, with Phi = 1/Theta.

    Returns (checkpoints, substitution label).  Checkpoints whose norms are
    not resolved by the available precision are dropped.
    """
    w, label = normalized_word(word)
    if prec is None:
        prec = certified_precision(w)
    theta = cf_eval(w, prec)
    inv_word = CFWord(w.tail[0], w.tail[1:])
    inv = cf_eval(inv_word, min(prec, certified_precision(inv_word))) if inv_word.tail else cf_eval(inv_word, prec, exact=True)
    degs = denominator_degrees(w)
    convs = convergents(w)
    out = []
    for n in palindromic_prefixes(w, n_min):
        if n_max is not None and n > n_max:
            break
        if n + 1 > len(w.tail):
            break
        q = convs[n - 1].q
        rep = product_at(q, theta, inv)
        if not rep.precision_ok:
            break
        dq_prev, dq_n = degs[n - 1], degs[n]
        a_next = w.tail[n].degree
        e1, e2 = rep.exponents[1], rep.exponents[2]
        out.append(PalindromeCheckpoint(
            n, rep, dq_prev, dq_n, a_next,
            frac_theta_exact=(e1 == -dq_n),
            frac_inverse_bound=(e2 is None or e2 <= -dq_prev),
            product_bound=(rep.product2 is not None and rep.product2 <= dq_prev - dq_n < 0),
        ))
    return out, label


# ------------------------------------------------------------------ condition certificates


@dataclass(frozen=True)
class InstanceCheck:
    k: int
    len_u: int
    len_v: int
    prefix_ok: bool
    structure_ok: bool  # V palindromic, or the block is a power of V
    ratio: Fraction

    def as_dict(self) -> dict:
        return {"k": self.k, "len_u": self.len_u, "len_v": self.len_v,
                "prefix_ok": self.prefix_ok, "structure_ok": self.structure_ok,
                "ratio": str(self.ratio)}


@dataclass(frozen=True)
class MechanismCheck:
    """Finite-k values of the quantities driving the proof."""
    k: int
    deg_Q: int
    deg_identity: bool
    product1: Optional[int]
    bound: int          # exponent the proof compares product1 against
    slack: Optional[int]  # product1 - bound (the constant C of the proof, measured)
    precision_ok: bool

    def as_dict(self) -> dict:
        return dict(k=self.k, deg_Q=self.deg_Q, deg_identity=self.deg_identity,
                    product1=self.product1, bound=self.bound, slack=self.slack,
                    precision_ok=self.precision_ok)


@dataclass(frozen=True)
class ConditionCertificate:
    theorem: str
    instances: tuple[InstanceCheck, ...]
    x_empirical: Fraction
    M_empirical: Fraction
    m_empirical: Fraction
    condition_value: Fraction
    satisfied: bool
    window: int
    substitution: str = "none"
    mechanism: tuple[MechanismCheck, ...] = ()
    C_measured: Optional[int] = None
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instances": [i.as_dict() for i in self.instances],
            "x_empirical": str(self.x_empirical),
            "M_empirical": str(self.M_empirical),
            "m_empirical": str(self.m_empirical),
            "condition_value": str(self.condition_value),
            "satisfied": self.satisfied,
            "window": self.window,
            "substitution": self.substitution,
            "mechanism": [m.as_dict() for m in self.mechanism],
            "C_measured": self.C_measured,
            "notes": list(self.notes),
        }


class PrefixMismatch(ValueError):
    def __init__(self, k: int, index: int, expected, found):
        super().__init__(f"instance {k}: letter {index} is {found}, block says {expected}")
        self.k, self.index = k, index


def _check_prefix(k: int, block: Sequence[Poly], letters: Sequence[Poly]) -> None:
    if len(letters) < len(block):
        raise PrefixMismatch(k, len(letters), block[len(letters)], "<end of word>")
    for i, (a, b) in enumerate(zip(block, letters)):
        if a != b:
            raise PrefixMismatch(k, i, a, b)


def _matched_letters(word: CFWord) -> tuple[Poly, ...]:
    # blocks start at a_1 when a_0 = 0, at a_0 otherwise
    return word.tail if word.a0.is_zero() else word.letters


def certify_thm3(U_list: Sequence[Word], V_list: Sequence[Word], word: CFWord,
                 ks: Optional[Sequence[int]] = None, mechanism: bool = True) -> ConditionCertificate:
    """Check palindromes, lengths and x > 3M/m - 1 over the examined window."""
    if len(U_list) != len(V_list) or not U_list:
        raise ValueError("need matching, nonempty lists of U_k and V_k")
    ks = list(ks) if ks is not None else list(range(1, len(U_list) + 1))
    letters = _matched_letters(word)
    checks = []
    for k, U, V in zip(ks, U_list, V_list):
        _check_prefix(k, U.letters + V.letters, letters)
        checks.append(InstanceCheck(k, len(U), len(V), True, is_palindrome(V),
                                    Fraction(len(V), max(1, len(U)))))
    growing = all(a.len_v < b.len_v for a, b in zip(checks, checks[1:]))
    window = max(c.len_u + c.len_v for c in checks)
    w, label = normalized_word(word)
    degs = denominator_degrees(CFWord(w.a0, w.tail[:window]))
    ratios = [Fraction(degs[l], l) for l in range(1, window + 1)]
    M, m = max(ratios), min(ratios)
    x = min(c.ratio for c in checks)
    cond = 3 * M / m - 1
    ok = growing and all(c.structure_ok for c in checks) and x > cond
    mech: list[MechanismCheck] = []
    C = None
    if mechanism:
        mech = _thm3_mechanism(w, checks, U_list, V_list, degs)
        slacks = [mc.slack for mc in mech if mc.precision_ok and mc.slack is not None]
        C = max(slacks) if slacks else None
    notes = []
    if not growing:
        notes.append("|V_k| is not strictly increasing")
    return ConditionCertificate("thm3", tuple(checks), x, M, m, cond, ok, window, label,
                                tuple(mech), C, tuple(notes))


def _thm3_mechanism(w: CFWord, checks, U_list, V_list, degs) -> list[MechanismCheck]:
    prec = certified_precision(w)
    theta = cf_eval(w, prec)
    inv_word = CFWord(w.tail[0], w.tail[1:])
    inv = cf_eval(inv_word, certified_precision(inv_word))
    out = []
    for c, U, V in zip(checks, U_list, V_list):
        r, s = c.len_u, c.len_v
        rat = CFWord.from_tail(U.letters + V.letters + U.letters[::-1], w.p)
        cv = convergents(rat)
        # the rational's denominator carries the degree identity; the product is
        # taken at the previous denominator, which equals the rational's numerator
        Qfull, Q = cv[-1].q, cv[-2].q
        deg_identity = (Qfull.degree == degs[r] + degs[r + s]) and cv[-1].p == Q
        rep = product_at(Q, theta, inv)
        bound = 3 * degs[r] - degs[r + s]
        slack = None if rep.product1 is None else rep.product1 - bound
        out.append(MechanismCheck(c.k, Qfull.degree, deg_identity, rep.product1, bound, slack,
                                  rep.precision_ok))
    return out


def certify_thm4(U_list: Sequence[Word], V: Word, n_list: Sequence[int], word: CFWord,
                 ks: Optional[Sequence[int]] = None, mechanism: bool = True) -> ConditionCertificate:
    """Check U_k V^[n_k] prefixes, |V^[n_k]| >= x|U_k| and x > M/m over the window.

    Blocks are matched from a_0 on when a_0 != 0.  Phi = [mirror V, mirror V, ...].
    """
    if len(U_list) != len(n_list) or not U_list:
        raise ValueError("need matching, nonempty lists of U_k and n_k")
    ks = list(ks) if ks is not None else list(range(1, len(U_list) + 1))
    letters = _matched_letters(word)
    offset = 0 if word.a0.is_zero() else 1  # a_0 is part of U_k
    checks = []
    for k, U, n in zip(ks, U_list, n_list):
        block = U.letters + V.letters * n
        _check_prefix(k, block, letters)
        checks.append(InstanceCheck(k, len(U), n * len(V), True, True,
                                    Fraction(n * len(V), max(1, len(U)))))
    increasing = all(a < b for a, b in zip(n_list, n_list[1:]))
    window = max(c.len_u + c.len_v for c in checks) - offset
    tail_degs = [a.degree for a in word.tail[:window]]
    M, m = Fraction(max(tail_degs)), Fraction(min(tail_degs))
    x = min(c.ratio for c in checks)
    cond = M / m
    ok = increasing and x > cond
    mech: list[MechanismCheck] = []
    C = None
    if mechanism:
        mech = _thm4_mechanism(word, V, checks, offset)
        slacks = [mc.slack for mc in mech if mc.precision_ok and mc.slack is not None]
        C = max(slacks) if slacks else None
    notes = [] if increasing else ["n_k is not increasing"]
    return ConditionCertificate("thm4", tuple(checks), x, M, m, cond, ok, window,
                                "Theta - a0" if offset else "none", tuple(mech), C, tuple(notes))


def periodic_phi(V: Word, prec: int) -> LaurentSeries:
    """Phi = [mirror V, mirror V, ...] as a series."""
    vb = mirror(V).letters
    return eval_eventually_periodic(CFWord(vb[0], vb[1:]), vb, prec)


def _thm4_mechanism(word: CFWord, V: Word, checks, offset: int) -> list[MechanismCheck]:
    prec = certified_precision(word)
    theta = cf_eval(word, prec)
    phi = periodic_phi(V, prec)
    degs = denominator_degrees(word)
    convs = convergents(word)
    vdeg = sum(a.degree for a in V.letters)
    out = []
    for c in checks:
        N = c.len_u + c.len_v - offset  # index of the last letter of U V^[n]
        Q = convs[N - 1].q
        rep = product_at(Q, theta, phi)
        # ||Q theta|| = 2^-deg q_N and ||Q phi|| <= 2^(deg Q - 2 D), D the degree of
        # the shared prefix of mirror(V)^[n] beyond its first letter
        D = (c.len_v // len(V)) * vdeg - V.letters[-1].degree
        bound = degs[N - 1] - degs[N] + degs[N - 1] - 2 * D
        slack = None if rep.product1 is None else rep.product1 - bound
        out.append(MechanismCheck(c.k, Q.degree, Q.degree == degs[N - 1], rep.product1, bound,
                                  slack, rep.precision_ok))
    return out


# ------------------------------------------------------------------ normal approximability scan


@dataclass(frozen=True)
class Thm9Row:
    q: Poly
    deg: int
    log_theta: Optional[int]
    log_inv: Optional[int]
    margin_low: Fraction   # lower end of the interval for the exponent sum
    margin_high: Fraction
    excluded: bool = False  # a norm sits at the precision floor

    def as_dict(self) -> dict:
        return {"q": str(self.q), "deg": self.deg, "log_theta": self.log_theta,
                "log_inv": self.log_inv, "margin_low": str(self.margin_low),
                "margin_high": str(self.margin_high), "excluded": self.excluded}


@dataclass(frozen=True)
class Thm9Result:
    violations: tuple[Thm9Row, ...]
    excluded: tuple[Thm9Row, ...]
    examined: int
    label: str = "small-degree exceptions permitted by the theorem"

    def as_dict(self) -> dict:
        return {"examined": self.examined, "label": self.label,
                "violations": [r.as_dict() for r in self.violations],
                "excluded": [r.as_dict() for r in self.excluded]}


def sqrt_interval(n: int, scale: int = 10**6) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(n) <= hi, exact when n is a perfect square."""
    r = isqrt(n)
    if r * r == n:
        return Fraction(r), Fraction(r)
    s = isqrt(n * scale * scale)
    return Fraction(s, scale), Fraction(s + 1, scale)


def thm9_margin(d: int, log_sum: int, eps: Fraction, scale: int = 10**6) -> tuple[Fraction, Fraction]:
    """Interval for (2 + 4/sqrt(3d) + eps) d + log_sum; 4d/sqrt(3d) = (4/3) sqrt(3d)."""
    lo, hi = sqrt_interval(3 * d, scale)
    base = (2 + eps) * d + log_sum
    return base + Fraction(4, 3) * lo, base + Fraction(4, 3) * hi


def thm9_scan(theta: LaurentSeries, D: int, eps, inverse: Optional[LaurentSeries] = None) -> Thm9Result:
    """Monic q with deg 1..D where |q|^(2+4/sqrt(3 deg q)+eps) ||q Theta|| ||q/Theta|| < 1."""
    eps = Fraction(eps)
    inv = inverse if inverse is not None else theta.inverse()
    rows1 = {str(q): (q, e, ub) for q, e, ub in monic_exponents(theta, D)}
    violations, excluded = [], []
    n = 0
    for q, e2, ub2 in monic_exponents(inv, D):
        _, e1, ub1 = rows1[str(q)]
        n += 1
        d = q.degree
        if e1 is None or e2 is None:
            row = Thm9Row(q, d, e1, e2, Fraction(-10**9), Fraction(-10**9), excluded=False)
            violations.append(row)
            continue
        lo, hi = thm9_margin(d, e1 + e2, eps)
        scale = 10**6
        while lo < 0 <= hi:
            scale *= 1000
            lo, hi = thm9_margin(d, e1 + e2, eps, scale)
        row = Thm9Row(q, d, e1, e2, lo, hi, excluded=ub1 or ub2)
        if row.excluded:
            excluded.append(row)
        elif hi < 0:
            violations.append(row)
    return Thm9Result(tuple(violations), tuple(excluded), n)
