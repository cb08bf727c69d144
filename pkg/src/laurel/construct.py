"""Building a partner Phi for a badly approximable Theta.

Given Theta = [0, a_1, a_2, ...] with deg a_k <= M and a gauge phi, the
partner is

    Phi_t = [0, a_{n_1} .. a_1, t_1, a_{n_2} .. a_1, t_2, ...]

with deg t_j in {M+1, M+2} and n_j growing fast enough that
phi(2^{m_j}) <= 2^{-2(M+2)(m_{j-1}+1)}, m_j = n_1 + ... + n_j + (j - 1).
At q = s_{m_j} (denominators of Phi) the product |q|^2 ||q Theta|| ||q Phi||
then stays below 1/phi(|q|).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .algebra import LaurentSeries, Poly, PrecisionError
from .cfengine import CFWord, Halt, cf_eval, cf_expand, convergents, denominator_degrees
from .littlewood import LittlewoodReport, bad_witness, product_at


class GaugeTableExhausted(ValueError):
    """The tabulated gauge ends before the requested bound is reached."""


@dataclass(frozen=True)
class GaugeFunction:
    """A positive non-increasing phi with phi(1) = 1, evaluated exactly.

    kinds: 'reciprocal' 1/d, 'reciprocal-log' 1/bitlength(d),
    'geometric' 2^(1-d), 'table' explicit values on 1..len(table).
    """

    kind: str
    table: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.kind not in ("reciprocal", "reciprocal-log", "geometric", "table"):
            raise ValueError(f"unknown gauge {self.kind!r}")
        if self.kind == "table":
            t = tuple(Fraction(v) for v in self.table)
            object.__setattr__(self, "table", t)
            if not t or t[0] != 1:
                raise ValueError("a gauge table must start with phi(1) = 1")
            if any(v <= 0 for v in t):
                raise ValueError("gauge values must be positive")
            if any(b > a for a, b in zip(t, t[1:])):
                raise ValueError("gauge table must be non-increasing")

    def value(self, d: int) -> Fraction:
        if d < 1:
            raise ValueError("phi is defined on d >= 1")
        if self.kind == "reciprocal":
            return Fraction(1, d)
        if self.kind == "reciprocal-log":
            return Fraction(1, d.bit_length())
        if self.kind == "geometric":
            return Fraction(1, 2 ** (d - 1))
        if d <= len(self.table):
            return self.table[d - 1]
        raise GaugeTableExhausted(f"phi({d}) is beyond a table of length {len(self.table)}")

    def le_pow2(self, d: int, K: int) -> bool:
        """phi(d) <= 2^-K, decided exactly (d may be astronomically large)."""
        if self.kind == "geometric":
            return d - 1 >= K
        if self.kind == "table" and d > len(self.table):
            if self.table[-1] <= Fraction(2) ** (-K):
                return True  # non-increasing, so the tail is below the last entry
            raise GaugeTableExhausted(
                f"table ends at phi({len(self.table)}) = {self.table[-1]}, above 2^{-K}; extend it")
        return self.value(d) <= Fraction(2) ** (-K)

    def __str__(self):
        if self.kind == "table":
            return "table:" + ",".join(str(v) for v in self.table)
        return self.kind


def parse_gauge(spec: str) -> GaugeFunction:
    """'reciprocal', 'reciprocal-log', 'geometric' or 'table:1,1/2,1/3,...'."""
    if spec.startswith("table:"):
        return GaugeFunction("table", tuple(Fraction(x) for x in spec[6:].split(",") if x))
    return GaugeFunction(spec)


def growth_bound(M: int, m_prev: int) -> int:
    return 2 * (M + 2) * (m_prev + 1)


def choose_n_sequence(phi: GaugeFunction, M: int, J: int) -> list[int]:
    """n_1 = 1 and each later n_j the least positive integer meeting the growth condition."""
    if J < 1:
        raise ValueError("J >= 1")
    ns = [1]
    m_prev = 1
    for _ in range(2, J + 1):
        K = growth_bound(M, m_prev)

        def ok(n: int) -> bool:
            return phi.le_pow2(2 ** (m_prev + 1 + n), K)

        hi = 1
        while not ok(hi):
            hi *= 2
        lo = hi // 2  # ok(lo) is False or lo == 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ok(mid):
                hi = mid
            else:
                lo = mid
        ns.append(hi)
        m_prev = m_prev + 1 + hi
    return ns


def m_sequence(ns: Sequence[int]) -> list[int]:
    out, total = [], 0
    for j, n in enumerate(ns):
        total += n
        out.append(total + j)
    return out


def check_growth(phi: GaugeFunction, M: int, ns: Sequence[int]) -> list[bool]:
    """Direct re-evaluation of the growth condition for j = 2..J."""
    ms = m_sequence(ns)
    return [phi.le_pow2(2 ** ms[j], growth_bound(M, ms[j - 1])) for j in range(1, len(ns))]


# ---------------------------------------------------------------- builder


@dataclass(frozen=True)
class PhiBuilder:
    theta_word: CFWord           # [0, a_1, a_2, ...], long enough for n_J
    M: int
    n_seq: tuple[int, ...]
    t_seq: tuple[Poly, ...]      # one per stage
    substitution: str = "none"

    @property
    def m_seq(self) -> tuple[int, ...]:
        return tuple(m_sequence(self.n_seq))

    @property
    def J(self) -> int:
        return len(self.n_seq)


def default_t(M: int, p: int, bits: Optional[str], J: int,
              overrides: Optional[dict[int, Poly]] = None) -> tuple[Poly, ...]:
    """t_j = X^(M+1), or X^(M+2) where bits[j-1] == '1'; overrides replace single stages."""
    if bits is not None and any(b not in "01" for b in bits):
        raise ValueError("bits must be a string of 0 and 1")
    out = []
    for j in range(1, J + 1):
        extra = 1 if bits is not None and j <= len(bits) and bits[j - 1] == "1" else 0
        t = Poly.monomial(M + 1 + extra, p)
        if overrides and j in overrides:
            t = overrides[j]
        if t.degree not in (M + 1, M + 2):
            raise ValueError(f"t_{j} = {t} must have degree {M + 1} or {M + 2}")
        out.append(t)
    return tuple(out)


def make_builder(theta_word: CFWord, phi: GaugeFunction, J: int, M: Optional[int] = None,
                 bits: Optional[str] = None, overrides: Optional[dict[int, Poly]] = None,
                 substitution: str = "none") -> PhiBuilder:
    if not theta_word.a0.is_zero():
        raise ValueError("theta word must start with a_0 = 0 (normalize first)")
    if M is None:
        M = bad_witness(theta_word).max_quotient_degree
    ns = choose_n_sequence(phi, M, J)
    if len(theta_word.tail) < max(ns):
        raise PrecisionError(f"theta word has {len(theta_word.tail)} letters, {max(ns)} needed")
    top = max(a.degree for a in theta_word.tail[:max(ns) + 1])
    if top > M:
        raise ValueError(f"theta has a partial quotient of degree {top} > M = {M}")
    return PhiBuilder(theta_word, M, tuple(ns), default_t(M, theta_word.p, bits, J, overrides),
                      substitution)


def build_phi(builder: PhiBuilder, J: Optional[int] = None, closing: bool = False) -> CFWord:
    """[0; a_{n_1}..a_1, t_1, ..., t_{J-1}, a_{n_J}..a_1] (m_J letters), plus t_J if closing."""
    J = builder.J if J is None else J
    if J > builder.J:
        raise ValueError(f"builder has {builder.J} stages")
    a = builder.theta_word.tail
    letters: list[Poly] = []
    for j in range(J):
        n = builder.n_seq[j]
        if n > len(a):
            raise PrecisionError(f"theta word too short for n_{j + 1} = {n}")
        letters.extend(reversed(a[:n]))
        if j < J - 1 or closing:
            letters.append(builder.t_seq[j])
    return CFWord.from_tail(letters, builder.theta_word.p)


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class StageCheck:
    j: int
    report: LittlewoodReport
    lhs: Optional[int]       # 2 deg s + log ||s Theta|| + log ||s Phi||
    holds: bool              # phi(|s|) <= 2^-lhs
    phi_bound: bool          # log ||s Phi|| <= -deg s
    theta_bound: bool        # log ||s Theta|| <= -deg s + 2(M+2)(m_j - n_j)
    degree_split: bool       # deg s = deg q_{n_j} + sum of the first m_j - n_j letter degrees
    growth: Optional[int]    # deg s + log ||s Theta||

    @property
    def ok(self) -> bool:
        return self.holds and self.phi_bound and self.theta_bound and self.degree_split

    def as_dict(self) -> dict:
        d = self.report.as_dict()
        d.update(j=self.j, lhs=self.lhs, holds=self.holds, phi_bound=self.phi_bound,
                 theta_bound=self.theta_bound, degree_split=self.degree_split,
                 growth=self.growth)
        return d


def verify_eq21(theta: LaurentSeries, phi_word: CFWord, gauge: GaugeFunction,
                builder: PhiBuilder, phi: Optional[LaurentSeries] = None) -> list[StageCheck]:
    """Checkpoints q = s_{m_j}, j = 2..J, for the pair (theta, Phi).

    ``theta`` may be un-normalized; only fractional parts enter.
    """
    ms = builder.m_seq
    J = builder.J
    if len(phi_word.tail) < ms[-1] + 1:
        raise ValueError("phi word must include t_J (build with closing=True)")
    sdeg = denominator_degrees(phi_word)
    qdeg = denominator_degrees(builder.theta_word)
    if phi is None:
        phi = cf_eval(phi_word, sdeg[ms[-1]] + sdeg[ms[-1] + 1] + 2)
    convs = convergents(phi_word.prefix(ms[-1] + 1))
    out = []
    for j in range(2, J + 1):
        m, n = ms[j - 1], builder.n_seq[j - 1]
        s = convs[m].q
        rep = product_at(s, theta, phi)
        if not rep.precision_ok:
            raise PrecisionError(f"stage {j}: norms not resolved; raise the precision")
        d, e1, e2 = rep.exponents
        lhs = rep.product2
        holds = lhs is None or gauge.le_pow2(2 ** d, lhs)
        out.append(StageCheck(
            j, rep, lhs, holds,
            phi_bound=e2 is None or e2 <= -d,
            theta_bound=e1 is None or e1 <= -d + 2 * (builder.M + 2) * (m - n),
            degree_split=d == qdeg[n] + sdeg[m - n],
            growth=None if e1 is None else d + e1,
        ))
    return out


# ---------------------------------------------------------------- linear relations


def _nullspace_mod_p(A: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of {v : A v = 0 mod p} by row reduction."""
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-A[i, f]) % p
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Relation:
    A: Poly
    B: Poly
    C: Poly
    degree: int
    precision: int

    def __str__(self):
        return f"({self.A})*Theta + ({self.B})*Phi + ({self.C}) = 0"


def linear_relation_search(theta: LaurentSeries, phi: LaurentSeries, D: int, N: int) -> Optional[Relation]:
    """Nonzero (A, B, C), degrees <= D, with A theta + B phi + C vanishing through X^-N.

    Returns a relation of least degree (normalized so the leading coefficient
    of the first nonzero polynomial among A, B, C is 1), or None when no such
    relation exists even approximately.
    """
    p = theta.p
    for s in (theta, phi):
        if s.prec is not None and s.prec < N + D:
            raise PrecisionError(f"need series precision >= {N + D}, have {s.prec}")
    tops = [x.top for x in (theta, phi) if x.top is not None]
    hi = max(tops + [0]) + D
    exps = list(range(hi, -N - 1, -1))
    for d in range(D + 1):
        cols = []
        for series in (theta, phi):
            for i in range(d + 1):
                cols.append([series.coefficient(e - i) for e in exps])
        for i in range(d + 1):
            cols.append([1 if e == i else 0 for e in exps])
        mat = np.array(cols, dtype=np.int64).T
        basis = _nullspace_mod_p(mat, p)
        if basis:
            v = basis[0]
            polys = [Poly(v[k * (d + 1):(k + 1) * (d + 1)].tolist(), p) for k in range(3)]
            lead = next(x for x in polys if not x.is_zero()).lc
            inv = pow(lead, -1, p)
            A, B, C = (x.scale(inv) for x in polys)
            return Relation(A, B, C, d, N)
    return None


# ---------------------------------------------------------------- pipeline


@dataclass(frozen=True)
class ConstructionResult:
    builder: PhiBuilder
    phi_word: CFWord
    checks: tuple[StageCheck, ...]
    growth_condition: tuple[bool, ...]
    mirror_ok: bool
    growth_increasing: bool
    relation: Optional[Relation] = None
    relation_searched: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return (all(c.ok for c in self.checks) and all(self.growth_condition) and self.mirror_ok
                and self.growth_increasing and self.relation is None)


def mirror_structure_ok(builder: PhiBuilder, phi_word: CFWord) -> bool:
    """Letters m_{j-1}+2 .. m_j of Phi are a_{n_j} .. a_1, for each stage."""
    a = builder.theta_word.tail
    b = phi_word.tail
    start = 0
    for j, n in enumerate(builder.n_seq):
        if tuple(b[start:start + n]) != tuple(reversed(a[:n])):
            return False
        start += n + 1
    return True


def theta_expansion(theta: LaurentSeries, letters: int) -> tuple[LaurentSeries, CFWord, str]:
    """Normalize theta (drop its polynomial part) and expand at least ``letters`` letters."""
    label = "none"
    if theta.top is not None and theta.top >= 0:
        theta = theta.frac_part()
        label = "Theta - a0"
    res = cf_expand(theta, letters + 1)
    if len(res.word.tail) < letters and res.halt != Halt.RATIONAL:
        raise PrecisionError(f"theta precision {theta.prec} certifies only {len(res.word.tail)} letters")
    return theta, res.word, label
