"""Exact arithmetic over F_p, F_p[X] and truncated Laurent series in X^-1.

Polynomials are stored as tuples of residues, constant term first.  Laurent
series are stored leading coefficient first together with an absolute
precision ``prec``: every coefficient of X^-h with h <= prec is known exactly,
the rest are unknown.  ``prec=None`` marks an exact finite Laurent polynomial.

Norms never leave integer land: ``NormLog2`` holds the base-2 logarithm of
the ultrametric norm |F| = 2^deg(F).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

MAX_MODULUS = 2**31


class FieldMismatchError(ValueError):
    """Operands live over different prime fields."""


class PrecisionError(ArithmeticError):
    """A value is indistinguishable from zero at the available precision."""


@functools.lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_modulus(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p) or p > MAX_MODULUS:
        raise ValueError(f"modulus must be a prime <= 2^31, got {p!r}")
    return p


def _same_field(a, b) -> int:
    if a.p != b.p:
        raise FieldMismatchError(f"cannot mix F_{a.p} and F_{b.p}")
    return a.p


# ---------------------------------------------------------------- F_p


@dataclass(frozen=True)
class FieldElement:
    """A residue modulo the prime ``p``."""

    residue: int
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        object.__setattr__(self, "residue", self.residue % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            _same_field(self, other)
            return other.residue
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.residue + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.residue - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(o - self.residue, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.residue * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.residue, self.p)

    def inverse(self) -> "FieldElement":
        if self.residue == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FieldElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by 0 in F_p")
        return FieldElement(self.residue * pow(o, -1, self.p), self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.residue, e, self.p), self.p)

    def __int__(self):
        return self.residue

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"FieldElement({self.residue}, p={self.p})"

    def __str__(self):
        return str(self.residue)


# ---------------------------------------------------------------- products


def _mul_coeffs(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Convolution of two residue lists, reduced mod p.

    Small inputs use the schoolbook loop; larger ones go through Kronecker
    substitution so that CPython's big-int multiply does the work.
    """
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    if min(la, lb) <= 24:
        if la < lb:
            a, b, la, lb = b, a, lb, la
        out = [0] * (la + lb - 1)
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    out[i + j] += ai * bj
        return [c % p for c in out]
    bound = (p - 1) * (p - 1) * min(la, lb)
    width = (bound.bit_length() + 8) // 8
    pa = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
    n = la + lb - 1
    raw = (pa * pb).to_bytes(n * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") % p for i in range(n)]


# ---------------------------------------------------------------- F_p[X]


PolyLike = Union["Poly", int]


class Poly:
    """Dense polynomial over F_p.  Immutable; ``coeffs`` is constant-first."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int], p: int):
        check_modulus(p)
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, coeffs: tuple, p: int) -> "Poly":
        # trusted constructor: coeffs already reduced and trimmed
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", coeffs)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # constructors
    @classmethod
    def zero(cls, p: int) -> "Poly":
        return cls((), p)

    @classmethod
    def one(cls, p: int) -> "Poly":
        return cls((1,), p)

    @classmethod
    def constant(cls, c: int, p: int) -> "Poly":
        return cls((c,), p)

    @classmethod
    def x(cls, p: int) -> "Poly":
        return cls((0, 1), p)

    @classmethod
    def monomial(cls, n: int, p: int, c: int = 1) -> "Poly":
        return cls([0] * n + [c], p)

    @classmethod
    def linear(cls, a: int, b: int, p: int) -> "Poly":
        """The polynomial a*X + b."""
        return cls((b, a), p)

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def field_coeffs(self) -> list[FieldElement]:
        return [FieldElement(c, self.p) for c in self.coeffs]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly((other,), self.p).coeffs
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.p, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            _same_field(self, other)
            return other
        if isinstance(other, FieldElement):
            _same_field(self, other)
            return Poly((other.residue,), self.p)
        if isinstance(other, int):
            return Poly((other,), self.p)
        return NotImplemented

    # ring operations
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = self.p
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
        return Poly(out, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(tuple((-c) % p for c in self.coeffs), p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Poly._raw(tuple(_trim(_mul_coeffs(self.coeffs, o.coeffs, self.p))), self.p)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        p = self.p
        c %= p
        if c == 0:
            return Poly.zero(p)
        return Poly._raw(tuple(x * c % p for x in self.coeffs), p)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        num = list(self.coeffs)
        db = o.degree
        if len(num) - 1 < db:
            return Poly.zero(p), self
        inv = pow(o.lc, -1, p)
        bc = o.coeffs
        q = [0] * (len(num) - db)
        for k in range(len(num) - 1, db - 1, -1):
            c = num[k] % p
            if c:
                f = c * inv % p
                q[k - db] = f
                off = k - db
                for i in range(db + 1):
                    num[off + i] -= f * bc[i]
        rem = [c % p for c in num[:db]]
        return Poly(q, p), Poly(rem, p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(pow(self.lc, -1, self.p))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero only when both inputs are zero)."""
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return (g, s, t) with s*self + t*other = g, g monic."""
        p = self.p
        r0, r1 = self, self._lift(other)
        s0, s1 = Poly.one(p), Poly.zero(p)
        t0, t1 = Poly.zero(p), Poly.one(p)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = pow(r0.lc, -1, p)
        return r0.scale(inv), s0.scale(inv), t0.scale(inv)

    def __call__(self, x):
        """Horner evaluation at a field element, polynomial or series."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return 0
        return acc

    def compose_scale(self, c: int) -> "Poly":
        """The polynomial f(c*X)."""
        p = self.p
        out, cp = [], 1
        for a in self.coeffs:
            out.append(a * cp % p)
            cp = cp * c % p
        return Poly(out, p)

    def derivative(self) -> "Poly":
        p = self.p
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], p)

    def shift(self, n: int) -> "Poly":
        """Multiply by X^n (n >= 0)."""
        if self.is_zero():
            return self
        return Poly._raw((0,) * n + self.coeffs, self.p)

    def __lt__(self, other: "Poly"):
        return str(self) < str(other)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = "X" if k == 1 else f"X^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)

    def __repr__(self):
        return f"Poly({str(self)!r}, p={self.p})"


def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


# ---------------------------------------------------------------- norms


@dataclass(frozen=True, order=False)
class NormLog2:
    """Base-2 logarithm of an ultrametric norm.

    ``exp is None`` is the exact zero norm.  Otherwise the norm is 2^exp, or
    merely bounded above by 2^exp when ``upper_bound`` is set (a quantity
    that vanished to the available precision).
    """

    exp: Optional[int]
    upper_bound: bool = False

    ZERO = None  # replaced below

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    @property
    def exact(self) -> bool:
        return not self.upper_bound

    def __mul__(self, other: "NormLog2") -> "NormLog2":
        if self.exp is None or other.exp is None:
            return NormLog2(None)
        return NormLog2(self.exp + other.exp, self.upper_bound or other.upper_bound)

    def _key(self):
        return float("-inf") if self.exp is None else self.exp

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __str__(self):
        if self.exp is None:
            return "0"
        return ("<=" if self.upper_bound else "") + f"2^{self.exp}"


NormLog2.ZERO = NormLog2(None)


# ---------------------------------------------------------------- k((1/X))


def _min_prec(*ps: Optional[int]) -> Optional[int]:
    known = [x for x in ps if x is not None]
    return min(known) if known else None


class LaurentSeries:
    """Truncated element of F_p((X^-1)).

    ``top`` is the exponent of the leading (nonzero) coefficient, ``coeffs``
    lists the coefficients of X^top, X^(top-1), ... down to X^-prec (or down
    to the last nonzero term when exact).  A series that vanishes to its
    precision has ``top is None`` and empty ``coeffs``.
    """

    __slots__ = ("p", "top", "coeffs", "prec")

    def __init__(self, p: int, top: Optional[int], coeffs: Sequence[int], prec: Optional[int]):
        check_modulus(p)
        s = LaurentSeries._make(p, top if top is not None else 0, [c % p for c in coeffs], prec)
        for name in self.__slots__:
            object.__setattr__(self, name, getattr(s, name))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @classmethod
    def _make(cls, p: int, hi: int, digits: list[int], prec: Optional[int]) -> "LaurentSeries":
        # digits[i] is the reduced coefficient of X^(hi - i)
        start = 0
        n = len(digits)
        while start < n and digits[start] == 0:
            start += 1
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "prec", prec)
        if prec is None:
            end = n
            while end > start and digits[end - 1] == 0:
                end -= 1
        else:
            end = min(n, hi + prec + 1)
        if start >= end:
            object.__setattr__(obj, "top", None)
            object.__setattr__(obj, "coeffs", ())
            return obj
        top = hi - start
        cs = list(digits[start:end])
        if prec is not None:
            cs.extend([0] * (top + prec + 1 - len(cs)))
        object.__setattr__(obj, "top", top)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    # constructors
    @classmethod
    def zero(cls, p: int, prec: Optional[int] = None) -> "LaurentSeries":
        return cls._make(p, 0, [], prec)

    @classmethod
    def one(cls, p: int, prec: Optional[int] = None) -> "LaurentSeries":
        return cls._make(p, 0, [1], prec)

    @classmethod
    def from_poly(cls, q: Poly, prec: Optional[int] = None) -> "LaurentSeries":
        return cls._make(q.p, q.degree, list(reversed(q.coeffs)), prec)

    @classmethod
    def monomial(cls, exp: int, p: int, c: int = 1, prec: Optional[int] = None) -> "LaurentSeries":
        return cls._make(p, exp, [c % p], prec)

    @classmethod
    def from_terms(cls, terms: dict[int, int], p: int, prec: Optional[int] = None) -> "LaurentSeries":
        """Build from ``{exponent: coefficient}``."""
        if not terms:
            return cls.zero(p, prec)
        hi, lo = max(terms), min(terms)
        if prec is not None:
            lo = min(lo, -prec)
        digits = [0] * (hi - lo + 1)
        for e, c in terms.items():
            digits[hi - e] = c % p
        return cls._make(p, hi, digits, prec)

    # queries
    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known."""
        return self.top is None

    @property
    def low(self) -> Optional[int]:
        """Exponent of the last stored coefficient."""
        if self.top is None:
            return None
        return self.top - len(self.coeffs) + 1

    def coefficient(self, e: int) -> int:
        if self.prec is not None and e < -self.prec:
            raise PrecisionError(f"coefficient of X^{e} is beyond precision {self.prec}")
        if self.top is None or e > self.top:
            return 0
        i = self.top - e
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def terms(self) -> dict[int, int]:
        if self.top is None:
            return {}
        return {self.top - i: c for i, c in enumerate(self.coeffs) if c}

    def _digits(self, hi: int, lo: int) -> list[int]:
        # coefficients from X^hi down to X^lo, zero outside stored range
        out = [0] * (hi - lo + 1)
        if self.top is None:
            return out
        for i, c in enumerate(self.coeffs):
            e = self.top - i
            if e < lo:
                break
            if c and e <= hi:
                out[hi - e] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.p, self.top, self.coeffs, self.prec) == (other.p, other.top, other.coeffs, other.prec)

    def __hash__(self):
        return hash((self.p, self.top, self.coeffs, self.prec))

    def agrees_with(self, other: "LaurentSeries", prec: Optional[int] = None) -> bool:
        """Coefficient-wise agreement on everything both operands know."""
        _same_field(self, other)
        n = _min_prec(self.prec, other.prec, prec)
        return (self - other).truncate(n).is_zero() if n is not None else (self - other).is_zero()

    def truncate(self, prec: Optional[int]) -> "LaurentSeries":
        """Forget every coefficient of X^-h with h > prec."""
        if prec is None:
            return self
        if self.prec is not None and prec >= self.prec:
            return self
        if self.top is None:
            return LaurentSeries._make(self.p, 0, [], prec)
        return LaurentSeries._make(self.p, self.top, list(self.coeffs), prec)

    def with_precision(self, prec: Optional[int]) -> "LaurentSeries":
        """Reinterpret the stored coefficients with a new precision.

        Raising the precision of an inexact series asserts that the unknown
        tail is zero; callers use it only for values known to be exact.
        """
        if self.top is None:
            return LaurentSeries._make(self.p, 0, [], prec)
        return LaurentSeries._make(self.p, self.top, list(self.coeffs), prec)

    # arithmetic
    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            _same_field(self, other)
            return other
        if isinstance(other, Poly):
            _same_field(self, other)
            return LaurentSeries.from_poly(other)
        if isinstance(other, FieldElement):
            _same_field(self, other)
            return LaurentSeries.monomial(0, self.p, other.residue)
        if isinstance(other, int):
            return LaurentSeries.monomial(0, self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        prec = _min_prec(self.prec, o.prec)
        p = self.p
        if self.top is None and o.top is None:
            return LaurentSeries._make(p, 0, [], prec)
        hi = max(t for t in (self.top, o.top) if t is not None)
        lows = [s.low for s in (self, o) if s.top is not None]
        lo = min(lows)
        if prec is not None:
            lo = -prec
        if lo > hi:
            return LaurentSeries._make(p, hi, [], prec)
        a = self._digits(hi, lo)
        b = o._digits(hi, lo)
        return LaurentSeries._make(p, hi, [(x + y) % p for x, y in zip(a, b)], prec)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        if self.top is None:
            return self
        return LaurentSeries._make(p, self.top, [(-c) % p for c in self.coeffs], self.prec)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = self.p
        f, g = self, o
        if f.top is None or g.top is None:
            # a vanishing factor: bound |product| by what is known
            if (f.top is None and f.prec is None) or (g.top is None and g.prec is None):
                return LaurentSeries._make(p, 0, [], None)
            if f.top is None and g.top is None:
                return LaurentSeries._make(p, 0, [], f.prec + g.prec + 1)
            z, nz = (f, g) if f.top is None else (g, f)
            return LaurentSeries._make(p, 0, [], z.prec - nz.top)
        cands = []
        if f.prec is not None:
            cands.append(f.prec - g.top)
        if g.prec is not None:
            cands.append(g.prec - f.top)
        prec = min(cands) if cands else None
        hi = f.top + g.top
        a, b = f.coeffs, g.coeffs
        if prec is not None:
            keep = hi + prec + 1
            if keep <= 0:
                return LaurentSeries._make(p, hi, [], prec)
            a, b = a[:keep], b[:keep]
        return LaurentSeries._make(p, hi, _mul_coeffs(a, b, p), prec)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentSeries":
        p = self.p
        c %= p
        if c == 0:
            return LaurentSeries._make(p, 0, [], self.prec)
        if self.top is None:
            return self
        return LaurentSeries._make(p, self.top, [x * c % p for x in self.coeffs], self.prec)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by X^n; precision moves with the exponents."""
        prec = None if self.prec is None else self.prec - n
        if self.top is None:
            return LaurentSeries._make(self.p, 0, [], prec)
        return LaurentSeries._make(self.p, self.top + n, list(self.coeffs), prec)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self, prec: Optional[int] = None) -> "LaurentSeries":
        """Multiplicative inverse.

        An inexact series with leading exponent m and precision N has an
        inverse known to precision N + 2m.  Exact inputs need ``prec`` unless
        they are monomials.
        """
        p = self.p
        if self.top is None:
            raise PrecisionError("inverse of a series indistinguishable from zero")
        m = self.top
        if self.prec is None:
            if len(self.coeffs) == 1:
                return LaurentSeries._make(p, -m, [pow(self.coeffs[0], -1, p)], prec)
            if prec is None:
                raise ValueError("inverse of an exact non-monomial series needs a target precision")
            out_prec = prec
        else:
            out_prec = self.prec + 2 * m
            if prec is not None:
                out_prec = min(out_prec, prec)
        n = -m + out_prec + 1  # number of output coefficients
        if n <= 0:
            return LaurentSeries._make(p, -m, [], out_prec)
        return LaurentSeries._make(p, -m, _inv_digits(self.coeffs, n, p), out_prec)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.top is None:
            raise PrecisionError("division by a series indistinguishable from zero")
        if o.prec is None and len(o.coeffs) > 1:
            if self.prec is None:
                raise ValueError("exact division needs a target precision; use series_from_rational")
            # an exact divisor only has to be inverted as far as self is known
            need = self.prec + o.top + (self.top if self.top is not None else 0)
            return self * o.inverse(prec=need)
        return self * o.inverse()

    # parts and norms
    def poly_part(self) -> Poly:
        """Sum of the terms with non-negative exponent."""
        if self.top is None or self.top < 0:
            return Poly.zero(self.p)
        if self.prec is not None and self.prec < 0:
            raise PrecisionError("polynomial part not fully known")
        cs = [self.coefficient(e) for e in range(0, self.top + 1)]
        return Poly(cs, self.p)

    def frac_part(self) -> "LaurentSeries":
        """Sum of the terms with negative exponent."""
        if self.top is None or self.top < 0:
            return self
        digits = list(self.coeffs[self.top + 1:])
        return LaurentSeries._make(self.p, -1, digits, self.prec)

    def norm(self) -> NormLog2:
        if self.top is not None:
            return NormLog2(self.top)
        if self.prec is None:
            return NormLog2.ZERO
        return NormLog2(-self.prec - 1, upper_bound=True)

    def frac_norm(self) -> NormLog2:
        return self.frac_part().norm()

    def __repr__(self):
        return f"LaurentSeries(p={self.p}, top={self.top}, coeffs={list(self.coeffs)!r}, prec={self.prec})"

    def __str__(self):
        ts = self.terms()
        if not ts:
            body = "0"
        else:
            parts = []
            for e in sorted(ts, reverse=True):
                c = ts[e]
                mono = "1" if e == 0 else ("X" if e == 1 else f"X^{e}" if e > 0 else f"X^({e})")
                if e == 0:
                    parts.append(str(c))
                else:
                    parts.append(mono if c == 1 else f"{c}*{mono}")
            body = "+".join(parts)
        if self.prec is None:
            return body
        return f"{body}+O(X^({-self.prec - 1}))"


def _inv_digits(coeffs: Sequence[int], n: int, p: int) -> list[int]:
    """First n coefficients of 1/f where f is given leading-first.

    Power series inversion in t = X^-1 by Newton doubling.
    """
    f = list(coeffs[:n]) + [0] * max(0, n - len(coeffs))
    g = [pow(f[0], -1, p)]
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        fg = _mul_coeffs(f[:k2], g, p)[:k2]
        # g <- g*(2 - f*g)
        corr = [(-c) % p for c in fg]
        corr[0] = (corr[0] + 2) % p
        g = _mul_coeffs(g, corr, p)[:k2]
        k = k2
    return g


def series_from_rational(num: Poly, den: Poly, prec: int) -> LaurentSeries:
    """Expansion of num/den in X^-1 with every coefficient through X^-prec."""
    _same_field(num, den)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    p = num.p
    if num.is_zero():
        return LaurentSeries.zero(p, prec)
    top = num.degree - den.degree
    n = top + prec + 1
    if n <= 0:
        return LaurentSeries._make(p, top, [], prec)
    inv = _inv_digits(list(reversed(den.coeffs)), n, p)
    digits = _mul_coeffs(list(reversed(num.coeffs))[:n], inv, p)[:n]
    return LaurentSeries._make(p, top, digits, prec)


def norm(x: Union[LaurentSeries, Poly]) -> NormLog2:
    if isinstance(x, Poly):
        return NormLog2.ZERO if x.is_zero() else NormLog2(x.degree)
    return x.norm()


def frac_norm(x: Union[LaurentSeries, Poly]) -> NormLog2:
    if isinstance(x, Poly):
        return NormLog2.ZERO
    return x.frac_norm()


def frac_part(x: LaurentSeries) -> LaurentSeries:
    return x.frac_part()


def poly_part(x: LaurentSeries) -> Poly:
    return x.poly_part()
