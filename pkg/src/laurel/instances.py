"""Registry of the named power series: defining polynomial, word generator, or both."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from .algebra import LaurentSeries, Poly, PrecisionError
from .cfengine import CFWord, PrecisionShortfall, cf_eval
from .roots import BivarPoly, RootCertificate, newton_root, seed_search
from . import words


class UnknownInstance(KeyError):
    pass


@dataclass(frozen=True)
class InstanceDescriptor:
    id: str
    p: int
    polynomial: Optional[BivarPoly]
    word: Optional[Callable[[int], CFWord]]  # first `count` letters, a_0 included
    top_range: tuple[int, int] = (-3, 1)
    note: str = ""

    def root(self, prec: int) -> RootCertificate:
        """Newton root known through X^-prec."""
        if self.polynomial is None:
            raise ValueError(f"{self.id} has no defining polynomial")
        seeds = _seeds(self.polynomial, self.top_range)
        if len(seeds) != 1:
            raise ValueError(f"{self.id}: expected one root in range, found {len(seeds)}")
        target = prec + 8
        for _ in range(8):
            cert = newton_root(self.polynomial, seeds[0], target)
            if cert.root.prec is not None and cert.root.prec >= prec:
                return RootCertificate(cert.root.truncate(prec), cert.residual_valuation,
                                       cert.derivative_norm, cert.residuals)
            target += prec - (cert.root.prec or 0) + 8
        raise PrecisionError(f"{self.id}: could not reach precision {prec}")

    def series(self, prec: int) -> LaurentSeries:
        if self.polynomial is not None:
            return self.root(prec).root
        return word_series(self.word, prec)

    def letters(self, count: int) -> CFWord:
        if self.word is None:
            raise ValueError(f"{self.id} has no closed-form word")
        return self.word(count)


_SEED_CACHE: dict = {}


def _seeds(P: BivarPoly, top_range: tuple[int, int]):
    key = (P, top_range)
    if key not in _SEED_CACHE:
        _SEED_CACHE[key] = seed_search(P, top_range)
    return _SEED_CACHE[key]


def word_series(gen: Callable[[int], CFWord], prec: int) -> LaurentSeries:
    count = 16
    while True:
        try:
            return cf_eval(gen(count), prec)
        except PrecisionShortfall:
            count *= 2


# ---------------------------------------------------------------- polynomials


def frobenius_poly(p: int) -> BivarPoly:
    """Z^(p+1) + X Z - 1"""
    cs = [Poly.constant(-1, p), Poly.x(p)] + [Poly.zero(p)] * (p - 1) + [Poly.one(p)]
    return BivarPoly(cs, p)


def baum_sweet_poly() -> BivarPoly:
    """X Z^3 + Z + X over F_2"""
    p = 2
    X = Poly.x(p)
    return BivarPoly([X, Poly.one(p), Poly.zero(p), X], p)


def mills_robbins_31_poly() -> BivarPoly:
    """X(X+2) Z^4 - (X^3+2X^2+2X+2) Z^3 + Z - X - 1 over F_3"""
    p = 3
    X = Poly.x(p)
    return BivarPoly([-(X + 1), Poly.one(p), Poly.zero(p),
                      -(X ** 3 + X ** 2 * 2 + X * 2 + 2), X * (X + 2)], p)


def theta_p_poly(p: int, c: int = 3) -> BivarPoly:
    """X Z^(p+1) - (X^2-3) Z^p + (X f_{p-2} - 3 f_{p-1}) Z - f_{p-2}(X^2-3) + c X f_{p-1}.

    c = 3 is the relation the closed-form word satisfies; c = 1 is the
    historical printed form, kept for comparison (it is not satisfied).
    """
    if p < 5:
        raise ValueError("p >= 5")
    X = Poly.x(p)
    f2, f1 = words.gen_fib_poly(p - 2, p), words.gen_fib_poly(p - 1, p)
    A = X ** 2 - 3
    cs = [Poly.zero(p)] * (p + 2)
    cs[p + 1] = X
    cs[p] = -A
    cs[1] = X * f2 - f1.scale(3)
    cs[0] = -(f2 * A) + (X * f1).scale(c)
    return BivarPoly(cs, p)


def buck_robbins_poly() -> BivarPoly:
    """Z^4 + Z^2 - X Z + 1 over F_3"""
    p = 3
    return BivarPoly([Poly.one(p), -Poly.x(p), Poly.one(p), Poly.zero(p), Poly.one(p)], p)


def lasjaunias_relation(k: int, word: CFWord) -> BivarPoly:
    """q_k Z^4 - p_k Z^3 + q_{k+3} Z - p_{k+3} from the word's own convergents."""
    from .cfengine import convergents

    cv = convergents(word.prefix(k + 4))
    p = word.p
    return BivarPoly([-cv[k + 3].p, cv[k + 3].q, Poly.zero(p), -cv[k].p, cv[k].q], p)


# ---------------------------------------------------------------- words


def frobenius_word(p: int, count: int) -> CFWord:
    tail = [Poly.monomial(p ** i, p) for i in range(max(0, count - 1))]
    return CFWord.from_tail(tail, p)


def _mr31(count: int) -> CFWord:
    return CFWord.from_letters(words.gen_theta_31_prefix(count).letters)


def _lasj(k: int) -> Callable[[int], CFWord]:
    return lambda count: words.gen_lasjaunias(k, max(0, count - 1)).as_cf()


def _theta_p(p: int) -> Callable[[int], CFWord]:
    return lambda count: CFWord.from_letters(words.gen_theta_p_word(p, count).letters)


def _phi_p(p: int) -> Callable[[int], CFWord]:
    def gen(count: int) -> CFWord:
        per = words.phi_p_period(p).letters
        letters = [per[i % 2] for i in range(count)]
        return CFWord.from_letters(letters)
    return gen


def _omega(count: int) -> CFWord:
    n = 1
    while words.omega_lengths(n)[-1] < count - 1:
        n += 1
    return words.gen_omega(n).as_cf().prefix(count)


# ---------------------------------------------------------------- lookup


_PARAM = re.compile(r"^([a-z0-9.\-]+?)(?:\((\d+)\))?$")


def get_instance(spec: str) -> InstanceDescriptor:
    """Look up ids such as 'baum-sweet', 'frobenius(3)', 'lasjaunias(1)', 'theta-p(7)'."""
    m = _PARAM.match(spec.strip())
    if not m:
        raise UnknownInstance(spec)
    name, arg = m.group(1), m.group(2)
    n = int(arg) if arg is not None else None

    def need(cond: bool):
        if not cond:
            raise UnknownInstance(spec)

    if name == "frobenius":
        need(n is not None)
        from .algebra import is_prime
        need(is_prime(n))
        return InstanceDescriptor(spec, n, frobenius_poly(n), lambda c: frobenius_word(n, c),
                                  (-3, 1), "root of Z^(p+1) + X Z - 1; letters X^(p^i)")
    if name == "baum-sweet":
        need(n is None)
        return InstanceDescriptor(spec, 2, baum_sweet_poly(), None, (-3, 1),
                                  "root of X Z^3 + Z + X over F_2; bounded partial quotients")
    if name == "mills-robbins-3.1":
        need(n is None)
        return InstanceDescriptor(spec, 3, mills_robbins_31_poly(), _mr31, (1, 1),
                                  "quartic over F_3 with linear partial quotients; a_0 = X")
    if name == "lasjaunias":
        need(n is not None)
        return InstanceDescriptor(spec, 3, None, _lasj(n), (-3, 1),
                                  "quartic over F_3 given by its word; relation from its convergents")
    if name == "theta-p":
        need(n is not None and n >= 5)
        from .algebra import is_prime
        need(is_prime(n))
        return InstanceDescriptor(spec, n, theta_p_poly(n), _theta_p(n), (1, 1),
                                  "degree p+1 root with linear partial quotients; a_0 = X")
    if name == "phi-p":
        need(n is not None and n >= 5)
        from .algebra import is_prime
        need(is_prime(n))
        return InstanceDescriptor(spec, n, None, _phi_p(n), (-3, 1),
                                  "quadratic [3X, X/3, 3X, X/3, ...]")
    if name == "buck-robbins-3.4":
        need(n is None)
        return InstanceDescriptor(spec, 3, buck_robbins_poly(), _omega, (-3, 1),
                                  "unique root of Z^4 + Z^2 - X Z + 1 over F_3; word [0, Omega]")
    raise UnknownInstance(spec)


INSTANCE_IDS = ("frobenius(p)", "baum-sweet", "mills-robbins-3.1", "lasjaunias(k)",
                "theta-p(p)", "phi-p(p)", "buck-robbins-3.4")
