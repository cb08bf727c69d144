"""Words over the alphabet F_p[X] minus F_p, and the explicit expansions built from them.

Infinite words are produced as prefixes of a requested length.  Letters such
as -X, X/3 and 3X are concretized to canonical polynomials for the given p.
"""

from __future__ import annotations

from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from .algebra import Poly
from .cfengine import CFWord


class Word:
    """Finite word of polynomials of degree >= 1 over one prime field."""

    __slots__ = ("p", "letters")

    def __init__(self, letters: Iterable[Poly], p: int):
        letters = tuple(letters)
        for i, a in enumerate(letters):
            if a.p != p:
                raise ValueError(f"letter {i} lives over F_{a.p}, expected F_{p}")
            if a.degree < 1:
                raise ValueError(f"letter {i} = {a} has degree < 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i], self.p)
        return self.letters[i]

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.p == other.p and self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.letters))

    def __add__(self, other: "Word") -> "Word":
        if other.p != self.p:
            raise ValueError("cannot concatenate words over different fields")
        return Word(self.letters + other.letters, self.p)

    def __mul__(self, n: int) -> "Word":
        return power(self, n)

    def startswith(self, other: "Word") -> bool:
        return self.letters[: len(other)] == other.letters

    def degrees(self) -> list[int]:
        return [a.degree for a in self.letters]

    def as_cf(self, a0: Poly | None = None) -> CFWord:
        """[a0; self], with a0 = 0 by default."""
        return CFWord(Poly.zero(self.p) if a0 is None else a0, self.letters)

    def __repr__(self):
        return f"Word([{', '.join(str(a) for a in self.letters)}], p={self.p})"


def empty(p: int) -> Word:
    return Word((), p)


def mirror(w: Word) -> Word:
    return Word(reversed(w.letters), w.p)


def is_palindrome(w: Word) -> bool:
    return w.letters == w.letters[::-1]


def power(w: Word, n: int) -> Word:
    """W^[n], n copies of W."""
    if n < 0:
        raise ValueError("negative power of a word")
    return Word(w.letters * n, w.p)


def concat(*words: Word) -> Word:
    if not words:
        raise ValueError("concat needs at least one word")
    p = words[0].p
    letters: list[Poly] = []
    for w in words:
        if w.p != p:
            raise ValueError("cannot concatenate words over different fields")
        letters.extend(w.letters)
    return Word(letters, p)


def letter_map(w: Word, f: Callable[[Poly], Poly]) -> Word:
    out = []
    for i, a in enumerate(w.letters):
        b = f(a)
        if b.degree < 1:
            raise ValueError(f"image of letter {i} ({a} -> {b}) has degree < 1")
        out.append(b)
    return Word(out, w.p)


def cube_map(w: Word) -> Word:
    """W^(3): every letter cubed."""
    return letter_map(w, lambda a: a ** 3)


def negate_x(w: Word) -> Word:
    """Substitute X -> -X in every letter."""
    return letter_map(w, lambda a: a.compose_scale(-1))


def _lin(a: int, b: int, p: int) -> Poly:
    return Poly.linear(a, b, p)


def _word(p: int, *letters: Poly) -> Word:
    return Word(letters, p)


# ------------------------------------------------ Mills-Robbins quartic over F_3


def gen_H_31(n: int) -> Word:
    """X^[3^n-2], X+e, 2X+e, (2X)^[3^n-2], 2X+e, X+e with e = 2 (n odd) or 1 (n even)."""
    if n < 1:
        raise ValueError("n >= 1")
    p = 3
    eps = 2 if n % 2 else 1
    r = 3 ** n - 2
    x, x2 = _lin(1, 0, p), _lin(2, 0, p)
    return Word([x] * r + [_lin(1, eps, p), _lin(2, eps, p)] + [x2] * r
                + [_lin(2, eps, p), _lin(1, eps, p)], p)


def gen_theta_31_prefix(count: int) -> Word:
    """First ``count`` letters (a_0 included) of [X, 2X+2, X+1, H_1, H_2, ...]."""
    p = 3
    letters = [_lin(1, 0, p), _lin(2, 2, p), _lin(1, 1, p)]
    n = 1
    while len(letters) < count:
        letters.extend(gen_H_31(n).letters)
        n += 1
    return Word(letters[:count], p)


def thm5_blocks(n: int) -> tuple[Word, Word]:
    """U_n = X,2X+2,X+1,H_1..H_{n-1} and the palindrome V_n = H_n, X^[3^n-2]."""
    if n < 1:
        raise ValueError("n >= 1")
    p = 3
    u = [_lin(1, 0, p), _lin(2, 2, p), _lin(1, 1, p)]
    for i in range(1, n):
        u.extend(gen_H_31(i).letters)
    v = list(gen_H_31(n).letters) + [_lin(1, 0, p)] * (3 ** n - 2)
    return Word(u, p), Word(v, p)


# ------------------------------------------------ Lasjaunias family over F_3


def lasjaunias_u(k: int, n: int) -> int:
    return (k + 2) * 3 ** n - 2


def lasjaunias_H(k: int, n: int, sign: int = 1) -> Word:
    """H_n(sign*X) = (sX+1) (sX)^[u_n] (sX+1)."""
    p = 3
    a = _lin(sign, 1, p)
    return Word([a] + [_lin(sign, 0, p)] * lasjaunias_u(k, n) + [a], p)


def gen_lasjaunias(k: int, count: int) -> Word:
    """First ``count`` tail letters of Theta(k) = [0, H_0(X), H_1(-X), H_2(X), ...]."""
    if k < 0:
        raise ValueError("k >= 0")
    letters: list[Poly] = []
    n = 0
    while len(letters) < count:
        letters.extend(lasjaunias_H(k, n, (-1) ** n).letters)
        n += 1
    return Word(letters[:count], 3)


def thm6_blocks(k: int, n: int) -> tuple[Word, Word]:
    """U_n, V_n with [0, U_n V_n ...] the expansion of Theta(k).

    For even n these are H_0(X)...H_{n-2}(X)(-X+1) and the palindrome
    (-X)^[u_{n-1}] (-X+1)(X+1) X^[u_n] (X+1)(-X+1) (-X)^[u_{n-1}];
    odd n is the same picture with X and -X exchanged.
    """
    if n < 1:
        raise ValueError("n >= 1")
    p = 3
    s_prev = (-1) ** (n - 1)  # sign of X in H_{n-1}
    s_cur = -s_prev
    u: list[Poly] = []
    for i in range(n - 1):
        u.extend(lasjaunias_H(k, i, (-1) ** i).letters)
    u.append(_lin(s_prev, 1, p))
    side = [_lin(s_prev, 0, p)] * lasjaunias_u(k, n - 1)
    mid = [_lin(s_prev, 1, p), _lin(s_cur, 1, p)] + [_lin(s_cur, 0, p)] * lasjaunias_u(k, n) \
        + [_lin(s_cur, 1, p), _lin(s_prev, 1, p)]
    return Word(u, p), Word(side + mid + side, p)


# ------------------------------------------------ Mills-Robbins family, p >= 5


def gen_fib_poly(k: int, p: int) -> Poly:
    """f_k = sum_{0 <= 2j <= k} C(k-j, j) X^(k-2j) over F_p."""
    if k < 0:
        raise ValueError("k >= 0")
    cs = [0] * (k + 1)
    for j in range(k // 2 + 1):
        cs[k - 2 * j] = comb(k - j, j)
    return Poly(cs, p)


def _inv3(p: int) -> int:
    if p in (2, 3):
        raise ValueError("3 must be invertible mod p")
    return pow(3, -1, p)


def v_minus1(p: int) -> Word:
    """V(-1) = -X, -X"""
    return _word(p, _lin(-1, 0, p), _lin(-1, 0, p))


def v_three(p: int) -> Word:
    """V(3) = X/3, 3X"""
    return _word(p, _lin(_inv3(p), 0, p), _lin(3, 0, p))


def L_block(p: int, k: int, which: int) -> Word:
    """L_k(3) or L_k(-1): (p^k - 1)/2 copies of V(3) resp. V(-1)."""
    base = v_three(p) if which == 3 else v_minus1(p)
    if which not in (3, -1):
        raise ValueError("which is 3 or -1")
    return power(base, (p ** k - 1) // 2)


def gen_theta_p_word(p: int, count: int) -> Word:
    """First ``count`` letters (a_0 included) of
    [X, L_0(3), -X/3, L_0(-1), X, L_1(3), -X/3, L_1(-1), X, ...]."""
    if p < 5:
        raise ValueError("p >= 5")
    x = _lin(1, 0, p)
    mx3 = _lin(-_inv3(p), 0, p)
    letters: list[Poly] = []
    k = 0
    while len(letters) < count:
        letters.append(x)
        letters.extend(L_block(p, k, 3).letters)
        letters.append(mx3)
        letters.extend(L_block(p, k, -1).letters)
        k += 1
    return Word(letters[:count], p)


def thm7_blocks(p: int, n: int) -> tuple[Word, Word]:
    """U_n = X,-X/3,X,L_1(3),-X/3,L_1(-1),X,...,L_{n-1}(-1),X and
    V_n = (X/3,3X)^[(p^n-3)/2], X/3."""
    if n < 1:
        raise ValueError("n >= 1")
    x = _lin(1, 0, p)
    mx3 = _lin(-_inv3(p), 0, p)
    u = [x, mx3, x]
    for i in range(1, n):
        u.extend(L_block(p, i, 3).letters)
        u.append(mx3)
        u.extend(L_block(p, i, -1).letters)
        u.append(x)
    v = power(v_three(p), (p ** n - 3) // 2).letters + (_lin(_inv3(p), 0, p),)
    return Word(u, p), Word(v, p)


def thm8_blocks(p: int, n: int) -> tuple[Word, Word, int]:
    """(U_n, V(3), (p^n-1)/2): the expansion of Theta_p is [U_n, V(3)^[(p^n-1)/2] ...]."""
    u, _ = thm7_blocks(p, n)
    return u, v_three(p), (p ** n - 1) // 2


def phi_p_period(p: int) -> Word:
    """Period of Phi_p = [3X, X/3, 3X, X/3, ...], i.e. the mirror of V(3)."""
    return mirror(v_three(p))


# ------------------------------------------------ Buck-Robbins quartic over F_3


def gen_omega(n: int) -> Word:
    """Omega_0 = empty, Omega_1 = X, Omega_n = Omega_{n-1} (-X) Omega_{n-2}^(3) (-X) Omega_{n-1}."""
    if n < 0:
        raise ValueError("n >= 0")
    p = 3
    prev2, prev1 = empty(p), _word(p, _lin(1, 0, p))
    if n == 0:
        return prev2
    mx = _word(p, _lin(-1, 0, p))
    for _ in range(2, n + 1):
        prev2, prev1 = prev1, concat(prev1, mx, cube_map(prev2), mx, prev1)
    return prev1


def omega_lengths(n_max: int) -> list[int]:
    """|Omega_n| for n = 0..n_max without building the words."""
    out = [0, 1]
    for _ in range(2, n_max + 1):
        out.append(2 * out[-1] + out[-2] + 2)
    return out[: n_max + 1]


def first_index_mismatch(a: Sequence[Poly], b: Sequence[Poly]) -> int | None:
    """First index where two letter sequences differ (None if one is a prefix of the other)."""
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None
