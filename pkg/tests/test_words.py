import pytest
from hypothesis import given, strategies as st

from laurel import words as W
from laurel.algebra import Poly


def lin(a, b, p=3):
    return Poly([b, a], p)


X3 = lin(1, 0)


class TestBasics:
    @given(st.lists(st.integers(0, 2), max_size=12))
    def test_mirror_involution(self, cs):
        w = W.Word([Poly([c, 1], 3) for c in cs], 3)
        assert W.mirror(W.mirror(w)) == w
        assert W.is_palindrome(w + W.mirror(w))

    def test_power_and_concat(self):
        w = W.Word([X3, lin(2, 1)], 3)
        assert len(W.power(w, 3)) == 6
        assert W.concat(w, w) == W.power(w, 2) == w * 2
        assert W.power(w, 0) == W.empty(3)

    def test_cube_map_is_letterwise_frobenius(self):
        w = W.Word([lin(1, 2), lin(2, 0)], 3)
        assert W.cube_map(w).letters == (lin(1, 2) ** 3, lin(2, 0) ** 3)
        assert W.cube_map(w).letters[0] == Poly([2, 0, 0, 1], 3)

    def test_first_mismatch(self):
        a = [X3, X3, lin(2, 1)]
        assert W.first_index_mismatch(a, a[:2]) is None
        assert W.first_index_mismatch(a, [X3, lin(2, 0)]) == 1


class TestQuarticF3:
    def test_prefix_start(self):
        w = W.gen_theta_31_prefix(3)
        assert w.letters == (X3, lin(2, 2), lin(1, 1))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_H_length_and_shape(self, n):
        H = W.gen_H_31(n)
        e = 2 if n % 2 else 1
        r = 3 ** n - 2
        assert len(H) == 2 * 3 ** n
        assert H.letters[r:r + 2] == (lin(1, e), lin(2, e))
        assert H.letters[-2:] == (lin(2, e), lin(1, e))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_blocks(self, n):
        U, V = W.thm5_blocks(n)
        assert len(U) == 3 ** n
        assert len(V) == 3 ** (n + 1) - 2
        assert W.is_palindrome(V)
        assert W.gen_theta_31_prefix(len(U) + len(V)).startswith(U + V)


class TestLasjaunias:
    @pytest.mark.parametrize("k", [0, 1, 2])
    @pytest.mark.parametrize("n", range(1, 6))
    def test_blocks(self, k, n):
        U, V = W.thm6_blocks(k, n)
        assert len(V) == 5 * (k + 2) * 3 ** (n - 1) - 2
        assert W.is_palindrome(V)
        assert W.gen_lasjaunias(k, len(U) + len(V)).startswith(U + V)
        if n >= 2:
            assert len(V) >= 3 * len(U) + 3


class TestThetaP:
    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_starts_with_X(self, p):
        assert W.gen_theta_p_word(p, 1).letters == (Poly.x(p),)

    @pytest.mark.parametrize("p,n_max", [(5, 5), (7, 4), (11, 3)])
    def test_palindrome_blocks(self, p, n_max):
        for n in range(1, n_max + 1):
            U, V = W.thm7_blocks(p, n)
            assert len(U) == 1 + 2 * (p ** n - 1) // (p - 1)
            assert len(V) == p ** n - 2
            assert W.is_palindrome(V)
            assert W.gen_theta_p_word(p, len(U) + len(V)).startswith(U + V)

    @pytest.mark.parametrize("p", [5, 7])
    def test_periodic_blocks(self, p):
        for n in range(1, 5):
            U, V3, reps = W.thm8_blocks(p, n)
            assert reps == (p ** n - 1) // 2 and len(V3) == 2
            assert W.gen_theta_p_word(p, len(U) + 2 * reps).startswith(U + V3 * reps)

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_fibonacci_recursion(self, p):
        X = Poly.x(p)
        f = [W.gen_fib_poly(k, p) for k in range(31)]
        assert f[0] == Poly.one(p) and f[1] == X
        for k in range(2, 31):
            assert f[k] == X * f[k - 1] + f[k - 2]

    def test_phi_period(self):
        p = 7
        per = W.phi_p_period(p)
        assert per.letters == (Poly([0, 3], p), Poly([0, pow(3, -1, p)], p))


class TestOmega:
    def test_small_words(self):
        mX = lin(2, 0)
        assert W.gen_omega(0) == W.empty(3)
        assert W.gen_omega(2).letters == (X3, mX, mX, X3)
        w3 = W.gen_omega(3)
        assert w3.letters == (X3, mX, mX, X3, mX, X3 ** 3, mX, X3, mX, mX, X3)

    @pytest.mark.parametrize("n", range(0, 11))
    def test_palindromes_and_lengths(self, n):
        w = W.gen_omega(n)
        assert W.is_palindrome(w)
        assert len(w) == W.omega_lengths(n)[n]

    def test_length_recursion(self):
        L = W.omega_lengths(10)
        assert L[:7] == [0, 1, 4, 11, 28, 69, 168]
        for n in range(2, 11):
            assert L[n] == 2 * L[n - 1] + L[n - 2] + 2

    def test_prefix_chain(self):
        for n in range(1, 8):
            assert W.gen_omega(n + 1).startswith(W.gen_omega(n))
