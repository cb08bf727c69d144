import pytest
from hypothesis import assume, given, settings, strategies as st

from laurel.algebra import (FieldMismatchError, LaurentSeries, NormLog2, Poly, PrecisionError,
                            is_prime, series_from_rational)
from strategies import polys, primes, series


@st.composite
def poly_pair(draw, nonzero_second=False):
    p = draw(primes)
    return p, draw(polys(p)), draw(polys(p, nonzero=nonzero_second))


class TestPoly:
    @given(poly_pair())
    def test_ring_laws(self, t):
        p, a, b = t
        c = Poly([1, 2 % p, 1], p)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert a - a == Poly.zero(p)

    @given(poly_pair(nonzero_second=True))
    def test_division(self, t):
        p, a, b = t
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree

    @given(poly_pair(nonzero_second=True))
    def test_xgcd(self, t):
        p, a, b = t
        g, s, u = a.xgcd(b)
        assert s * a + u * b == g
        assert (a % g).is_zero() and (b % g).is_zero()

    @given(poly_pair())
    def test_frobenius_is_additive(self, t):
        p, a, b = t
        assert (a + b) ** p == a ** p + b ** p

    def test_canonical_string(self):
        assert str(Poly([1, 0, 2], 3)) == "2*X^2+1"
        assert str(Poly([0, 1, 1], 2)) == "X^2+X"
        assert str(Poly([], 5)) == "0"
        assert Poly([4, 0, 0], 5).degree == 0

    def test_coefficients_are_reduced(self):
        assert Poly([7, -1], 5) == Poly([2, 4], 5)

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldMismatchError):
            Poly([1], 2) + Poly([1], 3)

    def test_prime_check(self):
        assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
        with pytest.raises(ValueError):
            Poly([1], 4)


class TestNorms:
    @given(poly_pair())
    def test_multiplicative(self, t):
        p, a, b = t
        assume(not a.is_zero() and not b.is_zero())
        A, B = LaurentSeries.from_poly(a), LaurentSeries.from_poly(b)
        assert (A * B).norm().exp == a.degree + b.degree

    @given(primes.flatmap(lambda p: st.tuples(series(p), series(p))))
    def test_ultrametric(self, pair):
        F, G = pair
        s = (F + G).norm()
        assert s.is_zero or s.upper_bound or s.exp <= max(F.norm().exp, G.norm().exp)

    def test_zero_and_bounds(self):
        assert NormLog2(None).is_zero
        z = LaurentSeries(2, -1, [0, 0, 0], 3)
        n = z.norm()
        assert n.upper_bound and n.exp <= -3
        assert LaurentSeries.from_poly(Poly([1, 1], 2)).frac_norm().is_zero

    def test_fractional_part(self):
        F = LaurentSeries(3, 2, [1, 2, 0, 1, 2], 20)
        assert F.poly_part() == Poly([0, 2, 1], 3)
        assert F.frac_part().norm().exp == -1
        assert F.frac_norm().exp == -1


class TestSeries:
    @given(primes.flatmap(lambda p: series(p)))
    @settings(max_examples=60)
    def test_inverse(self, F):
        G = F.inverse()
        # precision of the inverse: N + 2 * top
        assert G.prec == F.prec + 2 * F.top
        one = F * G
        assert one.agrees_with(LaurentSeries.one(F.p), min(F.prec, G.prec) + F.top - 1)

    @given(poly_pair(nonzero_second=True))
    def test_rational_series(self, t):
        p, a, b = t
        F = series_from_rational(a, b, 30)
        back = F * LaurentSeries.from_poly(b)
        assert back.agrees_with(LaurentSeries.from_poly(a), 30 - b.degree)

    def test_unknown_coefficient(self):
        F = LaurentSeries(2, 0, [1, 1, 0, 1], 3)
        assert F.coefficient(-3) == 1
        with pytest.raises(PrecisionError):
            F.coefficient(-4)

    def test_precision_propagates(self):
        F = LaurentSeries(5, 1, [1, 2, 3], 10)
        G = LaurentSeries(5, 0, [1, 4], 7)
        assert (F + G).prec == 7
        assert (F * G).prec == 6  # min(N_F - top_G, N_G - top_F)

    def test_division(self):
        p = 7
        F = LaurentSeries.from_poly(Poly([1, 2, 3], p), 40)
        G = LaurentSeries.from_poly(Poly([5, 1], p), 40)
        H = F / G
        assert (H * G).agrees_with(F, 30)
