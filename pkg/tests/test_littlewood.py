from fractions import Fraction
from math import sqrt

import pytest

from laurel import words as W
from laurel.algebra import LaurentSeries, Poly
from laurel.cfengine import CFWord, certified_precision, cf_eval, convergents, denominator_degrees
from laurel.instances import get_instance
from laurel.littlewood import (PrefixMismatch, bad_witness, certify_thm3, certify_thm4, normalize,
                               normalized_word, palindrome_checkpoints, palindromic_prefixes,
                               product_at, scan, sqrt_interval, thm9_margin, thm9_scan, thread_count)
from laurel.oracle import random_pair
from oracles import brute_scan


@pytest.mark.parametrize("p,D", [(2, 6), (3, 4), (5, 3)])
@pytest.mark.parametrize("seed", range(6))
def test_scan_matches_oracle(p, D, seed):
    theta, phi = random_pair(p, 1000 * p + seed, 64)
    r = scan(theta, phi, D)
    m1, a1, m2, a2, resolved = brute_scan(theta, phi, D, 64)
    assert resolved and not r.upper_bound
    assert (r.min_product1, str(r.argmin_product1)) == (m1, a1)
    assert (r.min_product2, str(r.argmin_product2)) == (m2, a2)


def test_scan_independent_of_workers():
    theta, phi = random_pair(3, 5, 64)
    one = scan(theta, phi, 9, workers=1).as_dict()
    assert scan(theta, phi, 9, workers=4).as_dict() == one
    assert scan(theta, phi, 9, workers=7).as_dict() == one


def test_scan_per_degree_rows():
    theta, phi = random_pair(2, 9, 64)
    r = scan(theta, phi, 5)
    assert [row.deg for row in r.per_degree] == list(range(6))
    assert r.min_product1 == min(row.product1 for row in r.per_degree)


def test_scan_rational_theta_is_upper_bound():
    p = 3
    w = CFWord.from_tail([Poly.x(p), Poly.x(p)], p)
    theta = cf_eval(w, 10, exact=True)  # X/(X^2+1) known through X^-10
    phi, _ = random_pair(p, 1, 40)
    r = scan(theta, phi, 3)
    # q_2 annihilates theta's fractional part as far as it is known
    assert r.upper_bound
    assert r.argmin_product1 == convergents(w)[-1].q.monic()


def test_product_at_convergents():
    p = 5
    w = CFWord.from_tail([Poly([1, 1], p), Poly([0, 0, 2], p), Poly([3, 1], p)] * 4, p)
    theta = cf_eval(w, certified_precision(w))
    degs = denominator_degrees(w)
    phi, _ = random_pair(p, 3, 60)
    for n, c in enumerate(convergents(w)[1:-1], start=1):
        rep = product_at(c.q, theta, phi)
        assert rep.exponents[1] == -degs[n + 1]
    with pytest.raises(ValueError):
        product_at(Poly.zero(p), theta, phi)


class TestNormalize:
    def test_labels(self):
        p = 3
        small = LaurentSeries(p, -1, [1, 2], 20)
        big = LaurentSeries(p, 2, [1, 0, 1], 20)
        unit = LaurentSeries(p, 0, [2, 1], 20)
        assert normalize(small)[1] == "none"
        F, lab = normalize(big)
        assert lab == "1/Theta" and F.top == -2
        F, lab = normalize(unit)
        assert lab == "1/(X*Theta)" and F.top == -1

    def test_word_with_polynomial_a0(self):
        p = 3
        w = CFWord.from_letters([Poly.x(p), Poly([1, 1], p)])
        v, lab = normalized_word(w)
        assert lab == "1/Theta" and v.a0.is_zero() and v.tail == w.letters
        with pytest.raises(ValueError):
            normalized_word(CFWord.from_letters([Poly.one(p), Poly.x(p)]))


class TestPalindromes:
    def test_prefix_positions(self):
        w = W.gen_omega(5).as_cf()
        pos = palindromic_prefixes(w, 1)
        for n in W.omega_lengths(5)[1:]:
            assert n in pos
        for n in pos:
            assert w.tail[:n] == w.tail[:n][::-1]

    def test_quartic_checkpoints(self):
        w = get_instance("buck-robbins-3.4").letters(120)
        cps, label = palindrome_checkpoints(w, n_min=1, n_max=69)
        assert label == "none"
        assert {1, 4, 11, 28, 69} <= {c.n for c in cps}
        for c in cps:
            assert c.frac_theta_exact and c.frac_inverse_bound and c.product_bound
            assert c.report.product2 <= c.deg_q_prev - c.deg_q_n < 0

    def test_bad_witness(self):
        p = 2
        w = CFWord.from_tail([Poly.x(p), Poly([1, 0, 1], p), Poly.x(p) ** 5], p)
        assert bad_witness(w, 2).max_quotient_degree == 2
        assert bad_witness(w).max_quotient_degree == 5


class TestCertificates:
    def test_thm5_window(self):
        ns = range(2, 4)
        blocks = [W.thm5_blocks(n) for n in ns]
        word = get_instance("mills-robbins-3.1").letters(120)
        c = certify_thm3([b[0] for b in blocks], [b[1] for b in blocks], word, ks=ns)
        assert c.satisfied and c.substitution == "1/Theta"
        assert [(i.len_u, i.len_v) for i in c.instances] == [(9, 25), (27, 79)]
        assert all(i.structure_ok and i.prefix_ok for i in c.instances)
        assert c.x_empirical == Fraction(25, 9)
        assert c.condition_value == 2  # linear letters: M = m = 1
        assert all(m.deg_identity for m in c.mechanism)
        assert c.C_measured == -5

    def test_mismatch_reports_position(self):
        U, V = W.thm5_blocks(2)
        bad = W.Word(U.letters[:-1] + (Poly([1, 2], 3),), 3)
        word = get_instance("mills-robbins-3.1").letters(60)
        with pytest.raises(PrefixMismatch) as e:
            certify_thm3([bad], [V], word, ks=[2])
        assert e.value.index == len(U) - 1

    def test_thm8_window(self):
        ns = range(2, 4)
        b = [W.thm8_blocks(5, n) for n in ns]
        need = max(len(U) + len(V) * r for U, V, r in b) + 2
        word = get_instance("theta-p(5)").letters(need)
        c = certify_thm4([x[0] for x in b], b[0][1], [x[2] for x in b], word, ks=ns)
        assert c.satisfied and c.substitution == "Theta - a0"
        assert c.x_empirical >= Fraction(3, 2)
        assert c.C_measured == -1


class TestThm9:
    @pytest.mark.parametrize("n", [2, 3, 12, 27, 1000, 10 ** 9 + 7])
    def test_sqrt_interval(self, n):
        lo, hi = sqrt_interval(n)
        assert lo <= sqrt(n) <= hi and hi - lo <= Fraction(1, 10 ** 6)

    def test_margin_encloses_real_value(self):
        for d in range(1, 30):
            lo, hi = thm9_margin(d, -3 * d, Fraction(1, 10))
            real = (2 + 0.1 + 4 / sqrt(3 * d)) * d - 3 * d
            assert float(lo) <= real + 1e-9 and real - 1e-9 <= float(hi)

    def test_quartic_has_no_exceptions_in_window(self):
        theta = get_instance("buck-robbins-3.4").series(512)
        r = thm9_scan(theta, 5, Fraction(1, 10))
        assert r.examined == 3 + 9 + 27 + 81 + 243
        assert not r.violations and not r.excluded

    def test_large_quotient_is_flagged(self):
        p = 3
        X = Poly.x(p)
        w = CFWord.from_tail([X, X ** 10] + [X] * 20, p)
        theta = cf_eval(w, certified_precision(w))
        r = thm9_scan(theta, 2, Fraction(1, 10))
        assert "X" in {str(v.q) for v in r.violations}
        assert all(v.margin_high < 0 for v in r.violations)


def test_thread_count_env(monkeypatch):
    monkeypatch.delenv("LAUREL_THREADS", raising=False)
    assert thread_count(3) == 3
    monkeypatch.setenv("LAUREL_THREADS", "0")
    assert thread_count() == 1
    monkeypatch.setenv("LAUREL_THREADS", "x")
    with pytest.raises(ValueError):
        thread_count()
