import pytest

from laurel.algebra import LaurentSeries, Poly
from laurel.cfengine import cf_expand
from laurel.instances import buck_robbins_poly, frobenius_poly
from laurel.roots import (BivarPoly, HenselConditionError, bivar, find_root, newton_condition,
                          newton_root, seed_search, verify_algebraic)


def test_hasse_derivatives():
    p = 3
    P = bivar(p, [1], [0, 1], [2], [0, 0, 1], [1])  # Z^4 + X^2 Z^3 + 2 Z^2 + X Z + 1
    d = P.derivative()
    assert d == P.hasse(1)
    # P^[2] = C(2,2) c2 + C(3,2) c3 Z + C(4,2) c4 Z^2, and 3 = 6 = 0 in F_3
    assert P.hasse(2) == bivar(p, [2])
    assert P.hasse(4) == bivar(p, [1])


def test_evaluation_matches_horner_by_hand():
    p = 5
    P = bivar(p, [1, 1], [0, 2], [3])
    z = LaurentSeries.from_poly(Poly([2, 1], p))
    want = Poly([1, 1], p) + Poly([0, 2], p) * Poly([2, 1], p) + Poly([2, 1], p) ** 2 * 3
    assert P(z) == LaurentSeries.from_poly(want)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius_root(p):
    P = frobenius_poly(p)
    seeds = seed_search(P, (-3, 1))
    assert len(seeds) == 1
    cert = newton_root(P, seeds[0], 120)
    assert cert.residual_valuation >= 120
    assert verify_algebraic(P, cert.root) >= 120
    X = Poly.x(p)
    res = cf_expand(cert.root, 5)
    assert res.word.tail[:3] == (X, X ** p, X ** (p * p))


def test_residuals_improve():
    P = frobenius_poly(3)
    cert = newton_root(P, LaurentSeries(3, -1, [1], None), 200)
    r = cert.residuals
    assert all(b > a for a, b in zip(r, r[1:]))


def test_buck_robbins_unique_root():
    seeds = seed_search(buck_robbins_poly(), (-3, 1))
    assert len(seeds) == 1
    assert seeds[0].top == -1


def test_hensel_condition_rejects_bad_seed():
    P = frobenius_poly(3)
    bad = LaurentSeries(3, 2, [1], None)
    ok, _, why = newton_condition(P, bad)
    assert not ok and why
    with pytest.raises(HenselConditionError):
        newton_root(P, bad, 50)


def test_inseparable_polynomial():
    p = 2
    P = bivar(p, [0, 1], [0], [1])  # Z^2 + X has zero derivative in Z
    ok, _, why = newton_condition(P, LaurentSeries(p, 0, [1], None))
    assert not ok and "inseparable" in why


def test_exact_root_valuation():
    p = 7
    P = bivar(p, [0, 6], [1])  # Z - X
    assert verify_algebraic(P, LaurentSeries.from_poly(Poly.x(p))) == 10 ** 9


def test_refutation_is_small_valuation():
    P = frobenius_poly(3)
    root = newton_root(P, seed_search(P, (-3, 1))[0], 60).root
    wrong = bivar(3, [1], [0, 1], [0], [0], [1])  # Z^4 + X Z + 1
    assert verify_algebraic(wrong, root) < 5


def test_find_root_with_prefix():
    p = 5
    P = bivar(p, [4, 0, 4], [0], [1])  # Z^2 - (X^2 + 1): two roots +-(X + ...)
    with pytest.raises(ValueError):
        find_root(P, 40, (1, 1))
    c = find_root(P, 40, (1, 1), prefix=(1,))
    assert c.root.coefficient(1) == 1
    assert verify_algebraic(P, c.root) >= 40


def test_bivar_field_checks():
    with pytest.raises(ValueError):
        BivarPoly([Poly([1], 2), Poly([1], 3)])
