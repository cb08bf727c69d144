import pytest

from laurel import words as W
from laurel.cfengine import CFWord, cf_eval, cf_expand
from laurel.instances import (INSTANCE_IDS, UnknownInstance, get_instance, lasjaunias_relation,
                              theta_p_poly)
from laurel.roots import verify_algebraic


@pytest.mark.parametrize("spec", ["frobenius(4)", "theta-p(3)", "theta-p(9)", "baum-sweet(2)",
                                  "lasjaunias", "nope", "phi-p(2)", ""])
def test_unknown_ids(spec):
    with pytest.raises(UnknownInstance):
        get_instance(spec)


def test_registry_lists_every_family():
    assert len(INSTANCE_IDS) == 7
    for spec in ["frobenius(5)", "baum-sweet", "mills-robbins-3.1", "lasjaunias(2)", "theta-p(7)",
                 "phi-p(5)", "buck-robbins-3.4"]:
        inst = get_instance(spec)
        assert inst.id == spec and inst.note


@pytest.mark.parametrize("spec,count", [("mills-robbins-3.1", 40), ("buck-robbins-3.4", 40),
                                        ("theta-p(5)", 30), ("frobenius(2)", 5)])
def test_root_matches_closed_form_word(spec, count):
    inst = get_instance(spec)
    res = cf_expand(inst.series(2048), count)
    assert res.word.letters[:count] == inst.letters(count).letters


def test_series_precision():
    F = get_instance("baum-sweet").series(300)
    assert F.prec == 300


@pytest.mark.parametrize("k", [0, 1, 2])
def test_lasjaunias_relation(k):
    w = W.gen_lasjaunias(k, 120).as_cf()
    F = cf_eval(w, 200)
    assert verify_algebraic(lasjaunias_relation(k, w), F) >= 150


@pytest.mark.parametrize("p", [5, 7, 11])
def test_theta_p_relation(p):
    F = cf_eval(CFWord.from_letters(W.gen_theta_p_word(p, 200).letters), 250)
    assert verify_algebraic(theta_p_poly(p), F) >= 200
    # the variant with constant term ... + X f_{p-1} fails at the first coefficient
    assert verify_algebraic(theta_p_poly(p, c=1), F) == -p


def test_phi_p_is_periodic():
    inst = get_instance("phi-p(5)")
    res = cf_expand(inst.series(200), 20)
    assert res.word.letters == inst.letters(20).letters
