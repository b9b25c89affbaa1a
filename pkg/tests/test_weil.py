import random

import pytest

from weilmass.errors import ReducibleError
from weilmass.weil import (GaloisType, WeilPolynomial, enumerate_corpus,
                           galois_type, invariants, is_irreducible,
                           quartic_disc, validate, weil_region_pairs)


def test_example_coeffs(example):
    assert example.coeffs() == (3721, 1769, 331, 29, 1)
    assert example.q == 61
    assert str(example) == "T^4 + 29*T^3 + 331*T^2 + 1769*T + 3721"


def test_example_invariants(example):
    inv = invariants(example)
    assert inv.delta_fplus == 841 - 1324 + 488 == 5
    assert inv.conj_diff_norm == 109561 + 80764 + 14884 - 205204 == 5
    assert inv.delta_order == 25 * 5 == 125
    assert inv.delta_f == 61**2 * 125
    assert inv.conductor == 61


def test_delta_ratio_is_q_squared():
    rng = random.Random(5)
    for _ in range(200):
        q = random.choice([2, 3, 5, 7, 11, 13])
        w = WeilPolynomial(q, 1, rng.randrange(-10, 11), rng.randrange(-20, 40))
        inv = invariants(w)
        if inv.delta_order:
            assert inv.delta_f == w.q**2 * inv.delta_order


def test_disc_formula_matches_symbolic():
    # independent oracle: the generic quartic discriminant formula
    rng = random.Random(9)
    count = 0
    while count < 1000:
        p = rng.choice([2, 3, 5, 7, 11, 13, 61])
        e = rng.choice([1, 1, 1, 2])
        w = WeilPolynomial(p, e, rng.randrange(-25, 26), rng.randrange(-60, 120))
        c0, c1, c2, c3, _ = w.coeffs()
        inv = invariants(w)
        assert quartic_disc(c0, c1, c2, c3) == inv.delta_f
        count += 1


def test_a0_case():
    w = WeilPolynomial(5, 1, 0, 3)
    assert invariants(w).delta_fplus == -4 * 3 + 8 * 5


def test_ordinary_gate():
    rep = validate(WeilPolynomial(61, 1, 0, 0), check_maximal=False)
    assert not rep.ordinary  # gcd(0, 61) = 61


def test_reducible_examples():
    # f = (T^2 - q)^2 shape: a = 0, b = -2q
    w = WeilPolynomial(5, 1, 0, -10)
    assert not is_irreducible(w)
    with pytest.raises(ReducibleError):
        galois_type(w)


def test_galois_types_pinned():
    # independently verified with a resolvent/galois-group computation
    assert galois_type(WeilPolynomial(61, 1, -29, 331)) is GaloisType.CYCLIC4
    assert galois_type(WeilPolynomial(3, 1, -4, 8)) is GaloisType.BIQUADRATIC
    assert galois_type(WeilPolynomial(5, 1, -5, 13)) is GaloisType.NOT_ABELIAN


def test_galois_type_symmetric_under_conjugation(corpora):
    for corpus in corpora.values():
        for e in corpus:
            m = WeilPolynomial(e.w.p, e.w.e, -e.w.a, e.w.b)
            assert galois_type(m) == e.galois_type


def test_validate_example(example):
    rep = validate(example)
    assert rep.ok
    assert rep.galois_type is GaloisType.CYCLIC4
    assert rep.maximal is True
    assert "asserted" in rep.polarizable


def test_region_membership():
    pairs = weil_region_pairs(61)
    assert (-29, 331) in pairs
    assert all(a * a <= 16 * 61 for a, b in pairs)


def test_fplus_roots_real_distinct_in_range(corpora):
    import math

    for corpus in corpora.values():
        for e in corpus:
            inv = invariants(e.w)
            assert inv.delta_fplus > 0
            # both roots of T^2 - aT + (b-2q) in [-2 sqrt q, 2 sqrt q]:
            # exact: (b+2q)^2 >= 4a^2 q with b+2q >= 0, delta_fplus > 0
            q = e.w.q
            assert e.w.b + 2 * q >= 0
            assert (e.w.b + 2 * q) ** 2 >= 4 * e.w.a**2 * q
            lo, hi = sorted(((e.w.a - math.isqrt(inv.delta_fplus)) / 2,
                             (e.w.a + math.isqrt(inv.delta_fplus)) / 2))
            assert -2 * math.sqrt(q) - 1e-9 <= lo < hi <= 2 * math.sqrt(q) + 1e-9


def test_corpus_q61_contains_example(example):
    # scan only the example's neighborhood to keep this quick
    found = [
        (a, b) for a, b in weil_region_pairs(61)
        if (a, b) == (-29, 331)
    ]
    assert found
    assert validate(example).ok


def test_corpus_q2_snapshot(corpora):
    got = [(e.w.a, e.w.b, e.galois_type.value, e.delta_order)
           for e in corpora[2]]
    assert got == [
        (-3, 5, "biquadratic", 225),
        (-1, -1, "biquadratic", 441),
        (1, -1, "biquadratic", 441),
        (3, 5, "biquadratic", 225),
    ]


def test_corpus_q4_empty():
    assert enumerate_corpus(4) == []


def test_first_biquadratic_regression(corpora):
    # first biquadratic hit scanning q = 2, 3, ...: q = 2, (a, b) = (-3, 5)
    e = corpora[2][0]
    assert (e.w.a, e.w.b) == (-3, 5)
    assert e.galois_type is GaloisType.BIQUADRATIC
    rep = validate(e.w)
    assert rep.ok


def test_corpus_workers_deterministic():
    seq = enumerate_corpus(3, workers=1)
    par = enumerate_corpus(3, workers=2)
    assert [(e.w.a, e.w.b) for e in seq] == [(e.w.a, e.w.b) for e in par]


def test_corpus_jsonl(corpora):
    line = corpora[3][0].to_json()
    assert '"p": 3' in line and '"galois_type"' in line and '"delta_order"' in line
