import random

import pytest
from hypothesis import given, settings, strategies as st

from weilmass.fppoly import (degree, factor_monic_mod_ell,
                             is_irreducible_mod_ell, poly_gcd, poly_mod,
                             poly_mul, poly_pow_mod, poly_sub)

PAPER_F = (3721, 1769, 331, 29, 1)  # T^4+29T^3+331T^2+1769T+3721 ascending


def refold(facs, ell):
    out = (1,)
    for g, e in facs:
        for _ in range(e):
            out = poly_mul(out, g, ell)
    return out


def test_example_mod5():
    # (T+1)^4 = T^4+4T^3+6T^2+4T+1 = f mod 5
    assert factor_monic_mod_ell(PAPER_F, 5) == [((1, 1), 4)]


def test_example_mod2_irreducible():
    assert factor_monic_mod_ell(PAPER_F, 2) == [((1, 1, 1, 1, 1), 1)]


def test_monomial():
    assert factor_monic_mod_ell((0, 0, 0, 0, 1), 3) == [((0, 1), 4)]


def test_example_mod11_splits():
    facs = factor_monic_mod_ell(PAPER_F, 11)
    assert len(facs) == 4 and all(e == 1 and degree(g) == 1 for g, e in facs)
    assert refold(facs, 11) == poly_mod(PAPER_F, 11)


def test_example_mod19_two_quadratics():
    facs = factor_monic_mod_ell(PAPER_F, 19)
    assert len(facs) == 2 and all(e == 1 and degree(g) == 2 for g, e in facs)
    # both constant terms must be q = 61 = 4 mod 19
    assert all(g[0] == 61 % 19 for g, _ in facs)


def test_rejects_nonprime_modulus():
    with pytest.raises(ValueError):
        factor_monic_mod_ell(PAPER_F, 6)


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 11])
def test_roundtrip_random(ell):
    rng = random.Random(1000 + ell)
    for _ in range(2000):
        coeffs = tuple(rng.randrange(ell) for _ in range(4)) + (1,)
        facs = factor_monic_mod_ell(coeffs, ell)
        assert refold(facs, ell) == poly_mod(coeffs, ell)
        # factors distinct, monic, irreducible
        polys = [g for g, _ in facs]
        assert len(set(polys)) == len(polys)
        for g in polys:
            assert g[-1] == 1
            assert is_irreducible_mod_ell(g, ell)


@pytest.mark.parametrize("ell", [2, 3, 5])
def test_irreducibility_by_frobenius_gcd(ell):
    # gcd(g, T^(ell^d) - T) picks out factors of degree dividing d; a returned
    # factor must admit none for d < deg g
    rng = random.Random(77 + ell)
    for _ in range(300):
        coeffs = tuple(rng.randrange(ell) for _ in range(4)) + (1,)
        for g, _ in factor_monic_mod_ell(coeffs, ell):
            if degree(g) <= 1:
                continue
            x = (0, 1)
            h = x
            for d in range(1, degree(g)):
                h = poly_pow_mod(h, ell, g, ell)
                assert degree(poly_gcd(poly_sub(h, x, ell), g, ell)) <= 0


def test_deterministic_order():
    for ell in (2, 3, 5, 7):
        a = factor_monic_mod_ell(PAPER_F, ell)
        b = factor_monic_mod_ell(PAPER_F, ell)
        assert a == b
        assert a == sorted(a, key=lambda t: (degree(t[0]), t[0]))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5, 13]),
       st.tuples(*[st.integers(0, 12)] * 4))
def test_roundtrip_hypothesis(ell, lower):
    coeffs = tuple(c % ell for c in lower) + (1,)
    facs = factor_monic_mod_ell(coeffs, ell)
    assert refold(facs, ell) == poly_mod(coeffs, ell)
