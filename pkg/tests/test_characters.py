from fractions import Fraction

import pytest

from weilmass.characters import (DirichletCharacter, TRIVIAL_CHARACTER,
                                 chi_at_ell, disc_K, identify_characters,
                                 kronecker_character, nu_ell_K,
                                 splitting_invariants, unit_group_generators)
from weilmass.arith import kronecker_symbol, primes_up_to
from weilmass.errors import PatternMismatchError
from weilmass.gsp4 import ShapeKind
from weilmass.weil import GaloisType, WeilPolynomial, invariants


def test_unit_group_generators():
    for m in (3, 4, 5, 8, 12, 15, 16, 21, 40):
        gens = unit_group_generators(m)
        phi = 1
        for _, order in gens:
            phi *= order
        from math import gcd
        true_phi = sum(1 for a in range(1, m) if gcd(a, m) == 1)
        assert phi == true_phi, m


def test_kronecker_character_values():
    chi = kronecker_character(-4)
    for n in range(1, 40):
        assert chi.value(n) == kronecker_symbol(-4, n)
    assert chi.is_odd
    chi5 = kronecker_character(5)
    assert not chi5.is_odd


def test_trivial_character():
    assert TRIVIAL_CHARACTER.value(17) == 1
    assert TRIVIAL_CHARACTER.modulus == 1


def test_identify_example(example, example_cg):
    cg = example_cg
    assert cg.galois_type is GaloisType.CYCLIC4
    assert cg.chi_conductor == 5
    assert cg.delta_K == 125          # = delta_order: certifies maximality
    assert cg.delta_K_plus == 5
    assert len(cg.chars) == 4
    assert {c.order for c in cg.chars} == {1, 2, 4}


def test_identify_is_stable_under_doubled_bound(example, example_cg):
    again = identify_characters(example, prime_bound=2000)
    assert again.delta_K == example_cg.delta_K
    assert again.s_k[0].modulus == example_cg.s_k[0].modulus
    assert again.s_k[0].exps in (example_cg.s_k[0].exps, example_cg.s_k[1].exps)


def test_chi_values_example(example_cg):
    chi = example_cg.s_k[0]
    assert chi_at_ell(chi, 19) == -1          # order 2 element: 19 = 4 mod 5
    assert chi_at_ell(chi, 5) == 0            # ramified
    assert chi_at_ell(chi, 3) in (1j, -1j)    # order 4: 3 generates (Z/5)*
    assert chi_at_ell(chi, 11) == 1           # split
    # conjugate pair
    assert example_cg.s_k[1].value(3) == example_cg.s_k[0].conjugate().value(3)


def test_splitting_invariants_example(example):
    sd = splitting_invariants(example, 11)
    assert (sd.e, sd.f_deg, sd.r) == (1, 1, 4)
    assert sd.shape.kind is ShapeKind.SPLIT
    sd = splitting_invariants(example, 5)
    assert (sd.e, sd.f_deg, sd.r) == (4, 1, 1)
    assert sd.shape.kind is ShapeKind.QRL
    assert sd.decomposition_order == 4 and sd.inertia_order == 4
    sd = splitting_invariants(example, 2)
    assert (sd.e, sd.f_deg, sd.r) == (1, 4, 1)
    assert sd.shape.kind is ShapeKind.QUARTIC


def test_nu_ell_K_values(example_cg):
    assert nu_ell_K(example_cg, 11) == Fraction(121, 100)   # split: (l/(l-1))^2
    assert nu_ell_K(example_cg, 19) == Fraction(361, 400)   # {-1,-1}: (l/(l+1))^2
    assert nu_ell_K(example_cg, 3) == Fraction(9, 10)       # {i,-i}: l^2/(l^2+1)
    assert nu_ell_K(example_cg, 5) == Fraction(1)           # ramified: {0,0}
    assert nu_ell_K(example_cg, 2) == Fraction(4, 5)


def test_conductor_discriminant_is_maximality_check(corpora):
    for corpus in corpora.values():
        for e in corpus:
            cg = identify_characters(e.w)
            prod = 1
            for c in cg.chars:
                prod *= max(c.modulus, 1)
            assert prod == cg.delta_K == abs(e.delta_order)


def test_character_values_match_shape_tables(corpora):
    # at unramified odd test primes the multiset {chi(ell)} is pinned by the
    # shape: Split {1,1}; DQ-S {-1,-1}; DQ-I {-1,1}; Quartic {i,-i}
    want = {
        ShapeKind.SPLIT: {1, 1},
        ShapeKind.DQ_S: {-1},
        ShapeKind.DQ_I: {-1, 1},
        ShapeKind.QUARTIC: {1j, -1j},
    }
    for corpus in corpora.values():
        for e in corpus[:3]:
            cg = identify_characters(e.w)
            inv = invariants(e.w)
            for ell in primes_up_to(60):
                if ell == 2 or ell == e.w.p or inv.delta_f % ell == 0:
                    continue
                sd = splitting_invariants(e.w, ell)
                vals = {c.value(ell) for c in cg.s_k}
                assert vals == want[sd.shape.kind], (e.w, ell)


def test_biquadratic_identification():
    w = WeilPolynomial(3, 1, -4, 8)
    cg = identify_characters(w)
    assert cg.galois_type is GaloisType.BIQUADRATIC
    assert set(cg.imag_discs) == {-4, -8}   # K = Q(zeta_8)
    assert cg.delta_K == 256 == abs(invariants(w).delta_order)
    assert cg.delta_K_plus == 8


def test_disc_K(example):
    assert disc_K(example) == 125


def test_character_group_json(example_cg):
    import json

    data = json.loads(example_cg.to_json())
    assert data["delta_K"] == 125
    assert len(data["characters"]) == 4


def test_splitting_rejects_ell_equals_p(example):
    with pytest.raises(ValueError):
        splitting_invariants(example, 61)
