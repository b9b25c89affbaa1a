from fractions import Fraction

import mpmath
import pytest

from weilmass import classnumber as cn
from weilmass.characters import identify_characters, kronecker_character
from weilmass.errors import IntegralityError
from weilmass.weil import WeilPolynomial


def test_B1_chi_minus4():
    chi = kronecker_character(-4)
    assert cn.B1(chi) == (Fraction(-1, 2), Fraction(0))


def test_B1_rejects_trivial():
    from weilmass.characters import TRIVIAL_CHARACTER

    with pytest.raises(ValueError):
        cn.B1(TRIVIAL_CHARACTER)


def test_L1_leibniz_40_digits():
    chi = kronecker_character(-4)
    with mpmath.workdps(60):
        val = cn.L1(chi, dps=60)
        assert abs(val - mpmath.pi / 4) < mpmath.mpf(10) ** -40
        assert abs(val.imag) < mpmath.mpf(10) ** -40


def test_L1_rejects_even():
    with pytest.raises(ValueError):
        cn.L1(kronecker_character(5))


def test_gauss_sum_magnitude():
    # |tau(chi)| = sqrt(f) for primitive chi
    for d in (-3, -4, -7, -8, -11, 5, 8):
        chi = kronecker_character(d)
        with mpmath.workdps(40):
            assert abs(abs(cn.gauss_sum(chi, 40)) - mpmath.sqrt(abs(d))) < 1e-30


def test_imag_quadratic_h_values():
    assert cn.imag_quadratic_h(-4) == 1
    assert cn.imag_quadratic_h(-23) == 3
    assert cn.imag_quadratic_h(-163) == 1
    assert cn.imag_quadratic_h(-3) == 1
    assert cn.imag_quadratic_h(-47) == 5


def test_imag_quadratic_h_rejects_non_fundamental():
    with pytest.raises(ValueError):
        cn.imag_quadratic_h(-12)
    with pytest.raises(ValueError):
        cn.imag_quadratic_h(5)


def test_class_number_formula_vs_forms():
    # L(1, chi_D) = 2 pi h(D) / (w sqrt|D|) for 20 fundamental D < 0
    ds = [d for d in range(-3, -200, -1)
          if d in (-3, -4) or (d % 4 in (0, 1) and _is_fund(d))][:20]
    assert len(ds) == 20
    for d in ds:
        chi = kronecker_character(d)
        with mpmath.workdps(40):
            lval = cn.L1(chi, 40)
            w = cn.unit_count_imag_quadratic(d)
            h_from_l = lval.real * w * mpmath.sqrt(-d) / (2 * mpmath.pi)
            assert abs(h_from_l - cn.imag_quadratic_h(d)) < 1e-25, d


def _is_fund(d):
    from weilmass.arith import fundamental_discriminant, is_square

    if d == 0 or is_square(abs(d)):
        return False
    try:
        return fundamental_discriminant(d) == d
    except ValueError:
        return False


def test_omega_example(example_cg):
    assert cn.omega_K(example_cg) == 10


def test_omega_biquadratic_cases():
    # K = Q(zeta_8): discs {-4, -8}
    cg8 = identify_characters(WeilPolynomial(3, 1, -4, 8))
    assert cn.omega_K(cg8) == 8
    # contains Q(i) but not Q(zeta_3): q=3, a=0, b=-5 has discs (-4, -11)
    cg4 = identify_characters(WeilPolynomial(3, 1, 0, -5))
    assert set(cg4.imag_discs) == {-4, -11}
    assert cn.omega_K(cg4) == 4
    # generic: q=2 first corpus member, K = Q(sqrt-3, sqrt-5)-type
    cg2 = identify_characters(WeilPolynomial(2, 1, -3, 5))
    assert cn.omega_K(cg2) in (2, 6)


def test_relative_class_number_example(example, example_cg):
    data = cn.relative_class_number(example, example_cg)
    assert data.h_rel == 1
    assert data.omega == 10
    assert data.rhs_mass == Fraction(1, 10)
    assert data.unit_index == 1
    assert not data.polarizability_refuted
    assert not data.conjectural_interpretation
    assert data.integrality_error < 1e-30


def test_relative_class_number_unit_index_two():
    # q=2, a=-1, b=-1: K = Q(sqrt-3, sqrt-7), analytic ratio 1/2 certifies
    # Hasse unit index 2 (so the polarizability assertion is untenable)
    w = WeilPolynomial(2, 1, -1, -1)
    data = cn.relative_class_number(w)
    assert data.l_value_ratio == Fraction(1, 2)
    assert data.unit_index == 2
    assert data.h_rel == 1
    assert data.polarizability_refuted
    assert data.rhs_mass == Fraction(1, 12)
    assert data.form_oracle_ratio == Fraction(1, 2)


def test_biquadratic_oracle_agreement(corpora):
    for corpus in corpora.values():
        for e in corpus:
            data = cn.relative_class_number(e.w)
            if data.form_oracle_ratio is not None:
                assert data.form_oracle_ratio == data.l_value_ratio


def test_euler_product_direction(example_cg):
    # truncated Euler product agrees with the closed form within 5%
    for chi in example_cg.s_k:
        with mpmath.workdps(30):
            closed = cn.L1(chi, 30)
            trunc = cn.truncated_euler_product(chi, 10**5, 30)
            assert abs(trunc - closed) / abs(closed) < 0.05
