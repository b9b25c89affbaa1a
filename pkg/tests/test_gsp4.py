import numpy as np
import pytest

from weilmass import gsp4
from weilmass.errors import (OracleBudgetError, OutOfScopeShapeError,
                             PatternMismatchError)
from weilmass.gsp4 import (ClassShape, ShapeKind, centralizer_order_bruteforce,
                           centralizer_order_formula, conjugate_in_gsp4,
                           count_charpoly_in_fiber,
                           count_cyclic_with_semisimplification,
                           count_semisimple_with_charpoly,
                           drl_s_representatives, frobenius_shape,
                           gsp4_order, multiplier, pack_matrix,
                           rq2_representatives, shape_of_element,
                           shape_representative, sp4_order, standard_j,
                           unpack_matrix)
from weilmass.modmat import identity, mat, mat_mul
from weilmass.weil import WeilPolynomial


def test_orders():
    assert sp4_order(2) == 720
    assert sp4_order(3) == 51840
    assert sp4_order(5) == 9360000
    assert gsp4_order(3) == 103680


def test_multiplier_identity():
    assert multiplier(identity(), 5) == 1


def test_multiplier_diag_q():
    g = mat(((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 61, 0), (0, 0, 0, 61)), 7)
    assert multiplier(g, 7) == 61 % 7


def test_multiplier_rejects_non_similitude():
    g = mat(((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), 5)
    assert multiplier(g, 5) is None


def test_pack_roundtrip():
    rng = np.random.default_rng(3)
    for ell in (2, 3, 5, 7):
        for _ in range(50):
            m = tuple(tuple(int(x) for x in row)
                      for row in rng.integers(0, ell, (4, 4)))
            assert unpack_matrix(pack_matrix(m, ell), ell) == m


def test_enumeration_counts(enum2, enum3):
    assert enum2.order == 720
    assert enum3.order == 51840


def test_enumeration_is_sp4(enum3):
    # spot-check: every 1000th element has multiplier 1
    for key in enum3.elements[::1000]:
        assert multiplier(unpack_matrix(int(key), 3), 3) == 1


def test_enumeration_budget_gate():
    with pytest.raises(OracleBudgetError):
        gsp4.enumerate_sp4(7)
    with pytest.raises(OracleBudgetError):
        gsp4.enumerate_sp4(11, allow_big=True)


def test_enumeration_cache_roundtrip(tmp_path, enum2):
    e1 = gsp4.enumerate_sp4(2, cache_dir=tmp_path)
    assert (tmp_path / "sp4_l2_v1.bin").exists()
    e2 = gsp4.enumerate_sp4(2, cache_dir=tmp_path)
    assert np.array_equal(e1.elements, e2.elements)
    assert np.array_equal(e1.elements, enum2.elements)


def test_centralizer_formulas_paper_values():
    assert centralizer_order_formula(ShapeKind.QUARTIC, 3) == 20
    assert centralizer_order_formula(ShapeKind.DRL_S, 5) == 200
    assert centralizer_order_formula(ShapeKind.SPLIT, 2) == 1  # degenerate


def test_frobenius_shapes_example(example):
    assert frobenius_shape(example, 11).kind is ShapeKind.SPLIT
    assert frobenius_shape(example, 19).kind is ShapeKind.DQ_S
    assert frobenius_shape(example, 5).kind is ShapeKind.QRL
    assert frobenius_shape(example, 3).kind is ShapeKind.QUARTIC
    assert frobenius_shape(example, 2).kind is ShapeKind.QUARTIC


def test_frobenius_shape_rejects_ell_p(example):
    with pytest.raises(ValueError):
        frobenius_shape(example, 61)


def test_frobenius_shape_two_classes_flag():
    w = WeilPolynomial(3, 1, -3, 5)  # cyclic, conductor 13
    # find an ell where f mod ell has shape DRL-S or RQ-2 (ramified in K)
    shape13 = frobenius_shape(w, 13)
    assert shape13.two_classes or shape13.kind in (ShapeKind.QRL,)
    assert frobenius_shape(w, 13).sign is None


def test_shape_of_element_split(enum5):
    g = mat(((1, 0, 0, 0), (0, 3, 0, 0), (0, 0, 2, 0), (0, 0, 0, 4)), 5)
    assert multiplier(g, 5) == 2
    assert shape_of_element(g, 5) == ClassShape(ShapeKind.SPLIT, None)


def test_shape_of_element_out_of_scope():
    with pytest.raises(OutOfScopeShapeError):
        shape_of_element(identity(), 5)  # semisimple, not regular


def test_drl_s_two_classes(enum3):
    g1, g2 = drl_s_representatives(3, 1)
    assert multiplier(g1, 3) == 1 and multiplier(g2, 3) == 1
    assert shape_of_element(g1, 3) == ClassShape(ShapeKind.DRL_S, +1)
    assert shape_of_element(g2, 3) == ClassShape(ShapeKind.DRL_S, -1)
    assert not conjugate_in_gsp4(g1, g2, 3)
    assert centralizer_order_bruteforce(g1, enum3) == 36
    assert centralizer_order_bruteforce(g2, enum3) == 36


def test_drl_s_conjugating_matrix_z_condition():
    # Z = ((z1,0,z3,0),(0,z2,0,z4),(0,0,z1,0),(0,0,0,z2*x)) conjugates the
    # '+' representative to '-' in GL4 always, but is a similitude iff
    # z1^2 = z2^2 x, impossible for x a nonsquare
    for ell in (3, 5):
        a = 1
        x = gsp4.least_nonsquare(ell)
        g1, g2 = drl_s_representatives(ell, a)
        import itertools

        for z1, z2, z3, z4 in itertools.product(range(ell), repeat=4):
            if z1 == 0 or z2 == 0:
                continue
            z = mat(((z1, 0, z3, 0), (0, z2, 0, z4),
                     (0, 0, z1, 0), (0, 0, 0, z2 * x)), ell)
            assert mat_mul(g1, z, ell) == mat_mul(z, g2, ell)
            is_sim = multiplier(z, ell) is not None
            assert is_sim == ((z1 * z1) % ell == (z2 * z2 * x) % ell)
            assert not is_sim  # x nonsquare makes it unsolvable


def test_rq2_two_classes(enum3):
    rp, rm = rq2_representatives(3, 2)
    assert shape_of_element(rp, 3) == ClassShape(ShapeKind.RQ_2, +1)
    assert shape_of_element(rm, 3) == ClassShape(ShapeKind.RQ_2, -1)
    assert not conjugate_in_gsp4(rp, rm, 3)
    assert centralizer_order_bruteforce(rp, enum3) == 2 * 9 * 2
    assert centralizer_order_bruteforce(rm, enum3) == 2 * 9 * 2


REALIZABLE_L3 = {ShapeKind.DQ_S, ShapeKind.DQ_I, ShapeKind.QUARTIC,
                 ShapeKind.QRL, ShapeKind.DRL_S, ShapeKind.DRL_I,
                 ShapeKind.RQ_1, ShapeKind.RQ_2}


def test_realizable_shapes_l3(enum3):
    found = {k for k in ShapeKind if shape_representative(enum3, k) is not None}
    assert found == REALIZABLE_L3  # Split needs 4 distinct paired eigenvalues


def test_centralizers_match_formula_l3(enum3):
    for kind in REALIZABLE_L3:
        rep = shape_representative(enum3, kind)
        assert centralizer_order_bruteforce(rep, enum3) == \
            centralizer_order_formula(kind, 3), kind


def test_identity_centralizer_is_whole_group(enum3):
    assert centralizer_order_bruteforce(identity(), enum3) == gsp4_order(3)


def test_class_size_equals_fiber_count(enum3, example):
    # ell = 3 is unramified for the example: count = |GSp4| / #Z(shape)
    kind = frobenius_shape(example, 3).kind
    assert count_charpoly_in_fiber(example, 3, enum3) == \
        gsp4_order(3) // centralizer_order_formula(kind, 3) == 5184


def test_fiber_partition(enum3):
    for m in (1, 2):
        h = enum3.fiber_histogram(m)
        assert int(h.sum()) == sp4_order(3)
        assert int((h > 0).sum()) == 9  # exactly ell^2 characteristic polys


def test_multiplier_fibers_equinumerous(enum3):
    # fiber counts are independent of the coset representative: histograms
    # for every multiplier sum to |Sp4|
    for m in (1, 2):
        assert int(enum3.fiber_histogram(m).sum()) == sp4_order(3)


def test_cyclic_count_equals_raw_when_unramified(enum3, example):
    assert count_cyclic_with_semisimplification(example, 3, enum3) == \
        count_charpoly_in_fiber(example, 3, enum3)


def test_qrl_cyclic_count_l5(enum5, example):
    # one class of size |GSp4(F5)| / (l^2 (l-1)) = 374400
    assert count_cyclic_with_semisimplification(example, 5, enum5) == 374400


def test_semisimple_count_rejects_ramified(enum3):
    with pytest.raises(PatternMismatchError):
        count_semisimple_with_charpoly((1, 1, 1), 3, 1, enum3)  # disc = 1-4 = 0 mod 3


def test_kernel_backends_agree(enum3):
    from weilmass import _sp4kernel_py as pyk

    try:
        from weilmass import _sp4kernel as ck
    except ImportError:
        pytest.skip("compiled kernel not built")
    g0 = enum3.fiber_rep_packed(2)
    h1 = ck.charpoly_histogram(enum3.elements, 3, g0)
    h2 = pyk.charpoly_histogram(enum3.elements, 3, g0)
    assert np.array_equal(h1, h2)
    checks = np.array([[1, 1, 0, 0, 0]], dtype=np.int64)
    for mode in (0, 1, 2):
        assert ck.count_in_fiber(enum3.elements, 3, g0, 2, 1, checks, mode) == \
            pyk.count_in_fiber(enum3.elements, 3, g0, 2, 1, checks, mode)
    t = pack_matrix(drl_s_representatives(3, 1)[0], 3)
    assert ck.count_commuting(enum3.elements, 3, g0, t) == \
        pyk.count_commuting(enum3.elements, 3, g0, t)
    gens = np.array([pack_matrix(g, 2) for g in gsp4.sp4_generators(2)],
                    dtype=np.uint64)
    assert np.array_equal(ck.bfs_closure(gens, 2, 720),
                          pyk.bfs_closure(gens, 2, 720))
