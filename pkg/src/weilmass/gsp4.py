"""Symplectic similitude machinery over F_ell for 4x4 matrices.

The pairing is the standard block form J = ((0, I2), (-I2, 0)).  Conjugacy
classes of cyclic (= regular) elements whose characteristic polynomial
factors into irreducibles of equal degree are labeled by nine shapes:

    Split, DQ-S, DQ-I, Quartic          (squarefree characteristic polynomial)
    QRL, DRL-S, DRL-I, RQ-1, RQ-2       (repeated factors, cyclic)

DRL-S and RQ-2 each consist of two conjugacy classes distinguished by a
square-class sign; all other shapes are single classes.  The module also
provides the brute-force oracle: a full enumeration of Sp4(F_ell) by
breadth-first closure of symplectic transvections, with packed-word sweeps
for characteristic-polynomial counts and centralizer orders.
"""

from __future__ import annotations

import enum
import itertools
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .arith import is_prime
from .errors import OracleBudgetError, OutOfScopeShapeError, PatternMismatchError
from .fppoly import Poly, factor_monic_mod_ell, poly_mod, poly_mul
from .modmat import (Mat, charpoly, det_mod, identity, mat, mat_mul,
                     nullspace_mod, poly_at_matrix, transpose)
from .weil import WeilPolynomial

CACHE_VERSION = 1
CACHE_MAGIC = b"WMSP4KRN"
CACHE_ENV = "WEIL_MASS_CACHE"

# shapes realizable only for ell <= these are enumerable; 7 is opt-in
MANDATORY_ELLS = (2, 3, 5)
OPTIONAL_ELL = 7

_NULLSPACE_ENUM_LIMIT = 2 * 10**6


class ShapeKind(enum.Enum):
    SPLIT = "Split"
    DQ_S = "DQ-S"
    DQ_I = "DQ-I"
    QUARTIC = "Quartic"
    QRL = "QRL"
    DRL_S = "DRL-S"
    DRL_I = "DRL-I"
    RQ_1 = "RQ-1"
    RQ_2 = "RQ-2"


TWO_CLASS_KINDS = frozenset({ShapeKind.DRL_S, ShapeKind.RQ_2})


@dataclass(frozen=True)
class ClassShape:
    kind: ShapeKind
    sign: int | None = None  # +1 / -1 for DRL-S and RQ-2 elements, else None

    @property
    def two_classes(self) -> bool:
        return self.kind in TWO_CLASS_KINDS

    def __str__(self) -> str:
        if self.sign is None:
            return self.kind.value
        return f"{self.kind.value}{'+' if self.sign > 0 else '-'}"


def sp4_order(ell: int) -> int:
    return ell**4 * (ell**2 - 1) * (ell**4 - 1)


def gsp4_order(ell: int) -> int:
    return (ell - 1) * sp4_order(ell)


def centralizer_order_formula(kind: ShapeKind, ell: int) -> int:
    """Centralizer order in GSp4(F_ell) of an element of the given shape."""
    l = ell
    return {
        ShapeKind.SPLIT: (l - 1) ** 3,
        ShapeKind.DQ_S: (l + 1) ** 2 * (l - 1),
        ShapeKind.DQ_I: (l + 1) * (l - 1) ** 2,
        ShapeKind.QUARTIC: (l**2 + 1) * (l - 1),
        ShapeKind.QRL: l**2 * (l - 1),
        ShapeKind.DRL_S: 2 * l**2 * (l - 1),
        ShapeKind.DRL_I: l * (l - 1) ** 2,
        ShapeKind.RQ_1: l * (l**2 - 1),
        ShapeKind.RQ_2: 2 * l**2 * (l - 1),
    }[kind]


# ---------------------------------------------------------------------------
# pairing, multiplier, packing

def standard_j(ell: int) -> Mat:
    return mat(((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0)), ell)


def multiplier(rows, ell: int) -> int | None:
    """Similitude factor m with g^T J g = m J, or None if g is no similitude."""
    g = mat(rows, ell)
    j = standard_j(ell)
    gtjg = mat_mul(mat_mul(transpose(g), j, ell), g, ell)
    m = gtjg[0][2]
    if m == 0:
        return None
    target = tuple(tuple(x * m % ell for x in r) for r in j)
    return m if gtjg == target else None


def pack_matrix(rows, ell: int) -> int:
    w = kernels.width_for(ell)
    key = 0
    for i in range(4):
        for j in range(4):
            key |= (rows[i][j] % ell) << ((4 * i + j) * w)
    return key


def unpack_matrix(key: int, ell: int) -> Mat:
    w = kernels.width_for(ell)
    mask = (1 << w) - 1
    return tuple(tuple((key >> ((4 * i + j) * w)) & mask for j in range(4))
                 for i in range(4))


# ---------------------------------------------------------------------------
# shape classification from a factored characteristic polynomial

def classify_factored(facs: list[tuple[Poly, int]], m: int, ell: int) -> ShapeKind:
    """Shape of a cyclic element with the given factorization and multiplier.

    Raises PatternMismatchError when the factorization cannot arise for a
    similitude with multiplier m (mixed degrees, bad constant terms, or no
    eigenvalue pairing multiplying to m).
    """
    m %= ell
    if m == 0:
        raise ValueError("multiplier must be nonzero")
    degs = {len(g) - 1 for g, _ in facs}
    mults = {e for _, e in facs}
    if len(degs) != 1 or len(mults) != 1:
        raise PatternMismatchError(
            f"mixed factor degrees/multiplicities {facs} mod {ell}")
    fdeg = degs.pop()
    e = mults.pop()
    r = len(facs)
    if e * fdeg * r != 4:
        raise PatternMismatchError(f"not a quartic pattern: {facs} mod {ell}")

    if e == 1 and fdeg == 1:  # four distinct linear factors
        roots = sorted((-g[0]) % ell for g, _ in facs)
        remaining = list(roots)
        while remaining:
            rt = remaining.pop(0)
            partner = m * pow(rt, -1, ell) % ell
            if partner not in remaining:
                raise PatternMismatchError(
                    f"roots {roots} do not pair to multiplier {m} mod {ell}")
            remaining.remove(partner)
        return ShapeKind.SPLIT
    if e == 1 and fdeg == 2:
        (g1, _), (g2, _) = facs
        if g1[0] == m and g2[0] == m:
            return ShapeKind.DQ_S
        if g1[0] * g2[0] % ell == m * m % ell:
            return ShapeKind.DQ_I
        raise PatternMismatchError(
            f"quadratic constant terms {g1[0]},{g2[0]} incompatible with m={m}")
    if e == 1 and fdeg == 4:
        return ShapeKind.QUARTIC
    if e == 4:
        alpha = (-facs[0][0][0]) % ell
        if alpha * alpha % ell == m:
            return ShapeKind.QRL
        raise PatternMismatchError(
            f"(T-{alpha})^4 with {alpha}^2 != m={m} mod {ell}")
    if e == 2 and fdeg == 1:
        a1, a2 = sorted((-g[0]) % ell for g, _ in facs)
        if a2 == (-a1) % ell and a1 * a1 % ell == m:
            return ShapeKind.DRL_S
        if a1 * a2 % ell == m:
            return ShapeKind.DRL_I
        raise PatternMismatchError(
            f"repeated roots {a1},{a2} incompatible with m={m} mod {ell}")
    if e == 2 and fdeg == 2:
        g = facs[0][0]
        if g[0] == m:
            return ShapeKind.RQ_1
        if g[0] == (-m) % ell:
            return ShapeKind.RQ_2
        raise PatternMismatchError(
            f"g(0)={g[0]} must be +-m for m={m} mod {ell}")
    raise PatternMismatchError(f"unclassifiable pattern {facs} mod {ell}")


def frobenius_shape(w: WeilPolynomial, ell: int) -> ClassShape:
    """Cyclic shape of Frobenius acting mod ell, read off f mod ell.

    For DRL-S and RQ-2 the returned shape stands for two conjugacy classes of
    equal size (sign is None here; only elements carry a resolved sign).
    """
    if ell == w.p:
        raise ValueError("ell must differ from p; use the p-adic local factor")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    facs = factor_monic_mod_ell(w.coeffs(), ell)
    return ClassShape(classify_factored(facs, w.q % ell, ell), None)


def shape_of_element(rows, ell: int) -> ClassShape:
    """Shape of a similitude, with resolved sign for the two-class shapes.

    Raises OutOfScopeShapeError for elements that are neither cyclic nor
    regular semisimple, or whose factor degrees are mixed; ValueError for
    non-similitudes.
    """
    g = mat(rows, ell)
    m = multiplier(g, ell)
    if m is None:
        raise ValueError("matrix is not a symplectic similitude")
    cp = charpoly(g, ell)
    facs = factor_monic_mod_ell(cp, ell)
    squarefree = all(e == 1 for _, e in facs)
    if not squarefree:
        # cyclic iff (charpoly / g_j)(gamma) != 0 for every distinct factor
        full: Poly = poly_mod(cp, ell)
        for gj, _e in facs:
            if _is_zero_at(_poly_div_exact(full, gj, ell), g, ell):
                raise OutOfScopeShapeError(
                    "element is neither cyclic nor regular semisimple")
    try:
        kind = classify_factored(facs, m, ell)
    except PatternMismatchError as exc:
        raise OutOfScopeShapeError(str(exc)) from exc
    if kind not in TWO_CLASS_KINDS:
        return ClassShape(kind, None)
    if kind is ShapeKind.DRL_S:
        alpha = next((-gj[0]) % ell for gj, _ in facs)
        rep_plus, rep_minus = drl_s_representatives(ell, alpha)
    else:
        rep_plus, rep_minus = rq2_representatives(ell, m)
    if conjugate_in_gsp4(g, rep_plus, ell):
        return ClassShape(kind, +1)
    if conjugate_in_gsp4(g, rep_minus, ell):
        return ClassShape(kind, -1)
    raise OutOfScopeShapeError("two-class element conjugate to neither representative")


def _poly_div_exact(f: Poly, g: Poly, ell: int) -> Poly:
    from .fppoly import poly_divmod

    q, r = poly_divmod(f, g, ell)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def _is_zero_at(coeffs: Poly, g: Mat, ell: int) -> bool:
    from .modmat import is_zero

    return is_zero(poly_at_matrix(coeffs, g, ell))


# ---------------------------------------------------------------------------
# pinned representatives for the two-class shapes

def least_nonsquare(ell: int) -> int:
    for x in range(2, ell):
        if pow(x, (ell - 1) // 2, ell) == ell - 1:
            return x
    raise ValueError(f"no nonsquare mod {ell}")


def drl_s_representatives(ell: int, a: int) -> tuple[Mat, Mat]:
    """The two DRL-S classes with char poly (T-a)^2 (T+a)^2, multiplier a^2.

    '+' is the class of the representative with identity off-diagonal block;
    '-' carries the least-nonsquare twist.
    """
    a %= ell
    if a == 0 or ell == 2:
        raise ValueError("DRL-S needs odd ell and a != 0")
    x = least_nonsquare(ell)
    g1 = mat(((a, 0, 1, 0), (0, -a, 0, 1), (0, 0, a, 0), (0, 0, 0, -a)), ell)
    g2 = mat(((a, 0, 1, 0), (0, -a, 0, x), (0, 0, a, 0), (0, 0, 0, -a)), ell)
    return g1, g2


def rq2_representatives(ell: int, m: int) -> tuple[Mat, Mat]:
    """The two RQ-2 classes with char poly (T^2-m)^2, m a nonsquare.

    Representatives are found deterministically inside the block-triangular
    family ((A, B), (0, m (A^-T))) with A the companion matrix of T^2 - m and
    B^T D symmetric; '+' is the first cyclic member in lexicographic order,
    '-' the first member not conjugate to it.
    """
    m %= ell
    if ell == 2 or pow(m, (ell - 1) // 2, ell) != ell - 1:
        raise ValueError("RQ-2 needs odd ell and m a nonsquare")
    g_target = ((-m) % ell, 0, 1)  # T^2 - m
    rep_plus: Mat | None = None
    for b2, b3, b4 in itertools.product(range(ell), repeat=3):
        # blocks ((A, B), (0, D)) with A = companion(T^2-m), D = m A^-T = A^T;
        # B constrained so B^T D is symmetric (the similitude condition)
        cand = mat(((0, m, m * b4, b2),
                    (1, 0, b3, b4),
                    (0, 0, 0, 1),
                    (0, 0, m, 0)), ell)
        if _is_zero_at(g_target, cand, ell):  # not cyclic
            continue
        assert multiplier(cand, ell) == m
        if rep_plus is None:
            rep_plus = cand
            continue
        if not conjugate_in_gsp4(cand, rep_plus, ell):
            return rep_plus, cand
    raise RuntimeError(f"RQ-2 representative search failed at ell={ell}, m={m}")


# ---------------------------------------------------------------------------
# conjugacy and centralizers via the linear commutation system

def _intertwiner_basis(g1: Mat, g2: Mat, ell: int) -> list[list[int]]:
    """Basis of {Z : Z g1 = g2 Z} as 16-vectors (row-major)."""
    rows = []
    for i in range(4):
        for j in range(4):
            row = [0] * 16
            for k in range(4):
                for l in range(4):
                    coef = 0
                    if k == i:
                        coef += g1[l][j]
                    if l == j:
                        coef -= g2[i][k]
                    row[4 * k + l] = coef % ell
            rows.append(row)
    return nullspace_mod(rows, ell)


def _span_iter(basis: list[list[int]], ell: int):
    for coeffs in itertools.product(range(ell), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * 16
        for c, b in zip(coeffs, basis):
            if c:
                for i in range(16):
                    v[i] = (v[i] + c * b[i]) % ell
        yield tuple(tuple(v[4 * i + j] for j in range(4)) for i in range(4))


def conjugate_in_gsp4(g1: Mat, g2: Mat, ell: int) -> bool:
    """Whether some symplectic similitude Z satisfies Z^-1 g1 Z = g2."""
    basis = _intertwiner_basis(g2, g1, ell)  # Z g2 = g1 Z, i.e. Z conjugates g1 to g2
    if not basis:
        return False
    if ell ** len(basis) > _NULLSPACE_ENUM_LIMIT:
        raise ValueError("intertwiner space too large; elements are not cyclic")
    for z in _span_iter(basis, ell):
        if det_mod(z, ell) != 0 and multiplier(z, ell) is not None:
            return True
    return False


def centralizer_order_bruteforce(rows, enum: "GroupEnumeration | None" = None,
                                 ell: int | None = None) -> int:
    """#{c in GSp4(F_ell) : c g = g c}, by solving C g = g C and filtering.

    The commutant is enumerated when small; for high-dimensional commutants
    (non-regular elements such as the identity) the full enumeration is
    swept instead, which requires `enum`.
    """
    if ell is None:
        if enum is None:
            raise ValueError("need ell or enum")
        ell = enum.ell
    g = mat(rows, ell)
    basis = _intertwiner_basis(g, g, ell)
    if ell ** len(basis) <= _NULLSPACE_ENUM_LIMIT:
        count = 0
        for c in _span_iter(basis, ell):
            if det_mod(c, ell) != 0 and multiplier(c, ell) is not None:
                count += 1
        return count
    if enum is None:
        raise ValueError("commutant too large to enumerate; pass the group enumeration")
    total = 0
    target = pack_matrix(g, ell)
    for m in range(1, ell):
        total += int(kernels.count_commuting(enum.elements, ell,
                                             enum.fiber_rep_packed(m), target))
    return total


# ---------------------------------------------------------------------------
# enumeration of Sp4(F_ell)

def _transvection_directions() -> list[tuple[int, int, int, int]]:
    dirs = []
    for bits in range(1, 16):
        dirs.append(tuple((bits >> i) & 1 for i in range(4)))
    return dirs


def transvection(v, ell: int) -> Mat:
    """x -> x + <x, v> v, i.e. I - v (v^T J); always in Sp4."""
    j = standard_j(ell)
    jv_row = tuple(sum(v[k] * j[k][col] for k in range(4)) % ell for col in range(4))
    return mat(tuple(
        tuple((1 if i == c else 0) - v[i] * jv_row[c] for c in range(4))
        for i in range(4)), ell)


def sp4_generators(ell: int) -> list[Mat]:
    gens = []
    for v in _transvection_directions():
        t = transvection(v, ell)
        assert multiplier(t, ell) == 1
        gens.append(t)
    return gens


@dataclass
class GroupEnumeration:
    """Complete packed element list of Sp4(F_ell), sorted; doubles as a set."""

    ell: int
    elements: np.ndarray
    _hists: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def contains(self, key: int) -> bool:
        i = int(np.searchsorted(self.elements, np.uint64(key)))
        return i < self.elements.size and int(self.elements[i]) == key

    def fiber_rep(self, m: int) -> Mat:
        """diag(1, 1, m, m): multiplier-m coset representative."""
        m %= self.ell
        if m == 0:
            raise ValueError("multiplier must be a unit")
        return mat(((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, m, 0), (0, 0, 0, m)),
                   self.ell)

    def fiber_rep_packed(self, m: int) -> int:
        return pack_matrix(self.fiber_rep(m), self.ell)

    def fiber_histogram(self, m: int) -> np.ndarray:
        """(ell, ell) counts of charpoly T^4+c3 T^3+c2 T^2+m c3 T+m^2 in the fiber."""
        m %= self.ell
        if m not in self._hists:
            self._hists[m] = kernels.charpoly_histogram(
                self.elements, self.ell, self.fiber_rep_packed(m))
        return self._hists[m]


def _cache_path(ell: int, cache_dir) -> Path | None:
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
    if cache_dir is None:
        return None
    return Path(cache_dir) / f"sp4_l{ell}_v{CACHE_VERSION}.bin"


def enumerate_sp4(ell: int, cache_dir=None, allow_big: bool = False) -> GroupEnumeration:
    """Enumerate Sp4(F_ell) by BFS closure of symplectic transvections.

    ell in {2, 3, 5} is always allowed; ell = 7 (276.6M elements, ~2.2 GB)
    needs allow_big.  The result is cached when a cache directory is given
    via argument or the WEIL_MASS_CACHE environment variable.
    """
    if ell not in MANDATORY_ELLS:
        if ell == OPTIONAL_ELL and allow_big:
            pass
        elif ell == OPTIONAL_ELL:
            raise OracleBudgetError(
                "ell=7 enumeration needs allow_big (about 2.2 GB)")
        else:
            raise OracleBudgetError(f"enumeration unsupported for ell={ell}")
    path = _cache_path(ell, cache_dir)
    if path is not None and path.exists():
        elems = _load_cache(path, ell)
        if elems is not None:
            return GroupEnumeration(ell, elems)
    expected = sp4_order(ell)
    gens = np.array([pack_matrix(g, ell) for g in sp4_generators(ell)],
                    dtype=np.uint64)
    elems = kernels.bfs_closure(gens, ell, expected)
    if elems.size != expected:
        raise RuntimeError(
            f"transvection closure found {elems.size} elements, "
            f"expected {expected}")
    if path is not None:
        _save_cache(path, ell, elems)
    return GroupEnumeration(ell, elems)


def _save_cache(path: Path, ell: int, elems: np.ndarray) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<IIQ", CACHE_VERSION, ell, elems.size))
        fh.write(elems.astype("<u8").tobytes())
    tmp.replace(path)


def _load_cache(path: Path, ell: int) -> np.ndarray | None:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != CACHE_MAGIC:
            return None
        version, file_ell, count = struct.unpack("<IIQ", fh.read(16))
        if version != CACHE_VERSION or file_ell != ell or count != sp4_order(ell):
            return None
        data = np.frombuffer(fh.read(8 * count), dtype="<u8")
    return data.astype(np.uint64)


# ---------------------------------------------------------------------------
# oracle counts over multiplier fibers

def _weil_bin(w: WeilPolynomial, ell: int) -> tuple[int, int, int]:
    m = w.q % ell
    if m == 0:
        raise ValueError("q must be a unit mod ell")
    return m, (-w.a) % ell, w.b % ell


def count_charpoly_in_fiber(w: WeilPolynomial, ell: int,
                            enum: GroupEnumeration) -> int:
    """#{gamma with multiplier q : charpoly(gamma) = f mod ell}, brute force."""
    m, c3, c2 = _weil_bin(w, ell)
    return int(enum.fiber_histogram(m)[c3, c2])


def _pad5(coeffs: Poly) -> list[int]:
    return list(coeffs) + [0] * (5 - len(coeffs))


def count_cyclic_with_semisimplification(w: WeilPolynomial, ell: int,
                                         enum: GroupEnumeration) -> int:
    """#{gamma with multiplier q : gamma cyclic, charpoly = f mod ell}.

    Cyclic elements with fixed characteristic polynomial and multiplier all
    share one semisimplification class, so matching the semisimple part
    reduces to matching the characteristic polynomial.  Cyclicity is tested
    through the cofactors f/g_j (all must be nonzero at gamma).
    """
    m, c3, c2 = _weil_bin(w, ell)
    facs = factor_monic_mod_ell(w.coeffs(), ell)
    full = poly_mod(w.coeffs(), ell)
    checks = []
    for gj, _ in facs:
        checks.append(_pad5(_poly_div_exact(full, gj, ell)))
    return int(kernels.count_in_fiber(enum.elements, ell,
                                      enum.fiber_rep_packed(m), c3, c2,
                                      np.array(checks, dtype=np.int64), 1))


def count_semisimple_with_charpoly(g_coeffs, p: int, m: int,
                                   enum: GroupEnumeration) -> int:
    """#{gamma with multiplier m : charpoly = g^2, g(gamma) = 0} for quadratic g.

    g must be squarefree mod p (otherwise the count means ramification at p).
    """
    g = poly_mod(g_coeffs, p)
    if len(g) != 3 or g[2] != 1:
        raise ValueError("g must be a monic quadratic")
    c0, c1, _ = g
    disc = (c1 * c1 - 4 * c0) % p
    if disc == 0:
        raise PatternMismatchError("g has a repeated root mod p (ramified at p)")
    if m % p != c0 * c0 % p:
        raise ValueError("multiplier fiber must be g(0)^2")
    g2 = poly_mul(g, g, p)
    c3t, c2t = g2[3], g2[2]
    checks = np.array([_pad5(g)], dtype=np.int64)
    return int(kernels.count_in_fiber(enum.elements, p,
                                      enum.fiber_rep_packed(m), c3t, c2t,
                                      checks, 2))


def find_elements_in_fiber(enum: GroupEnumeration, m: int, c3: int, c2: int,
                           checks=None, mode: int = 0,
                           max_out: int = 1) -> list[Mat]:
    """First elements of the multiplier-m fiber in a charpoly bin (packed order)."""
    arr = np.array(checks if checks is not None else [],
                   dtype=np.int64).reshape(-1, 5)
    keys = kernels.find_in_fiber(enum.elements, enum.ell,
                                 enum.fiber_rep_packed(m), c3 % enum.ell,
                                 c2 % enum.ell, arr, mode, max_out)
    return [unpack_matrix(int(k), enum.ell) for k in keys]


def shape_representative(enum: GroupEnumeration, kind: ShapeKind,
                         sign: int | None = None) -> Mat | None:
    """A deterministic representative of the shape in GSp4(F_ell), or None.

    Scans multipliers and charpoly bins in lexicographic order; for the
    two-class shapes the pinned representatives are returned directly.
    """
    ell = enum.ell
    if kind in TWO_CLASS_KINDS:
        if ell == 2:
            return None
        if kind is ShapeKind.DRL_S:
            reps = drl_s_representatives(ell, 1)
        else:
            reps = rq2_representatives(ell, least_nonsquare(ell))
        return reps[0] if (sign is None or sign > 0) else reps[1]
    for m in range(1, ell):
        for c3 in range(ell):
            for c2 in range(ell):
                coeffs = (m * m, m * c3, c2, c3, 1)
                facs = factor_monic_mod_ell(coeffs, ell)
                try:
                    found = classify_factored(facs, m, ell)
                except PatternMismatchError:
                    continue
                if found is not kind:
                    continue
                full = poly_mod(coeffs, ell)
                checks = [_pad5(_poly_div_exact(full, gj, ell))
                          for gj, _ in facs]
                mode = 1
                if all(e == 1 for _, e in facs):
                    checks, mode = [], 0
                hits = find_elements_in_fiber(enum, m, c3, c2, checks, mode, 1)
                if hits:
                    return hits[0]
    return None
