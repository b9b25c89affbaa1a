"""Local factors of a Weil polynomial and their conditionally convergent product.

For each prime ell != p the factor nu_ell is the relative frequency of
cyclic elements with the right semisimplification among symplectic
similitudes with multiplier q; it is an exact rational determined by the
Frobenius shape.  At p an etale/toric count replaces it, and at infinity a
Sato-Tate density term built from the discriminants.  Products are taken
over primes in increasing order (the conditional-convergence convention);
their limit is the isogeny-class mass verified in the classnumber module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
import numpy as np

from .arith import primes_up_to
from .characters import CharacterGroup, identify_characters, nu_ell_K
from .errors import PatternMismatchError
from .gsp4 import ClassShape, ShapeKind, centralizer_order_formula, frobenius_shape
from .weil import WeilPolynomial, invariants

DEFAULT_DPS = 50


def shape_nu(kind: ShapeKind, ell: int) -> Fraction:
    """nu_ell for a shape: ell^2(ell-1)/#Z for single classes, 1/2+1/2 else."""
    if kind in (ShapeKind.DRL_S, ShapeKind.RQ_2):
        return Fraction(1)
    return Fraction(ell * ell * (ell - 1), centralizer_order_formula(kind, ell))


@dataclass(frozen=True)
class LocalFactor:
    place: int | str            # prime, or "infinity"
    value: Fraction
    shape: ClassShape | None
    path: str                   # "shape" | "character" | "oracle"
    alt_value: Fraction | None = None   # shape-path value at ell=2, if it differs
    note: str | None = None


def nu_ell(w: WeilPolynomial, ell: int,
           cg: CharacterGroup | None = None) -> LocalFactor:
    """The local factor at a prime ell != p.

    Odd ell: from the Frobenius shape (Split l^2/(l-1)^2, DQ-S l^2/(l+1)^2,
    DQ-I l^2/(l^2-1), Quartic l^2/(l^2+1), QRL 1, DRL-S 1, DRL-I l/(l-1),
    RQ-1 l/(l+1), RQ-2 1).  At ell = 2 the square-class bookkeeping behind
    the shape tables degenerates, so the character-side value is used; any
    disagreement with the literal shape value is reported, not hidden.
    """
    if ell == w.p:
        raise ValueError("use nu_p at the residue characteristic")
    if ell == 2:
        if cg is None:
            cg = identify_characters(w)
        char_val = nu_ell_K(cg, 2)
        shape = None
        alt = None
        note = None
        try:
            shape = frobenius_shape(w, 2)
            shape_val = shape_nu(shape.kind, 2)
            if shape_val != char_val:
                alt = shape_val
                note = "shape-path value differs at ell=2; character path is authoritative"
        except PatternMismatchError as exc:
            note = f"shape classification unavailable at ell=2: {exc}"
        return LocalFactor(2, char_val, shape, "character", alt, note)
    shape = frobenius_shape(w, ell)
    return LocalFactor(ell, shape_nu(shape.kind, ell), shape, "shape")


def nu_p(w: WeilPolynomial) -> LocalFactor:
    """The local factor at p, from the etale quadratic g = T^2 - aT + b mod p."""
    p = w.p
    disc = (w.a * w.a - 4 * w.b) % p
    if disc == 0:
        raise PatternMismatchError(
            "T^2 - aT + b has a repeated root mod p (p ramifies)")
    if p == 2:
        splits = False  # disc != 0 mod 2 means a odd, so T^2+T+1: irreducible
    else:
        splits = pow(disc, (p - 1) // 2, p) == 1
    if splits:
        return LocalFactor(p, Fraction(p * p, (p - 1) ** 2), None, "shape",
                           note="etale quadratic splits")
    return LocalFactor(p, Fraction(p * p, p * p - 1), None, "shape",
                       note="etale quadratic inert")


@dataclass(frozen=True)
class InfinityFactor:
    value: mpmath.mpf
    conductor_form: mpmath.mpf      # sqrt|disc f / disc f+| / (4 pi^2 q)
    field_form: mpmath.mpf | None   # sqrt|disc K / disc K+| / (4 pi^2)
    agreement: bool | None


def nu_infinity(w: WeilPolynomial, cg: CharacterGroup | None = None,
                dps: int = DEFAULT_DPS) -> InfinityFactor:
    """Archimedean factor, computed through the polynomial discriminants and
    cross-checked through the field discriminants when a character group is
    available (the two agree exactly under maximality)."""
    inv = invariants(w)
    with mpmath.workdps(dps):
        ratio = abs(inv.delta_f) // abs(inv.delta_fplus)
        assert abs(inv.delta_f) % abs(inv.delta_fplus) == 0
        cform = mpmath.sqrt(ratio) / (inv.conductor * 4 * mpmath.pi**2)
        fform = None
        agree = None
        if cg is not None:
            fform = mpmath.sqrt(Fraction(cg.delta_K, cg.delta_K_plus)) / (4 * mpmath.pi**2)
            agree = bool(abs(cform - fform) <= mpmath.mpf(10) ** (-(dps - 10)) * cform)
        return InfinityFactor(cform, cform, fform, agree)


@dataclass
class ProductAccumulator:
    """Partial products P(X) = nu_inf * nu_p * prod_{ell < X} nu_ell over
    increasing primes, recorded at a ladder of cutoffs."""

    w: WeilPolynomial
    cutoffs: tuple[int, ...]
    entries: list[tuple[int, mpmath.mpf]] = field(default_factory=list)
    nu_inf: mpmath.mpf | None = None


def partial_products(w: WeilPolynomial, cutoffs: Sequence[int],
                     cg: CharacterGroup | None = None,
                     dps: int = DEFAULT_DPS,
                     factor_hook: Callable[[int, Fraction], None] | None = None
                     ) -> ProductAccumulator:
    """Evaluate the cutoff ladder; primes consumed in increasing order, with
    the p-adic factor standing in for the excluded ell = p."""
    cuts = sorted(int(x) for x in cutoffs)
    if not cuts:
        raise ValueError("need at least one cutoff")
    if cg is None:
        cg = identify_characters(w)
    acc = ProductAccumulator(w, tuple(cuts))
    with mpmath.workdps(dps):
        inf = nu_infinity(w, cg, dps)
        acc.nu_inf = inf.value
        prod = inf.value
        primes = primes_up_to(cuts[-1] - 1)
        ci = 0
        for ell in primes:
            while ci < len(cuts) and ell >= cuts[ci]:
                acc.entries.append((cuts[ci], prod))
                ci += 1
            f = nu_p(w).value if ell == w.p else nu_ell(w, ell, cg).value
            if factor_hook is not None:
                factor_hook(ell, f)
            prod = prod * f.numerator / f.denominator
        while ci < len(cuts):
            acc.entries.append((cuts[ci], prod))
            ci += 1
    return acc


@dataclass(frozen=True)
class ThreePathCheck:
    """nu_ell computed three ways; all must agree exactly."""

    ell: int
    shape_value: Fraction
    character_value: Fraction
    oracle_value: Fraction          # cyclic count * ell^2 / |Sp4|
    raw_count_value: Fraction       # all-elements count; equals the rest iff ell !| disc f
    ramified: bool

    @property
    def agree(self) -> bool:
        ok = self.shape_value == self.character_value == self.oracle_value
        if not self.ramified:
            ok = ok and self.raw_count_value == self.oracle_value
        return ok


def nu_ell_three_paths(w: WeilPolynomial, ell: int, enum,
                       cg: CharacterGroup | None = None) -> ThreePathCheck:
    """Shape-path, character-path, and brute-force nu_ell at an enumerable ell."""
    from .gsp4 import (count_charpoly_in_fiber,
                       count_cyclic_with_semisimplification, sp4_order)

    if cg is None:
        cg = identify_characters(w)
    shape_val = nu_ell(w, ell, cg).value
    char_val = nu_ell_K(cg, ell)
    order = sp4_order(ell)
    cyc = count_cyclic_with_semisimplification(w, ell, enum)
    raw = count_charpoly_in_fiber(w, ell, enum)
    return ThreePathCheck(
        ell=ell,
        shape_value=shape_val,
        character_value=char_val,
        oracle_value=Fraction(cyc * ell * ell, order),
        raw_count_value=Fraction(raw * ell * ell, order),
        ramified=invariants(w).delta_f % ell == 0,
    )


# ---------------------------------------------------------------------------
# Sato-Tate densities

def sato_tate_angle_density(t1: float, t2: float) -> float:
    """Pushforward of Haar measure to angle pairs 0 <= t1 <= t2 <= pi:
    (16/pi^2) (cos t2 - cos t1)^2 sin^2 t1 sin^2 t2."""
    if not (0.0 <= t1 <= t2 <= np.pi):
        return 0.0
    c = np.cos(t2) - np.cos(t1)
    return float(16.0 / np.pi**2 * c * c * np.sin(t1) ** 2 * np.sin(t2) ** 2)


def sato_tate_weil_density(a: float, b: float, q: int) -> float:
    """Induced density on coefficient pairs:
    sqrt((a^2-4b+8q)(b^2+4bq+4q^2-4a^2 q)) / (4 q^3 pi^2), zero outside."""
    d1 = a * a - 4 * b + 8 * q
    d2 = b * b + 4 * b * q + 4 * q * q - 4 * a * a * q
    if d1 < 0 or d2 < 0:
        return 0.0
    return float(np.sqrt(d1 * d2) / (4 * q**3 * np.pi**2))


def angle_density_integral(n: int = 400) -> float:
    """Gauss-Legendre quadrature of the angle density over the wedge."""
    x, wts = np.polynomial.legendre.leggauss(n)
    # map nodes to t2 in (0, pi), then t1 in (0, t2)
    t2 = (x + 1) * (np.pi / 2)
    w2 = wts * (np.pi / 2)
    total = 0.0
    for t2i, w2i in zip(t2, w2):
        t1 = (x + 1) * (t2i / 2)
        w1 = wts * (t2i / 2)
        c = np.cos(t2i) - np.cos(t1)
        vals = 16.0 / np.pi**2 * c * c * np.sin(t1) ** 2 * np.sin(t2i) ** 2
        total += w2i * float(np.dot(w1, vals))
    return total


# peak of the angle density is ~0.9607 (attained on the line t2 = pi - t1)
_ANGLE_DENSITY_BOUND = 1.1


def sample_angles(n: int, rng: np.random.Generator) -> np.ndarray:
    """n samples from the angle density by vectorized rejection sampling.

    Proposals are uniform on the wedge (sorted uniform pairs on the square);
    the acceptance rate is 2 / (pi^2 * bound), about 18%.
    """
    out = np.empty((0, 2))
    accept_rate = 2.0 / (np.pi**2 * _ANGLE_DENSITY_BOUND)
    while out.shape[0] < n:
        m = int((n - out.shape[0]) / accept_rate * 1.05) + 1024
        m = min(m, 20_000_000)
        t1 = rng.uniform(0.0, np.pi, m)
        t2 = rng.uniform(0.0, np.pi, m)
        lo = np.minimum(t1, t2)
        hi = np.maximum(t1, t2)
        c = np.cos(hi) - np.cos(lo)
        dens = 16.0 / np.pi**2 * c * c * np.sin(lo) ** 2 * np.sin(hi) ** 2
        u = rng.uniform(0.0, _ANGLE_DENSITY_BOUND, m)
        keep = u < dens
        out = np.concatenate([out, np.column_stack([lo[keep], hi[keep]])])
    return out[:n]


def weil_coeffs_from_angles(angles: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Map angle pairs to (a, b): a = 2 sqrt(q)(cos t1 + cos t2),
    b = 2q + 4q cos t1 cos t2."""
    c1 = np.cos(angles[:, 0])
    c2 = np.cos(angles[:, 1])
    a = 2.0 * np.sqrt(q) * (c1 + c2)
    b = 2.0 * q + 4.0 * q * c1 * c2
    return a, b


def weil_region_box(q: int) -> tuple[float, float, float, float]:
    """Bounding box (a_min, a_max, b_min, b_max) of the coefficient region."""
    r = 4.0 * np.sqrt(q)
    return -r, r, -2.0 * q, 6.0 * q


def weil_density_cell_probabilities(q: int, nx: int = 20, ny: int = 20,
                                    subdiv: int = 6, order: int = 10,
                                    boundary_subdiv: int = 18) -> np.ndarray:
    """Integral of the coefficient density over an nx x ny grid on the box.

    Composite Gauss-Legendre per cell; cells crossing the region boundary
    (where the sqrt factor kinks) get a finer subdivision.
    """
    a0, a1, b0, b1 = weil_region_box(q)
    aedges = np.linspace(a0, a1, nx + 1)
    bedges = np.linspace(b0, b1, ny + 1)
    nodes, wts = np.polynomial.legendre.leggauss(order)

    def cell_integral(alo, ahi, blo, bhi, sub):
        # tensor GL on sub x sub subcells
        asub = np.linspace(alo, ahi, sub + 1)
        bsub = np.linspace(blo, bhi, sub + 1)
        total = 0.0
        for i in range(sub):
            am, ar = (asub[i] + asub[i + 1]) / 2, (asub[i + 1] - asub[i]) / 2
            av = am + ar * nodes
            for j in range(sub):
                bm, br = (bsub[j] + bsub[j + 1]) / 2, (bsub[j + 1] - bsub[j]) / 2
                bv = bm + br * nodes
                A, B = np.meshgrid(av, bv, indexing="ij")
                d1 = A * A - 4 * B + 8 * q
                d2 = B * B + 4 * B * q + 4 * q * q - 4 * A * A * q
                dens = np.sqrt(np.maximum(d1 * d2, 0.0) * (d1 > 0) * (d2 > 0))
                dens /= 4 * q**3 * np.pi**2
                total += ar * br * float(wts @ dens @ wts)
        return total

    out = np.zeros((nx, ny))
    for i in range(nx):
        for j in range(ny):
            alo, ahi = aedges[i], aedges[i + 1]
            blo, bhi = bedges[j], bedges[j + 1]
            # corner test: region indicator changes across the cell -> boundary
            corners = [(alo, blo), (alo, bhi), (ahi, blo), (ahi, bhi),
                       ((alo + ahi) / 2, (blo + bhi) / 2)]
            inside = [sato_tate_weil_density(ca, cb, q) > 0 for ca, cb in corners]
            sub = subdiv if all(inside) or not any(inside) else boundary_subdiv
            out[i, j] = cell_integral(alo, ahi, blo, bhi, sub)
    return out
