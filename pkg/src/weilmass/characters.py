"""Dirichlet character group of the splitting field, recovered from f mod ell.

For a valid Weil polynomial the splitting field K is an abelian quartic CM
field with real quadratic subfield K+.  Its character group is pinned down
by the factorization patterns of f modulo test primes away from the
discriminant: the quadratic character of K+ is the Kronecker character of
the fundamental discriminant attached to disc(f+), and the two remaining
characters (a conjugate order-4 pair in the cyclic case, the Kronecker
characters of the two imaginary quadratic subfields in the biquadratic case)
are found by a finite conductor-candidate search validated against the
observed splitting data.  The conductor-discriminant product then gives
|disc K|, which is also the maximality certificate for the Frobenius order.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (divisors, factor_integer, fundamental_discriminant,
                    is_square, kronecker_symbol, primes_up_to)
from .errors import (AmbiguousCandidateError, NoCandidateError,
                     PatternMismatchError)
from .fppoly import factor_monic_mod_ell
from .gsp4 import ClassShape, ShapeKind, frobenius_shape
from .weil import GaloisType, WeilPolynomial, galois_type, invariants

_I_POWERS = (1, 1j, -1, -1j)

DEFAULT_BASE_BOUND = 1000


# ---------------------------------------------------------------------------
# unit group structure and characters

@functools.lru_cache(maxsize=None)
def _primitive_root(pk: int, p: int) -> int:
    """Primitive root mod p^k for odd p."""
    phi_p = p - 1
    prime_factors = list(factor_integer(phi_p))
    g = None
    for cand in range(2, p):
        if all(pow(cand, phi_p // r, p) != 1 for r in prime_factors):
            g = cand
            break
    assert g is not None
    if pk == p:
        return g
    # lift: g works mod p^k unless g^(p-1) = 1 mod p^2
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


@functools.lru_cache(maxsize=None)
def unit_group_generators(m: int) -> tuple[tuple[int, int], ...]:
    """Generators of (Z/m)^* as ((g, order), ...), CRT-glued across p^k | m."""
    if m == 1:
        return ()
    out = []
    fac = factor_integer(m)
    for p, k in fac.items():
        pk = p**k
        rest = m // pk
        def glue(gen: int) -> int:
            if rest == 1:
                return gen % m
            # x = gen mod p^k, x = 1 mod rest
            inv = pow(rest, -1, pk)
            return (1 + rest * ((gen - 1) * inv % pk)) % m
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                out.append((glue(3), 2))
            else:
                out.append((glue(pk - 1), 2))
                out.append((glue(5), 2 ** (k - 2)))
        else:
            out.append((glue(_primitive_root(pk, p)), (p - 1) * p ** (k - 1)))
    return tuple(out)


@dataclass(frozen=True)
class DirichletCharacter:
    """Primitive character with values in the 4th roots of unity.

    exps[a] is the exponent e with chi(a) = i^e for gcd(a, modulus) = 1,
    and -1 otherwise; the trivial character has modulus 1.
    """

    modulus: int
    exps: tuple[int, ...]
    order: int

    def exponent(self, n: int) -> int | None:
        if self.modulus == 1:
            return 0
        e = self.exps[n % self.modulus]
        return None if e < 0 else e

    def value(self, n: int) -> complex:
        e = self.exponent(n)
        return 0 if e is None else _I_POWERS[e]

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.modulus,
            tuple(e if e < 0 else (-e) % 4 for e in self.exps),
            self.order)

    @property
    def is_odd(self) -> bool:
        return self.value(self.modulus - 1) == -1 if self.modulus > 1 else False

    def gen_exponents(self) -> tuple[tuple[int, int], ...]:
        """((generator, exponent of i), ...) on the unit group generators."""
        return tuple((g, self.exps[g % self.modulus])
                     for g, _ in unit_group_generators(self.modulus))


TRIVIAL_CHARACTER = DirichletCharacter(1, (0,), 1)


def _build_table(m: int, gen_exps: dict[int, int]) -> tuple[int, ...]:
    exps = [-1] * m
    gens = unit_group_generators(m)
    ranges = [range(order) for _, order in gens]
    for combo in itertools.product(*ranges):
        a = 1
        e = 0
        for (g, _), k in zip(gens, combo):
            a = a * pow(g, k, m) % m
            e += k * gen_exps[g]
        exps[a] = e % 4
    if m == 1:
        exps = [0]
    elif m == 2:
        exps[1] = 0
    return tuple(exps)


def kronecker_character(d: int) -> DirichletCharacter:
    """The quadratic character (d/.) of a fundamental discriminant d."""
    if d != 1 and fundamental_discriminant(d) != d:
        raise ValueError(f"{d} is not a fundamental discriminant")
    m = abs(d)
    if m == 1:
        return TRIVIAL_CHARACTER
    exps = [-1] * m
    for a in range(m):
        v = kronecker_symbol(d, a) if a else 0
        if v:
            exps[a] = 0 if v == 1 else 2
    return DirichletCharacter(m, tuple(exps), 2)


def _is_primitive(chi: DirichletCharacter) -> bool:
    m = chi.modulus
    if m == 1:
        return True
    for p in factor_integer(m):
        sub = m // p
        # chi induced from mod m/p iff trivial on the kernel {a = 1 mod m/p}
        nontrivial = False
        for a in range(1 + sub, m + 1, sub):
            a %= m
            if a and chi.exps[a] not in (-1, 0):
                nontrivial = True
                break
        if not nontrivial:
            return False
    return True


def _characters_order4_with_square(m: int, chi_plus: DirichletCharacter
                                   ) -> list[DirichletCharacter]:
    """Primitive order-4 characters mod m whose square is chi_plus (primitive)."""
    gens = unit_group_generators(m)
    if not gens:
        return []
    choices = []
    for _, order in gens:
        valid = [c for c in range(4) if c * order % 4 == 0]
        choices.append(valid)
    out = []
    lcm_m = m * chi_plus.modulus  # test range for primitive-character equality
    for combo in itertools.product(*choices):
        gen_exps = {g: c for (g, _), c in zip(gens, combo)}
        exps = _build_table(m, gen_exps)
        if not any(e in (1, 3) for e in exps):
            continue  # order divides 2
        chi = DirichletCharacter(m, exps, 4)
        if not _is_primitive(chi):
            continue
        ok = True
        for a in range(1, lcm_m + 1):
            if chi.exponent(a) is None or chi_plus.exponent(a) is None:
                continue
            if _I_POWERS[2 * chi.exps[a % m] % 4] != chi_plus.value(a):
                ok = False
                break
        if ok:
            out.append(chi)
    return out


# ---------------------------------------------------------------------------
# splitting data

@dataclass(frozen=True)
class SplittingData:
    """Per-prime factorization data: f mod ell = prod of r irreducibles of
    degree f_deg, each with multiplicity e; |D(ell)| = e*f_deg, |I(ell)| = e."""

    ell: int
    e: int
    f_deg: int
    r: int
    shape: ClassShape

    @property
    def decomposition_order(self) -> int:
        return self.e * self.f_deg

    @property
    def inertia_order(self) -> int:
        return self.e


_CYCLIC_ROWS = {
    (1, 1, 4): {ShapeKind.SPLIT},
    (1, 2, 2): {ShapeKind.DQ_S},
    (2, 1, 2): {ShapeKind.DRL_S},
    (1, 4, 1): {ShapeKind.QUARTIC},
    (2, 2, 1): {ShapeKind.RQ_2},
    (4, 1, 1): {ShapeKind.QRL},
}

_BIQUADRATIC_ROWS = {
    (1, 1, 4): {ShapeKind.SPLIT},
    (1, 2, 2): {ShapeKind.DQ_I, ShapeKind.DQ_S},
    (2, 1, 2): {ShapeKind.DRL_I, ShapeKind.DRL_S},
    (2, 2, 1): {ShapeKind.RQ_1, ShapeKind.RQ_2},
}


def splitting_invariants(w: WeilPolynomial, ell: int) -> SplittingData:
    """(e, f_deg, r) and the Frobenius shape at ell, with table consistency.

    For odd ell the triple and shape must sit in the row table of the Galois
    type (tame inertia is cyclic); at ell = 2 wild ramification can leave the
    tables, so only uniformity is enforced there.
    """
    if ell == w.p:
        raise ValueError("ell must differ from p")
    facs = factor_monic_mod_ell(w.coeffs(), ell)
    degs = {len(g) - 1 for g, _ in facs}
    mults = {e for _, e in facs}
    if len(degs) != 1 or len(mults) != 1:
        raise PatternMismatchError(
            f"non-uniform factorization of f mod {ell}: {facs}")
    f_deg, e, r = degs.pop(), mults.pop(), len(facs)
    shape = frobenius_shape(w, ell)
    if ell != 2:
        gt = galois_type(w)
        rows = _CYCLIC_ROWS if gt is GaloisType.CYCLIC4 else _BIQUADRATIC_ROWS
        allowed = rows.get((e, f_deg, r))
        if allowed is None or shape.kind not in allowed:
            raise PatternMismatchError(
                f"(e,f,r)=({e},{f_deg},{r}) with shape {shape} is not a "
                f"{gt.value} splitting pattern")
    return SplittingData(ell, e, f_deg, r, shape)


# ---------------------------------------------------------------------------
# identification

@dataclass(frozen=True)
class CharacterGroup:
    """The four characters of Gal(K/Q) with discriminant bookkeeping.

    delta_K is |disc K|; the CM quartic discriminant is positive, so the
    absolute value is the discriminant itself.  s_k holds the two characters
    that do not factor through K+ (both odd).
    """

    galois_type: GaloisType
    chars: tuple[DirichletCharacter, ...]
    s_k: tuple[DirichletCharacter, DirichletCharacter]
    delta_K: int
    delta_K_plus: int
    imag_discs: tuple[int, int] | None = None
    chi_conductor: int | None = None

    def to_json(self) -> str:
        return json.dumps({
            "galois_type": self.galois_type.value,
            "delta_K": self.delta_K,
            "delta_K_plus": self.delta_K_plus,
            "characters": [
                {"conductor": c.modulus, "order": c.order,
                 "gen_exponents": list(map(list, c.gen_exponents()))}
                for c in self.chars],
        }, sort_keys=True)


def _test_primes(w: WeilPolynomial, bound: int, delta_order: int) -> list[int]:
    bad = 2 * w.p * abs(delta_order)
    return [ell for ell in primes_up_to(bound) if ell > 2 and bad % ell != 0]


def _filter_by_patterns(cands: list, tests: list[int], confirm_bound: int,
                        evaluate, matches) -> list:
    """Prune candidates against splitting data, prime by prime.

    Every candidate is tested at each prime while more than one remains;
    a unique survivor is still confirmed at all primes up to confirm_bound.
    Doubling the overall bound cannot change a successful outcome: the
    pruning sequence is identical and the true candidate never fails.
    """
    for ell in tests:
        if len(cands) <= 1 and ell > confirm_bound:
            break
        pat = evaluate(ell)
        cands = [c for c in cands if matches(c, ell, pat)]
        if not cands:
            break
    return cands


def _pattern_at(w: WeilPolynomial, ell: int, q: int):
    """('split' | 'inert2' | 'quartic' | 'dq_multiset') for an unramified test prime."""
    facs = factor_monic_mod_ell(w.coeffs(), ell)
    degs = sorted(len(g) - 1 for g, _ in facs)
    if any(e != 1 for _, e in facs) or degs not in ([1, 1, 1, 1], [2, 2], [4]):
        raise PatternMismatchError(
            f"unexpected pattern for unramified prime {ell}: {facs}")
    if degs == [1, 1, 1, 1]:
        return "split"
    if degs == [4]:
        return "quartic"
    g1, g2 = (g for g, _ in facs)
    qm = q % ell
    if g1[0] == qm and g2[0] == qm:
        return "inert2"          # both constants q: conjugation in D(ell)
    if g1[0] * g2[0] % ell != qm * qm % ell:
        raise PatternMismatchError(
            f"quadratic constants at {ell} incompatible with q")
    return "dq_mixed"            # biquadratic DQ-I row


@functools.lru_cache(maxsize=4096)
def identify_characters(w: WeilPolynomial, prime_bound: int | None = None
                        ) -> CharacterGroup:
    """Recover the character group of K from splitting data at good primes.

    Robust to failure of maximality: test primes avoid disc(f), where the
    splitting of ell is read off f mod ell unconditionally.  Raises
    NoCandidateError / AmbiguousCandidateError when the observed data pins
    down no candidate or several (a hypothesis violation or a too-small
    test-prime bound, respectively).
    """
    gt = galois_type(w)
    if gt is GaloisType.NOT_ABELIAN:
        raise NoCandidateError("splitting field is not abelian")
    inv = invariants(w)
    if inv.delta_order == 0:
        raise NoCandidateError("degenerate discriminant")
    dkplus = fundamental_discriminant(inv.delta_fplus)
    if dkplus < 0:
        raise NoCandidateError("trace field is not real quadratic")
    chi_plus = kronecker_character(dkplus)
    if gt is GaloisType.CYCLIC4:
        return _identify_cyclic(w, inv.delta_order, dkplus, chi_plus, prime_bound)
    return _identify_biquadratic(w, inv.delta_order, dkplus, chi_plus, prime_bound)


def _identify_cyclic(w, delta_order, dkplus, chi_plus, prime_bound):
    dord = abs(delta_order)
    if dord % dkplus:
        raise NoCandidateError("disc(K+) does not divide the order discriminant")
    m2 = dord // dkplus
    if not is_square(m2):
        raise NoCandidateError(
            "order discriminant is not disc(K+) times a square")
    mbig = math.isqrt(m2)  # = index * conductor(chi)
    bound = prime_bound or max(DEFAULT_BASE_BOUND, 30 * mbig)
    tests = _test_primes(w, bound, delta_order)
    cands: list[DirichletCharacter] = []
    for m in divisors(mbig):
        if m >= 3:
            cands.extend(_characters_order4_with_square(m, chi_plus))

    def evaluate(ell: int) -> str:
        pat = _pattern_at(w, ell, w.q)
        if pat == "dq_mixed":
            raise NoCandidateError(
                "mixed quadratic constants contradict a cyclic field")
        return pat

    def matches(chi: DirichletCharacter, ell: int, pat: str) -> bool:
        e = chi.exponent(ell)
        if pat == "split":
            return e == 0
        if pat == "inert2":
            return e == 2
        return e in (1, 3)  # quartic

    survivors = _filter_by_patterns(cands, tests, min(bound, DEFAULT_BASE_BOUND),
                                    evaluate, matches)
    if not survivors:
        raise NoCandidateError("no order-4 character matches the splitting data")
    groups: list[tuple[DirichletCharacter, DirichletCharacter]] = []
    for chi in survivors:
        conj = chi.conjugate()
        if not any(chi == a or chi == b for a, b in groups):
            groups.append((chi, conj))
    if len(groups) > 1:
        raise AmbiguousCandidateError(
            f"{len(groups)} conjugate pairs match; raise the test-prime bound")
    chi, chib = groups[0]
    fchi = chi.modulus
    return CharacterGroup(
        galois_type=GaloisType.CYCLIC4,
        chars=(TRIVIAL_CHARACTER, chi_plus, chi, chib),
        s_k=(chi, chib),
        delta_K=dkplus * fchi * fchi,
        delta_K_plus=dkplus,
        chi_conductor=fchi,
    )


def _fundamental_candidates(delta_order: int) -> list[int]:
    """Negative fundamental discriminants supported on primes of delta_order."""
    fac = factor_integer(abs(delta_order))
    odd_primes = [p for p in fac if p != 2]
    has2 = 2 in fac
    cands = set()
    for k in range(len(odd_primes) + 1):
        for combo in itertools.combinations(odd_primes, k):
            s = 1
            for p in combo:
                s *= p
            if (-s) % 4 == 1:
                cands.add(-s)
            if has2:
                if s % 4 == 1:
                    cands.add(-4 * s)
                cands.add(-8 * s)
    cands.discard(-1)
    return sorted(cands, reverse=True)  # closest to zero first


def _identify_biquadratic(w, delta_order, dkplus, chi_plus, prime_bound):
    dord = abs(delta_order)
    cands = _fundamental_candidates(delta_order)
    biggest = max((abs(d) for d in cands), default=DEFAULT_BASE_BOUND)
    bound = prime_bound or max(DEFAULT_BASE_BOUND, 30 * biggest)
    tests = _test_primes(w, bound, delta_order)
    pairs: list[tuple[int, int]] = []
    for i, d1 in enumerate(cands):
        for d2 in cands[i + 1:]:
            prod = d1 * d2
            if prod % dkplus or not is_square(prod // dkplus):
                continue
            dk = dkplus * abs(d1) * abs(d2)
            if dord % dk or not is_square(dord // dk):
                continue
            pairs.append((d1, d2))

    def evaluate(ell: int) -> tuple[int, int]:
        pat = _pattern_at(w, ell, w.q)
        if pat == "quartic":
            raise NoCandidateError(
                "an inert prime contradicts a biquadratic field")
        return {"split": (1, 1), "inert2": (-1, -1), "dq_mixed": (-1, 1)}[pat]

    def matches(pair: tuple[int, int], ell: int, want: tuple[int, int]) -> bool:
        k1, k2 = kronecker_symbol(pair[0], ell), kronecker_symbol(pair[1], ell)
        return tuple(sorted((k1, k2))) == want

    pairs = _filter_by_patterns(pairs, tests, min(bound, DEFAULT_BASE_BOUND),
                                evaluate, matches)
    if not pairs:
        raise NoCandidateError(
            "no pair of imaginary quadratic discriminants matches")
    if len(pairs) > 1:
        raise AmbiguousCandidateError(
            f"{len(pairs)} discriminant pairs match; raise the test-prime bound")
    d1, d2 = sorted(pairs[0], reverse=True)  # |d1| <= |d2|
    phi1, phi2 = kronecker_character(d1), kronecker_character(d2)
    return CharacterGroup(
        galois_type=GaloisType.BIQUADRATIC,
        chars=(TRIVIAL_CHARACTER, chi_plus, phi1, phi2),
        s_k=(phi1, phi2),
        delta_K=dkplus * abs(d1) * abs(d2),
        delta_K_plus=dkplus,
        imag_discs=(d1, d2),
    )


def disc_K(w: WeilPolynomial, prime_bound: int | None = None) -> int:
    """|disc K| by conductor-discriminant over the identified characters."""
    return identify_characters(w, prime_bound).delta_K


# ---------------------------------------------------------------------------
# local factor on the field side

def chi_at_ell(chi: DirichletCharacter, ell: int) -> complex:
    """chi(ell), zero when ell ramifies in the field cut out by chi."""
    return chi.value(ell)


def nu_ell_K(cg: CharacterGroup, ell: int) -> Fraction:
    """prod over chi in S(K) of 1/(1 - chi(ell)/ell), an exact rational."""
    e1 = cg.s_k[0].exponent(ell)
    e2 = cg.s_k[1].exponent(ell)
    imag = {e for e in (e1, e2) if e in (1, 3)}
    if imag:
        if {e1, e2} != {1, 3}:
            raise ValueError("imaginary character values must pair conjugately")
        return Fraction(ell * ell, ell * ell + 1)
    out = Fraction(1)
    for e in (e1, e2):
        if e is None:
            continue
        out *= Fraction(ell, ell - 1) if e == 0 else Fraction(ell, ell + 1)
    return out
