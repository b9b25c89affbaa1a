"""Quartic q-Weil polynomials: hypotheses, discriminants, Galois type, corpora.

A pair (a, b) together with q = p^e encodes

    f(T) = T^4 - a*T^3 + b*T^2 - a*q*T + q^2,

whose complex roots all lie on |z| = sqrt(q) exactly when the real quadratic
resolvent f+(T) = T^2 - a*T + (b - 2q) has both roots in [-2 sqrt q, 2 sqrt q].
The library accepts polynomials that are ordinary (b coprime to p),
irreducible with abelian quartic splitting field unramified at p, and whose
ring generated by a root and its conjugate is the full ring of integers.
Principal polarizability is never tested; it is recorded as a user assertion.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable

from .arith import is_prime, is_square, prime_power_decomposition
from .errors import ReducibleError

MAX_CORPUS_P = 97


class GaloisType(enum.Enum):
    CYCLIC4 = "cyclic4"
    BIQUADRATIC = "biquadratic"
    NOT_ABELIAN = "not_abelian"


@dataclass(frozen=True)
class WeilPolynomial:
    """f(T) = T^4 - a T^3 + b T^2 - a q T + q^2 over F_q, q = p^e."""

    p: int
    e: int
    a: int
    b: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.e < 1:
            raise ValueError(f"e={self.e} must be >= 1")

    @property
    def q(self) -> int:
        return self.p**self.e

    def coeffs(self) -> tuple[int, int, int, int, int]:
        """Ascending coefficients (c0, c1, c2, c3, c4)."""
        q = self.q
        return (q * q, -self.a * q, self.b, -self.a, 1)

    def fplus_coeffs(self) -> tuple[int, int, int]:
        """Ascending coefficients of the trace quadratic T^2 - a T + (b - 2q)."""
        return (self.b - 2 * self.q, -self.a, 1)

    def in_weil_region(self) -> bool:
        """All complex roots on |z| = sqrt(q), by exact integer inequalities."""
        a, b, q = self.a, self.b, self.q
        if a * a > 16 * q or b + 2 * q < 0:
            return False
        # roots of f+ real and within [-2 sqrt q, 2 sqrt q]
        return a * a - 4 * b + 8 * q >= 0 and (b + 2 * q) ** 2 >= 4 * a * a * q

    def __str__(self) -> str:
        q = self.q
        return (f"T^4 + {-self.a}*T^3 + {self.b}*T^2 + {-self.a * q}*T + {q * q}"
                .replace("+ -", "- "))


@dataclass(frozen=True)
class WeilInvariants:
    """Exact discriminant data attached to a Weil polynomial.

    delta_f = q^2 * delta_order always; the index of Z[pi] in Z[pi, pi-bar]
    is q, and under maximality delta_order is the field discriminant.
    """

    fplus: tuple[int, int, int]
    delta_fplus: int          # disc of the trace quadratic: a^2 - 4b + 8q
    conj_diff_norm: int       # b^2 + 4bq + 4q^2 - 4a^2 q
    delta_order: int          # delta_fplus^2 * conj_diff_norm
    delta_f: int              # q^2 * delta_order
    conductor: int            # q


def invariants(w: WeilPolynomial) -> WeilInvariants:
    a, b, q = w.a, w.b, w.q
    dplus = a * a - 4 * b + 8 * q
    norm = b * b + 4 * b * q + 4 * q * q - 4 * a * a * q
    dorder = dplus * dplus * norm
    return WeilInvariants(
        fplus=w.fplus_coeffs(),
        delta_fplus=dplus,
        conj_diff_norm=norm,
        delta_order=dorder,
        delta_f=q * q * dorder,
        conductor=q,
    )


def quartic_disc(c0: int, c1: int, c2: int, c3: int) -> int:
    """Discriminant of T^4 + c3 T^3 + c2 T^2 + c1 T + c0 (independent check path)."""
    b, c, d, e = c3, c2, c1, c0
    return (256 * e**3 - 192 * b * d * e**2 - 128 * c**2 * e**2
            + 144 * c * d**2 * e - 27 * d**4 + 144 * b**2 * c * e**2
            - 6 * b**2 * d**2 * e - 80 * b * c**2 * d * e + 18 * b * c * d**3
            + 16 * c**4 * e - 4 * c**3 * d**2 - 27 * b**4 * e**2
            + 18 * b**3 * c * d * e - 4 * b**3 * d**3 - 4 * b**2 * c**3 * e
            + b**2 * c**2 * d**2)


def _int_divisors_signed(n: int) -> Iterable[int]:
    n = abs(n)
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            yield from (d, -d, n // d, -(n // d))


def is_irreducible(w: WeilPolynomial) -> bool:
    """Irreducibility over Q by exhausting linear and quadratic integer factors.

    Rational roots divide q^2; a monic quadratic factor T^2 + u T + v needs
    v * v' = q^2 and integer u, u' solving the coefficient matching, so the
    search space is finite.
    """
    c0, c1, c2, c3, _ = w.coeffs()

    def f(x: int) -> int:
        return x**4 + c3 * x**3 + c2 * x**2 + c1 * x + c0

    for r in set(_int_divisors_signed(c0)):
        if f(r) == 0:
            return False
    # quadratic split: (T^2+uT+v)(T^2+u'T+v') with v v' = c0,
    # u + u' = c3, v + v' + u u' = c2, u v' + u' v = c1
    for v in set(_int_divisors_signed(c0)):
        if c0 % v:
            continue
        vp = c0 // v
        # u, u' are roots of X^2 - c3 X + (c2 - v - v')
        disc = c3 * c3 - 4 * (c2 - v - vp)
        if disc < 0 or not is_square(disc):
            continue
        s = math.isqrt(disc)
        for u in {(c3 + s) // 2, (c3 - s) // 2}:
            up = c3 - u
            if u + up == c3 and u * up == c2 - v - vp and u * vp + up * v == c1:
                return False
    return True


def galois_type(w: WeilPolynomial) -> GaloisType:
    """Galois group of the splitting field, for irreducible f.

    The cubic resolvent of f always has the rational root 2q; the remaining
    quadratic factor is y^2 - (b-2q) y + (a^2-2b) q with discriminant
    N = b^2+4bq+4q^2-4a^2q.  N a nonzero square forces the Klein four group.
    Otherwise the group is cyclic or dihedral of order 8; it is cyclic exactly
    when the trace quadratic f+ splits over Q(sqrt(disc f)), i.e. when
    N * delta_fplus is a square.
    """
    if not is_irreducible(w):
        raise ReducibleError(f"{w} is reducible over Q")
    inv = invariants(w)
    n = inv.conj_diff_norm
    if n == 0:
        raise ReducibleError(f"{w} has repeated roots")
    if is_square(n):
        return GaloisType.BIQUADRATIC
    if is_square(n * inv.delta_fplus):
        return GaloisType.CYCLIC4
    return GaloisType.NOT_ABELIAN


@dataclass(frozen=True)
class ValidationReport:
    ordinary: bool
    irreducible: bool
    galois_type: GaloisType | None
    unramified_at_p: bool
    maximal: bool | None          # None when not checked or not checkable
    polarizable: str = "asserted by user"  # never verified here
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return (self.ordinary and self.irreducible
                and self.galois_type in (GaloisType.CYCLIC4, GaloisType.BIQUADRATIC)
                and self.unramified_at_p and self.maximal is True)


def validate(w: WeilPolynomial, check_maximal: bool = True,
             prime_bound: int | None = None) -> ValidationReport:
    """Check the ordinary / irreducible / abelian-Galois / maximal hypotheses.

    Failures are reported, not raised.  Maximality is decided by comparing
    the order discriminant with the field discriminant recovered from the
    character group (conductor-discriminant), so it needs the splitting-data
    identification from the characters module.
    """
    if not w.in_weil_region():
        return ValidationReport(False, False, None, False, None,
                                failure="outside the Weil region")
    ordinary = math.gcd(w.b, w.p) == 1
    irreducible = is_irreducible(w)
    gtype: GaloisType | None = None
    if irreducible:
        try:
            gtype = galois_type(w)
        except ReducibleError:
            irreducible = False
    inv = invariants(w)
    unramified = irreducible and inv.delta_order != 0 and inv.delta_order % w.p != 0
    maximal: bool | None = None
    failure = None
    if not ordinary:
        failure = "middle coefficient shares a factor with p"
    elif not irreducible:
        failure = "reducible over Q"
    elif gtype is GaloisType.NOT_ABELIAN:
        failure = "splitting field is not abelian over Q"
    elif not unramified:
        failure = "p ramifies in the splitting field"
    elif check_maximal:
        from . import characters  # deferred: characters depends on this module

        try:
            cg = characters.identify_characters(w, prime_bound=prime_bound)
            maximal = cg.delta_K == abs(inv.delta_order)
            if not maximal:
                failure = "order generated by Frobenius and its conjugate is not maximal"
        except Exception as exc:  # identification failure implies non-maximal or bound issue
            maximal = False
            failure = f"character identification failed: {exc}"
    return ValidationReport(ordinary, irreducible, gtype, unramified, maximal,
                            failure=failure)


@dataclass(frozen=True)
class CorpusEntry:
    w: WeilPolynomial
    galois_type: GaloisType
    delta_order: int

    def to_json(self) -> str:
        return json.dumps({
            "p": self.w.p, "e": self.w.e, "a": self.w.a, "b": self.w.b,
            "galois_type": self.galois_type.value,
            "delta_order": self.delta_order,
            "polarizable": "asserted",
        }, sort_keys=True)


def weil_region_pairs(q: int) -> list[tuple[int, int]]:
    """All integer (a, b) with every root of f on |z| = sqrt(q)."""
    amax = math.isqrt(16 * q)
    out = []
    for a in range(-amax, amax + 1):
        for b in range(-2 * q, a * a // 4 + 2 * q + 1):
            if (b + 2 * q) ** 2 >= 4 * a * a * q:
                out.append((a, b))
    return out


def enumerate_corpus(q: int, check_maximal: bool = True,
                     workers: int = 1) -> list[CorpusEntry]:
    """All valid Weil polynomials for F_q, sorted by (a, b).

    The scan is embarrassingly parallel over the (a, b) region; results are
    merged in deterministic (a, b) order regardless of worker count.
    """
    p, e = prime_power_decomposition(q)
    if p > MAX_CORPUS_P:
        raise ValueError(f"corpus scan limited to p <= {MAX_CORPUS_P}")
    pairs = weil_region_pairs(q)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [pairs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan_pairs, [(p, e, c, check_maximal) for c in chunks])
        entries = [x for part in parts for x in part]
    else:
        entries = _scan_pairs((p, e, pairs, check_maximal))
    return sorted(entries, key=lambda t: (t.w.a, t.w.b))


def _scan_pairs(args: tuple[int, int, list[tuple[int, int]], bool]) -> list[CorpusEntry]:
    p, e, pairs, check_maximal = args
    out = []
    for a, b in pairs:
        w = WeilPolynomial(p, e, a, b)
        rep = validate(w, check_maximal=check_maximal)
        if check_maximal:
            good = rep.ok
        else:
            good = (rep.ordinary and rep.irreducible and rep.unramified_at_p
                    and rep.galois_type in (GaloisType.CYCLIC4, GaloisType.BIQUADRATIC))
        if good:
            out.append(CorpusEntry(w, rep.galois_type, invariants(w).delta_order))
    return out
