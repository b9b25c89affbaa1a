"""Univariate polynomial arithmetic and factorization over a prime field.

Polynomials are tuples of coefficients in ascending order, reduced mod ell,
with no trailing zeros; () is the zero polynomial.  Every caller in this
package works at degree <= 4, so the classic pipeline (squarefree split via
gcd with the derivative, distinct-degree split via gcd with T^(ell^d) - T,
randomized equal-degree split) is cheap at any modulus we use.

The equal-degree stage is seeded from (ell, poly) so factorizations are
byte-for-byte reproducible, and the factor list is sorted by (degree,
coefficients) so downstream classification is deterministic.
"""

from __future__ import annotations

import random
from typing import Sequence

from .arith import is_prime

Poly = tuple[int, ...]


def poly_mod(coeffs: Sequence[int], ell: int) -> Poly:
    """Reduce integer coefficients (ascending) mod ell and trim."""
    c = [x % ell for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: Poly) -> int:
    return len(f) - 1  # zero polynomial -> -1


def poly_add(f: Poly, g: Poly, ell: int) -> Poly:
    n = max(len(f), len(g))
    c = [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % ell
         for i in range(n)]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_sub(f: Poly, g: Poly, ell: int) -> Poly:
    n = max(len(f), len(g))
    c = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % ell
         for i in range(n)]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(f: Poly, g: Poly, ell: int) -> Poly:
    if not f or not g:
        return ()
    c = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                c[i + j] += fi * gj
    return poly_mod(c, ell)


def poly_divmod(f: Poly, g: Poly, ell: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    ginv = pow(g[-1], -1, ell)
    dg = len(g) - 1
    for i in range(len(r) - 1, dg - 1, -1):
        if r[i]:
            coef = r[i] * ginv % ell
            q[i - dg] = coef
            for j, gj in enumerate(g):
                r[i - dg + j] = (r[i - dg + j] - coef * gj) % ell
    while r and r[-1] == 0:
        r.pop()
    while q and q[-1] == 0:
        q.pop()
    return tuple(q), tuple(r)


def poly_gcd(f: Poly, g: Poly, ell: int) -> Poly:
    """Monic gcd."""
    while g:
        f, g = g, poly_divmod(f, g, ell)[1]
    if not f:
        return ()
    inv = pow(f[-1], -1, ell)
    return tuple(c * inv % ell for c in f)


def poly_pow_mod(base: Poly, exp: int, mod: Poly, ell: int) -> Poly:
    """base**exp mod (mod, ell) by square-and-multiply."""
    result: Poly = (1,)
    base = poly_divmod(base, mod, ell)[1]
    while exp > 0:
        if exp & 1:
            result = poly_divmod(poly_mul(result, base, ell), mod, ell)[1]
        base = poly_divmod(poly_mul(base, base, ell), mod, ell)[1]
        exp >>= 1
    return result


def poly_eval(f: Poly, x: int, ell: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % ell
    return acc


def _monic(f: Poly, ell: int) -> Poly:
    inv = pow(f[-1], -1, ell)
    return tuple(c * inv % ell for c in f)


def _derivative(f: Poly, ell: int) -> Poly:
    c = [i * f[i] % ell for i in range(1, len(f))]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _squarefree_parts(f: Poly, ell: int) -> list[tuple[Poly, int]]:
    """Yun-style decomposition: [(g, m)] with f = prod g^m, g squarefree monic.

    Handles the inseparable case (f' = 0, i.e. f a polynomial in T^ell) by
    taking ell-th roots, which over F_ell is coefficient re-indexing.
    """
    out: list[tuple[Poly, int]] = []
    f = _monic(f, ell)
    if degree(f) == 0:
        return out
    d = _derivative(f, ell)
    if not d:
        # f(T) = h(T^ell); over F_ell, h's coefficients are f's at multiples of ell
        h = tuple(f[i] for i in range(0, len(f), ell))
        for g, m in _squarefree_parts(h, ell):
            out.append((g, m * ell))
        return out
    c = poly_gcd(f, d, ell)
    w = poly_divmod(f, c, ell)[0]
    m = 1
    while degree(w) > 0:
        y = poly_gcd(w, c, ell)
        part = poly_divmod(w, y, ell)[0]
        if degree(part) > 0:
            out.append((_monic(part, ell), m))
        w = y
        c = poly_divmod(c, y, ell)[0]
        m += 1
    if degree(c) > 0:
        # leftover: the factors with multiplicity divisible by ell, still
        # carrying their true multiplicities (c' = 0, so the recursion enters
        # the inseparable branch and extracts the ell-th root itself)
        out.extend(_squarefree_parts(c, ell))
    return out


def _distinct_degree(f: Poly, ell: int) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into [(product of irreducibles of degree d, d)]."""
    out = []
    x: Poly = (0, 1)
    h = x
    rest = f
    d = 0
    while degree(rest) > 2 * d + 1:
        d += 1
        h = poly_pow_mod(h, ell, rest, ell)
        g = poly_gcd(poly_sub(h, x, ell), rest, ell)
        if degree(g) > 0:
            out.append((g, d))
            rest = poly_divmod(rest, g, ell)[0]
            h = poly_divmod(h, rest, ell)[1]
    if degree(rest) > 0:
        out.append((rest, degree(rest)))
    return out


def _equal_degree(f: Poly, d: int, ell: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus split of squarefree monic f into irreducibles of degree d."""
    n = degree(f)
    if n == d:
        return [f]
    while True:
        h = tuple(rng.randrange(ell) for _ in range(n - 1)) + (1,)
        if ell == 2:
            # trace map T + T^2 + ... + T^(2^(d-1)) of h modulo f
            t: Poly = ()
            power = poly_divmod(h, f, ell)[1]
            for _ in range(d):
                t = poly_add(t, power, ell)
                power = poly_divmod(poly_mul(power, power, ell), f, ell)[1]
            g = poly_gcd(t, f, ell)
        else:
            e = (ell**d - 1) // 2
            t = poly_pow_mod(h, e, f, ell)
            g = poly_gcd(poly_sub(t, (1,), ell), f, ell)
        if 0 < degree(g) < n:
            left = _equal_degree(g, d, ell, rng)
            right = _equal_degree(poly_divmod(f, g, ell)[0], d, ell, rng)
            return left + right


def factor_monic_mod_ell(coeffs: Sequence[int], ell: int) -> list[tuple[Poly, int]]:
    """Factor a monic integer polynomial mod ell into irreducibles.

    Returns [(factor, multiplicity)] with monic irreducible factors sorted by
    (degree, coefficient tuple); the product with multiplicities reproduces
    the input mod ell.
    """
    if not is_prime(ell):
        raise ValueError(f"modulus {ell} is not prime")
    f = poly_mod(coeffs, ell)
    if not f or f[-1] != 1:
        raise ValueError("polynomial must be monic mod ell")
    rng = random.Random(0x5F3E ^ (ell << 8) ^ hash(f) & 0xFFFFFFFF)
    found: dict[Poly, int] = {}
    for sqf, mult in _squarefree_parts(f, ell):
        for block, d in _distinct_degree(sqf, ell):
            for irr in _equal_degree(block, d, ell, rng):
                found[irr] = found.get(irr, 0) + mult
    return sorted(found.items(), key=lambda t: (degree(t[0]), t[0]))


def is_irreducible_mod_ell(f: Poly, ell: int) -> bool:
    """Irreducibility test for monic f over F_ell via distinct-degree gcds."""
    n = degree(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    x: Poly = (0, 1)
    h = x
    for d in range(1, n // 2 + 1):
        h = poly_pow_mod(h, ell, f, ell)
        if degree(poly_gcd(poly_sub(h, x, ell), f, ell)) > 0:
            return False
    return True
