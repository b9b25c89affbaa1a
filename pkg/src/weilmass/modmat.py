"""Small dense matrix arithmetic over F_ell (4x4 throughout this package)."""

from __future__ import annotations

Mat = tuple[tuple[int, ...], ...]


def mat(rows, ell: int) -> Mat:
    return tuple(tuple(x % ell for x in r) for r in rows)


def identity(n: int = 4) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(A: Mat, B: Mat, ell: int) -> Mat:
    n = len(A)
    Bt = tuple(zip(*B))
    return tuple(
        tuple(sum(a * b for a, b in zip(row, col)) % ell for col in Bt)
        for row in A)


def mat_add(A: Mat, B: Mat, ell: int) -> Mat:
    return tuple(tuple((x + y) % ell for x, y in zip(ra, rb))
                 for ra, rb in zip(A, B))


def mat_scale(A: Mat, c: int, ell: int) -> Mat:
    return tuple(tuple(x * c % ell for x in r) for r in A)


def mat_sub(A: Mat, B: Mat, ell: int) -> Mat:
    return tuple(tuple((x - y) % ell for x, y in zip(ra, rb))
                 for ra, rb in zip(A, B))


def transpose(A: Mat) -> Mat:
    return tuple(zip(*A))


def is_zero(A: Mat) -> bool:
    return all(all(x == 0 for x in r) for r in A)


def det_mod(A: Mat, ell: int) -> int:
    """Determinant by fraction-free elimination."""
    n = len(A)
    M = [list(r) for r in A]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = det * M[col][col] % ell
        inv = pow(M[col][col], -1, ell)
        for r in range(col + 1, n):
            if M[r][col]:
                factor = M[r][col] * inv % ell
                for c in range(col, n):
                    M[r][c] = (M[r][c] - factor * M[col][c]) % ell
    return det % ell


def mat_pow(A: Mat, k: int, ell: int) -> Mat:
    R = identity(len(A))
    while k:
        if k & 1:
            R = mat_mul(R, A, ell)
        A = mat_mul(A, A, ell)
        k >>= 1
    return R


def poly_at_matrix(coeffs, A: Mat, ell: int) -> Mat:
    """Evaluate a polynomial (ascending coefficients) at a matrix, Horner style."""
    n = len(A)
    R = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for c in reversed(list(coeffs)):
        R = mat_mul(R, A, ell)
        if c % ell:
            R = mat_add(R, mat_scale(identity(n), c, ell), ell)
    return R


def charpoly(A: Mat, ell: int) -> tuple[int, int, int, int, int]:
    """Characteristic polynomial of a 4x4 matrix, ascending (c0..c3, 1).

    Uses elementary symmetric functions of eigenvalues via principal minors;
    exact integer arithmetic, reduced mod ell at the end.
    """
    a = [[int(x) for x in r] for r in A]

    def minor(rows):
        k = len(rows)
        if k == 1:
            return a[rows[0]][rows[0]]
        if k == 2:
            i, j = rows
            return a[i][i] * a[j][j] - a[i][j] * a[j][i]
        # k == 3: Laplace along first row
        i, j, k3 = rows
        return (a[i][i] * (a[j][j] * a[k3][k3] - a[j][k3] * a[k3][j])
                - a[i][j] * (a[j][i] * a[k3][k3] - a[j][k3] * a[k3][i])
                + a[i][k3] * (a[j][i] * a[k3][j] - a[j][j] * a[k3][i]))

    e1 = sum(a[i][i] for i in range(4))
    e2 = sum(minor((i, j)) for i in range(4) for j in range(i + 1, 4))
    e3 = sum(minor((i, j, k)) for i in range(4)
             for j in range(i + 1, 4) for k in range(j + 1, 4))
    # e4 = det, expanded over 2x2 complementary minors
    def d2(i, j, k, l):
        return a[i][k] * a[j][l] - a[i][l] * a[j][k]
    e4 = (d2(0, 1, 0, 1) * d2(2, 3, 2, 3) - d2(0, 1, 0, 2) * d2(2, 3, 1, 3)
          + d2(0, 1, 0, 3) * d2(2, 3, 1, 2) + d2(0, 1, 1, 2) * d2(2, 3, 0, 3)
          - d2(0, 1, 1, 3) * d2(2, 3, 0, 2) + d2(0, 1, 2, 3) * d2(2, 3, 0, 1))
    return (e4 % ell, -e3 % ell, e2 % ell, -e1 % ell, 1)


def nullspace_mod(M: list[list[int]], ell: int) -> list[list[int]]:
    """Basis of the right nullspace of an m x n matrix over F_ell."""
    rows = [list(r) for r in M]
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] % ell), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, ell)
        rows[r] = [x * inv % ell for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] % ell:
                f = rows[i][c]
                rows[i] = [(x - f * y) % ell for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % ell
        basis.append(v)
    return basis
