"""Exact integer matrix helpers: HNF, determinants, solving.

Everything works on lists of lists of Python ints; matrices stay small
(n <= 16 for the fields handled here), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction


def mat_copy(m):
    return [row[:] for row in m]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hnf(rows, n=None):
    """Row-style Hermite normal form of the lattice spanned by `rows`.

    Returns an upper-triangular n x n basis (positive diagonal, entries
    above each pivot reduced). Requires the span to have full rank n.
    """
    if n is None:
        n = len(rows[0])
    work = [row[:] for row in rows if any(row)]
    basis = [None] * n
    for row in work:
        _hnf_insert(basis, row, n)
    if any(b is None for b in basis):
        raise ValueError("lattice does not have full rank")
    # reduce entries above each pivot
    for i in range(n - 1, -1, -1):
        piv = basis[i][i]
        for k in range(i):
            q = basis[k][i] // piv
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return basis


def _hnf_insert(basis, row, n):
    row = row[:]
    for j in range(n):
        if row[j] == 0:
            continue
        if basis[j] is None:
            if row[j] < 0:
                row = [-x for x in row]
            basis[j] = row
            return
        # reduce row against the pivot at column j via gcd steps
        a, b = basis[j][j], row[j]
        while b:
            q = a // b
            basis[j], row = row, [x - q * y for x, y in zip(basis[j], row)]
            a, b = basis[j][j], row[j]
        if basis[j][j] < 0:
            basis[j] = [-x for x in basis[j]]
    return


def det(m):
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    a = mat_copy(m)
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_left_exact(m, v):
    """x with x . m = v over Q (m square nonsingular); returns Fractions."""
    n = len(m)
    # transpose to solve m^T x^T = v^T by standard elimination
    a = [[Fraction(m[j][i]) for j in range(n)] for i in range(n)]
    b = [Fraction(x) for x in v]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        b[col] *= inv
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                b[r] -= factor * b[col]
    return b


def lattice_contains(basis_hnf, v):
    """Whether integer vector v lies in the lattice with HNF row basis.

    Rows are upper triangular, so reduction must run top-down: row i only
    touches columns >= i and never re-pollutes cleared ones.
    """
    n = len(v)
    v = list(v)
    for i in range(n):
        piv = basis_hnf[i][i]
        q, r = divmod(v[i], piv)
        if r:
            return False
        if q:
            for j in range(i, n):
                v[j] -= q * basis_hnf[i][j]
    return all(x == 0 for x in v)


def nullspace_mod_p(m, p):
    """Basis of the right nullspace of matrix m over F_p (rows of output)."""
    if not m:
        return []
    rows = len(m)
    cols = len(m[0])
    a = [[x % p for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * cols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-a[i][fc]) % p
        basis.append(vec)
    return basis
