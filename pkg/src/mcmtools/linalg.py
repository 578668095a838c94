"""Dense exact linear algebra over the coefficient fields.

Matrices are lists of rows of field elements.  Everything here is small
(endomorphism algebras, hom spaces, basis changes), so plain Gaussian
elimination is enough.
"""
from __future__ import annotations


def identity(field, n):
    return [[field.one if i == j else field.zero for j in range(n)]
            for i in range(n)]


def mat_mul(field, A, B):
    n, m = len(A), len(B[0]) if B else 0
    k = len(B)
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for l in range(k):
            a = Ai[l]
            if field.is_zero(a):
                continue
            Bl = B[l]
            row = out[i]
            for j in range(m):
                row[j] = field.add(row[j], field.mul(a, Bl[j]))
    return out


def mat_vec(field, A, v):
    return [sum_product(field, row, v) for row in A]


def sum_product(field, xs, ys):
    acc = field.zero
    for x, y in zip(xs, ys):
        acc = field.add(acc, field.mul(x, y))
    return acc


def rref(field, A):
    """Reduced row echelon form; returns (R, pivot column indices)."""
    R = [row[:] for row in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not field.is_zero(R[i][c])), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = field.invert(R[r][c])
        R[r] = [field.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and not field.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(field, A):
    return len(rref(field, A)[1]) if A else 0


def nullspace(field, A, ncols=None):
    """Basis of the right kernel of A, as a list of vectors."""
    if not A:
        return [[field.one if i == j else field.zero for i in range(ncols)]
                for j in range(ncols or 0)]
    cols = len(A[0])
    R, pivots = rref(field, A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(R[r][fc])
        basis.append(v)
    return basis


def solve(field, A, b):
    """One solution of A x = b, or None if inconsistent."""
    if not A:
        return [] if all(field.is_zero(x) for x in b) else None
    cols = len(A[0])
    aug = [row[:] + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x


def invert_matrix(field, A):
    """Inverse of a square matrix, or None if singular."""
    n = len(A)
    aug = [A[i][:] + identity(field, n)[i] for i in range(n)]
    R, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R[:n]]


def det(field, A):
    """Determinant by fraction-free-ish elimination over a field."""
    n = len(A)
    M = [row[:] for row in A]
    result = field.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if not field.is_zero(M[i][c])), None)
        if pivot is None:
            return field.zero
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            result = field.neg(result)
        result = field.mul(result, M[c][c])
        inv = field.invert(M[c][c])
        for i in range(c + 1, n):
            if not field.is_zero(M[i][c]):
                f = field.mul(inv, M[i][c])
                M[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(M[i], M[c])]
    return result
