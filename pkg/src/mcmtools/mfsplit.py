"""Heuristic splitting of matrix factorizations into direct summands.

Two passes, both exact:

* unit elimination - a degree-0 unit entry of phi lets row/column operations
  split off a trivial ((unit), (f/unit)) block;
* constant idempotents - solve the linear system for pairs (alpha, beta) of
  twist-respecting constant matrices with alpha*phi = phi*beta and
  beta*psi = psi*alpha, then look for a nontrivial idempotent in that algebra
  (minimal polynomial, split off an eigenvalue over the coefficient field).
  An idempotent yields bases of image and kernel, and the factorization is
  block diagonal in those bases.

This is a heuristic, not a decision procedure: a factorization may be
decomposable through moves this search does not attempt, in which case the
result is honestly "no split found" (None).
"""
from __future__ import annotations

import itertools
import random

from .linalg import det, identity, invert_matrix, mat_mul, nullspace, rref
from .matfac import (MatrixFactorization, add_col_multiple, add_row_multiple,
                     change_of_variables, permute_mf, verify_mf)

# ---------------------------------------------------------------------------
# univariate polynomial helpers over a field (dense coefficient lists)
# ---------------------------------------------------------------------------


def _ptrim(field, p):
    while p and field.is_zero(p[-1]):
        p.pop()
    return p


def _pmul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return _ptrim(field, out)


def _pdivmod(field, a, b):
    a = a[:]
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    inv = field.invert(b[-1])
    while len(a) >= len(b) and a:
        c = field.mul(a[-1], inv)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = field.sub(a[k + i], field.mul(c, y))
        _ptrim(field, a)
    return _ptrim(field, q), a


def _pgcd(field, a, b):
    a, b = a[:], b[:]
    while b:
        a, b = b, _pdivmod(field, a, b)[1]
    if a:
        inv = field.invert(a[-1])
        a = [field.mul(inv, c) for c in a]
    return a


def _pxgcd(field, a, b):
    """(g, u, v) monic with u*a + v*b = g."""
    r0, r1 = a[:], b[:]
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        q, r = _pdivmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _ptrim(field, [field.sub(x, y) for x, y in
                                    itertools.zip_longest(s0, _pmul(field, q, s1),
                                                          fillvalue=field.zero)])
        t0, t1 = t1, _ptrim(field, [field.sub(x, y) for x, y in
                                    itertools.zip_longest(t0, _pmul(field, q, t1),
                                                          fillvalue=field.zero)])
    if r0:
        inv = field.invert(r0[-1])
        r0 = [field.mul(inv, c) for c in r0]
        s0 = [field.mul(inv, c) for c in s0]
        t0 = [field.mul(inv, c) for c in t0]
    return r0, s0, t0


def _pderiv(field, p):
    return _ptrim(field, [field.mul(field.from_int(i), c)
                          for i, c in enumerate(p)][1:])


def _peval_matrix(field, p, M):
    n = len(M)
    out = [[field.zero] * n for _ in range(n)]
    for c in reversed(p):
        out = mat_mul(field, out, M)
        for i in range(n):
            out[i][i] = field.add(out[i][i], c)
    return out


def _minimal_polynomial(field, M):
    """Monic minimal polynomial of a square matrix, by Krylov on flattened powers."""
    n = len(M)
    flat_rows = []
    powers = [identity(field, n)]
    while True:
        flat_rows.append([x for row in powers[-1] for x in row])
        sol = _dependence(field, flat_rows)
        if sol is not None:
            return sol
        powers.append(mat_mul(field, powers[-1], M))


def _dependence(field, rows):
    """If the last row depends on the earlier ones, return the monic relation."""
    k = len(rows)
    if k == 1:
        return None
    A = [[rows[i][j] for i in range(k - 1)] for j in range(len(rows[0]))]
    b = [rows[-1][j] for j in range(len(rows[0]))]
    from .linalg import solve
    x = solve(field, A, b)
    if x is None:
        return None
    # M^{k-1} = sum x_i M^i  ->  minimal polynomial x^{k-1} - sum x_i x^i
    p = [field.neg(c) for c in x] + [field.one]
    return p


def _field_root(field, p):
    """Some root of p in the field, or None (small candidates + exact quadratics)."""
    candidates = [field.zero, field.one, field.neg(field.one)]
    for num in (2, 3):
        candidates.append(field.from_int(num))
        candidates.append(field.neg(field.from_int(num)))
    from fractions import Fraction
    for q in (Fraction(1, 2), Fraction(3, 2), Fraction(1, 3)):
        try:
            c = field.from_fraction(q)
        except Exception:
            continue
        candidates.append(c)
        candidates.append(field.neg(c))
    i = field.imaginary_unit()
    if i is not None:
        more = []
        for c in candidates[:9]:
            more.append(field.mul(i, c))
            more.append(field.add(c, i))
            more.append(field.sub(c, i))
        candidates.extend(more)
    for lam in candidates:
        acc = field.zero
        for c in reversed(p):
            acc = field.add(field.mul(acc, lam), c)
        if field.is_zero(acc):
            return lam
    if len(p) == 3:  # monic quadratic: exact formula needs sqrt(b^2-4c) in the field
        b, c = p[1], p[0]
        disc = field.sub(field.mul(b, b), field.mul(field.from_int(4), c))
        s = field.sqrt(disc)
        if s is not None:
            half = field.invert(field.from_int(2))
            return field.mul(half, field.sub(s, b))
    return None


def _idempotent_from_element(field, M):
    """A nontrivial idempotent polynomial expression in M, or None."""
    n = len(M)
    mu = _minimal_polynomial(field, M)
    if len(mu) <= 2:
        return None
    lam = _field_root(field, mu)
    if lam is None:
        sf = _pdivmod(field, mu, _pgcd(field, mu, _pderiv(field, mu)))[0]
        lam = _field_root(field, sf) if len(sf) < len(mu) else None
        if lam is None:
            return None
    # split off the full (x - lam)^k factor and build the CRT idempotent
    g1 = [field.one]
    rest = mu
    while True:
        q, r = _pdivmod(field, rest, [field.neg(lam), field.one])
        if r:
            break
        g1 = _pmul(field, g1, [field.neg(lam), field.one])
        rest = q
    g2 = rest
    if len(g1) <= 1 or len(g2) <= 1:
        return None
    g, u, v = _pxgcd(field, g1, g2)
    if len(g) != 1:
        return None
    e_poly = _pmul(field, v, g2)  # = 1 mod g1, = 0 mod g2
    E = _peval_matrix(field, e_poly, M)
    E2 = mat_mul(field, E, E)
    assert E2 == E, "CRT expression must be idempotent"
    if all(field.is_zero(x) for row in E for x in row):
        return None
    if E == identity(field, n):
        return None
    return E


# ---------------------------------------------------------------------------
# constant endomorphism pairs
# ---------------------------------------------------------------------------


def _allowed(twists):
    n = len(twists)
    return [(i, j) for i in range(n) for j in range(n) if twists[i] == twists[j]]


def endomorphism_pairs(m: MatrixFactorization):
    """Basis of pairs (alpha, beta) of constant matrices commuting with (phi, psi)."""
    field = m.ring.field
    n = m.size
    a_slots = _allowed(m.row_twists)
    b_slots = _allowed(m.col_twists)
    unknowns = [("a",) + s for s in a_slots] + [("b",) + s for s in b_slots]
    index = {u: k for k, u in enumerate(unknowns)}

    rows = []

    def add_equations(left_mat, right_mat, left_tag, right_tag):
        # (X*left) - (right*Y) = 0 with X named left_tag, Y named right_tag
        eqs = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    # (X * left_mat)[i][j] takes X[i][k] * left_mat[k][j]
                    if (left_tag, i, k) in index:
                        for mono, c in left_mat[k][j].terms:
                            eqs.setdefault((i, j, mono), {})[
                                index[(left_tag, i, k)]] = c
                    # (right_mat * Y)[i][j] takes right_mat[i][k] * Y[k][j]
                    if (right_tag, k, j) in index:
                        for mono, c in right_mat[i][k].terms:
                            cell = eqs.setdefault((i, j, mono), {})
                            key = index[(right_tag, k, j)]
                            cell[key] = field.sub(cell.get(key, field.zero), c)
        for cell in eqs.values():
            row = [field.zero] * len(unknowns)
            for k, c in cell.items():
                row[k] = field.add(row[k], c)
            rows.append(row)

    add_equations(m.phi, m.phi, "a", "b")   # alpha*phi = phi*beta
    add_equations(m.psi, m.psi, "b", "a")   # beta*psi = psi*alpha

    basis = nullspace(field, rows, ncols=len(unknowns)) if rows else \
        [[field.one if i == k else field.zero for i in range(len(unknowns))]
         for k in range(len(unknowns))]

    out = []
    for vec in basis:
        alpha = [[field.zero] * n for _ in range(n)]
        beta = [[field.zero] * n for _ in range(n)]
        for u, val in zip(unknowns, vec):
            tag, i, j = u
            (alpha if tag == "a" else beta)[i][j] = val
        out.append((alpha, beta))
    return out


def _combine(field, pairs, coeffs):
    n = len(pairs[0][0])
    alpha = [[field.zero] * n for _ in range(n)]
    beta = [[field.zero] * n for _ in range(n)]
    for (a, b), c in zip(pairs, coeffs):
        for i in range(n):
            for j in range(n):
                alpha[i][j] = field.add(alpha[i][j], field.mul(c, a[i][j]))
                beta[i][j] = field.add(beta[i][j], field.mul(c, b[i][j]))
    return alpha, beta


def _projection_bases(field, P):
    """(U, Uinv, k): columns of U are a basis of im(P) then ker(P)."""
    n = len(P)
    cols = [[P[i][j] for i in range(n)] for j in range(n)]
    img = []
    for col in cols:
        test = img + [col]
        A = [[test[r][c] for r in range(len(test))] for c in range(n)]
        if len(rref(field, A)[1]) == len(test):
            img.append(col)
    ker = nullspace(field, P)
    vectors = img + ker
    if len(vectors) != n:
        return None
    U = [[vectors[j][i] for j in range(n)] for i in range(n)]
    Uinv = invert_matrix(field, U)
    if Uinv is None:
        return None
    return U, Uinv, len(img)


def _vector_twist(field, twists, column):
    support = {twists[i] for i, x in enumerate(column) if not field.is_zero(x)}
    assert len(support) == 1, "basis vector mixes twist blocks"
    return support.pop()


def _split_by_idempotent(m, alpha, beta):
    field = m.ring.field
    pa = _projection_bases(field, alpha)
    pb = _projection_bases(field, beta)
    if pa is None or pb is None:
        return None
    U, Uinv, ka = pa
    V, Vinv, kb = pb
    if ka != kb or ka == 0 or ka == m.size:
        return None
    n = m.size
    ring = m.ring

    def scalar(C):
        return tuple(tuple(ring.constant(c) for c in row) for row in C)

    from .matfac import _mat_mul
    phi = _mat_mul(_mat_mul(scalar(Uinv), m.phi, ring), scalar(V), ring)
    psi = _mat_mul(_mat_mul(scalar(Vinv), m.psi, ring), scalar(U), ring)
    rows = tuple(_vector_twist(field, m.row_twists, [U[i][a] for i in range(n)])
                 for a in range(n))
    cols = tuple(_vector_twist(field, m.col_twists, [V[i][a] for i in range(n)])
                 for a in range(n))
    for i in range(n):
        for j in range(n):
            if (i < ka) != (j < ka) and (not phi[i][j].is_zero()
                                         or not psi[j][i].is_zero()):
                return None

    def block(mat, rws, cls):
        return tuple(tuple(mat[i][j] for j in cls) for i in rws)

    first = MatrixFactorization(ring, m.potential,
                                block(phi, range(ka), range(ka)),
                                block(psi, range(ka), range(ka)),
                                rows[:ka], cols[:ka])
    second = MatrixFactorization(ring, m.potential,
                                 block(phi, range(ka, n), range(ka, n)),
                                 block(psi, range(ka, n), range(ka, n)),
                                 rows[ka:], cols[ka:])
    if not (verify_mf(first).ok and verify_mf(second).ok):
        return None
    return [first, second]


def split_once(m: MatrixFactorization):
    """One direct-sum split by a constant idempotent, or None."""
    if m.size <= 1:
        return None
    field = m.ring.field
    pairs = endomorphism_pairs(m)
    if len(pairs) <= 1:
        return None
    candidates = []
    for p in pairs:
        candidates.append(p)
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            candidates.append(_combine(field, [pairs[i], pairs[j]],
                                       [field.one, field.one]))
            candidates.append(_combine(field, [pairs[i], pairs[j]],
                                       [field.one, field.neg(field.one)]))
    rng = random.Random(20240917)
    for _ in range(12):
        coeffs = [field.from_int(rng.randint(-3, 3)) for _ in pairs]
        candidates.append(_combine(field, pairs, coeffs))

    n = m.size
    for alpha, beta in candidates:
        M = [[field.zero] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                M[i][j] = alpha[i][j]
                M[n + i][n + j] = beta[i][j]
        E = _idempotent_from_element(field, M)
        if E is None:
            continue
        ea = [[E[i][j] for j in range(n)] for i in range(n)]
        eb = [[E[n + i][n + j] for j in range(n)] for i in range(n)]
        result = _split_by_idempotent(m, ea, eb)
        if result is not None:
            return result
    return None


# ---------------------------------------------------------------------------
# unit-entry elimination
# ---------------------------------------------------------------------------


def _split_unit_block(m: MatrixFactorization):
    """Split off a trivial block through a degree-0 unit entry of phi, or None."""
    if m.size <= 1:
        return None
    field = m.ring.field
    pivot = None
    for i in range(m.size):
        for j in range(m.size):
            p = m.phi[i][j]
            if not p.is_zero() and p.degree() == 0:
                pivot = (i, j, p.constant_coefficient())
                break
        if pivot:
            break
    if pivot is None:
        return None
    i, j, unit = pivot
    inv = field.invert(unit)
    cur = m
    for k in range(m.size):
        if k != i and not cur.phi[k][j].is_zero():
            lam = cur.phi[k][j].scale(field.neg(inv))
            cur = add_row_multiple(cur, k, i, lam)
    for l in range(m.size):
        if l != j and not cur.phi[i][l].is_zero():
            lam = cur.phi[i][l].scale(field.neg(inv))
            cur = add_col_multiple(cur, j, l, lam)
    order_rows = [i] + [k for k in range(m.size) if k != i]
    order_cols = [j] + [l for l in range(m.size) if l != j]
    cur = permute_mf(cur, order_rows, order_cols)
    n = cur.size
    for k in range(1, n):
        if not (cur.phi[0][k].is_zero() and cur.phi[k][0].is_zero()
                and cur.psi[0][k].is_zero() and cur.psi[k][0].is_zero()):
            return None
    head = MatrixFactorization(cur.ring, cur.potential,
                               ((cur.phi[0][0],),), ((cur.psi[0][0],),),
                               cur.row_twists[:1], cur.col_twists[:1])
    tail = MatrixFactorization(cur.ring, cur.potential,
                               tuple(tuple(cur.phi[a][b] for b in range(1, n))
                                     for a in range(1, n)),
                               tuple(tuple(cur.psi[a][b] for b in range(1, n))
                                     for a in range(1, n)),
                               cur.row_twists[1:], cur.col_twists[1:])
    if not (verify_mf(head).ok and verify_mf(tail).ok):
        return None
    return [head, tail]


# ---------------------------------------------------------------------------
# public entry points
# ---------------------------------------------------------------------------


def try_split(m: MatrixFactorization, substitutions=()):
    """Split m into indecomposable-looking blocks; None means no split found.

    `substitutions` is a sequence of (mapping, target_ring) changes of
    variables to attempt before searching; the first one that enables a split
    wins.  Returned blocks always verify and direct-sum back to an object
    with the same cokernel Hilbert function as the input.
    """
    variants = [m]
    for mapping, target in substitutions:
        variants.append(change_of_variables(m, mapping, target))
    for candidate in variants:
        blocks = _split_recursive(candidate)
        if len(blocks) > 1:
            return blocks
    return None


def _split_recursive(m):
    for splitter in (_split_unit_block, split_once):
        parts = splitter(m)
        if parts is not None:
            out = []
            for p in parts:
                out.extend(_split_recursive(p))
            return out
    return [m]


def mf_equivalent(m1: MatrixFactorization, m2: MatrixFactorization,
                  attempts: int = 200) -> bool:
    """True if constant twist-respecting (U, W) with U phi1 = phi2 W, psi2 U = W psi1
    exist with U, W invertible; an exact sufficient test for catalog matching."""
    if m1.ring != m2.ring or m1.potential != m2.potential or m1.size != m2.size:
        return False
    field = m1.ring.field
    n = m1.size
    u_slots = [(i, j) for i in range(n) for j in range(n)
               if m2.row_twists[i] == m1.row_twists[j]]
    w_slots = [(i, j) for i in range(n) for j in range(n)
               if m2.col_twists[i] == m1.col_twists[j]]
    unknowns = [("u",) + s for s in u_slots] + [("w",) + s for s in w_slots]
    index = {u: k for k, u in enumerate(unknowns)}
    rows = []

    def equations(left, right, ltag, rtag):
        # (X*left) - (right*Y) = 0, X named ltag, Y named rtag
        eqs = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if (ltag, i, k) in index:
                        for mono, c in left[k][j].terms:
                            eqs.setdefault((i, j, mono), {})[index[(ltag, i, k)]] = c
                    if (rtag, k, j) in index:
                        for mono, c in right[i][k].terms:
                            cell = eqs.setdefault((i, j, mono), {})
                            key = index[(rtag, k, j)]
                            cell[key] = field.sub(cell.get(key, field.zero), c)
        for cell in eqs.values():
            row = [field.zero] * len(unknowns)
            for k, c in cell.items():
                row[k] = field.add(row[k], c)
            rows.append(row)

    equations(m1.phi, m2.phi, "u", "w")   # (U phi1) - (phi2 W) = 0
    equations(m1.psi, m2.psi, "w", "u")   # (W psi1) - (psi2 U) = 0

    basis = nullspace(field, rows, ncols=len(unknowns)) if rows else []
    if not basis:
        return False

    def extract(vec):
        U = [[field.zero] * n for _ in range(n)]
        W = [[field.zero] * n for _ in range(n)]
        for u, val in zip(unknowns, vec):
            tag, i, j = u
            (U if tag == "u" else W)[i][j] = val
        return U, W

    def invertible(vec):
        U, W = extract(vec)
        return not field.is_zero(det(field, U)) and not field.is_zero(det(field, W))

    for vec in basis:
        if invertible(vec):
            return True
    rng = random.Random(7)
    for _ in range(attempts):
        coeffs = [field.from_int(rng.randint(-3, 3)) for _ in basis]
        vec = [field.zero] * len(unknowns)
        for c, b in zip(coeffs, basis):
            if field.is_zero(c):
                continue
            vec = [field.add(x, field.mul(c, y)) for x, y in zip(vec, b)]
        if any(not field.is_zero(x) for x in vec) and invertible(vec):
            return True
    return False


def mf_equivalent_up_to_twist(m1, m2) -> bool:
    """Constant equivalence after aligning overall twist offsets."""
    if m1.size != m2.size or m1.size == 0:
        return m1.size == m2.size
    from .matfac import twist_mf
    offset = min(m2.row_twists) - min(m1.row_twists)
    return mf_equivalent(twist_mf(m1, offset), m2)


def mf_equal_up_to_permutation(m1, m2) -> bool:
    """Literal equality after some simultaneous row/column reindexing."""
    if m1.ring != m2.ring or m1.potential != m2.potential or m1.size != m2.size:
        return False
    n = m1.size
    for rp in itertools.permutations(range(n)):
        if tuple(m1.row_twists[i] for i in rp) != m2.row_twists:
            continue
        for cp in itertools.permutations(range(n)):
            if tuple(m1.col_twists[j] for j in cp) != m2.col_twists:
                continue
            moved = permute_mf(m1, rp, cp)
            if moved.phi == m2.phi and moved.psi == m2.psi:
                return True
    return False
