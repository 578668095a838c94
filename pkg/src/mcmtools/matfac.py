"""Matrix factorizations (phi, psi) of a homogeneous potential f over an ambient ring.

Grading convention: phi[i][j] is homogeneous of degree col_twists[j] -
row_twists[i] (or zero); psi, as the map F0(-deg f) -> F1 completing the
factorization, has entry (i,j) of degree (row_twists[j] + deg f) -
col_twists[i].  The cokernel of phi is the MCM module over the hypersurface
ring S/(f) that the factorization encodes; its free resolution over that ring
is 2-periodic, which periodic_resolution_check certifies degreewise.
"""
from __future__ import annotations

from dataclasses import dataclass

from .modules import GradedModulePresentation, hilbert_function
from .report import Report
from .rings import GradedRing, PolyRing, RingMismatchError
from .groebner import ring_hilbert_function


class PotentialMismatchError(ValueError):
    """Operands are factorizations of different potentials."""


class VariableCollisionError(ValueError):
    """A fresh variable name collides with an existing one."""


@dataclass(frozen=True)
class MatrixFactorization:
    """A pair of square graded matrices with phi*psi = psi*phi = f*I."""

    ring: PolyRing
    potential: object
    phi: tuple
    psi: tuple
    row_twists: tuple
    col_twists: tuple

    def __post_init__(self):
        n = self.size
        for mat in (self.phi, self.psi):
            if len(mat) != n or any(len(row) != n for row in mat):
                raise ValueError("phi and psi must be square of equal size")
        if len(self.row_twists) != n or len(self.col_twists) != n:
            raise ValueError("twist vectors must match the matrix size")
        if self.potential.ring != self.ring:
            raise RingMismatchError("potential over a different ring")
        for mat in (self.phi, self.psi):
            for row in mat:
                for p in row:
                    if p.ring != self.ring:
                        raise RingMismatchError("matrix entry over a different ring")

    @property
    def size(self):
        return len(self.row_twists)

    @property
    def degree(self):
        return self.potential.homogeneous_degree()

    def quotient_ring(self) -> GradedRing:
        return GradedRing(self.ring, (self.potential,))


def _mat_mul(A, B, ring):
    n = len(A)
    zero = ring.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _transpose(A):
    n = len(A)
    return tuple(tuple(A[j][i] for j in range(n)) for i in range(n))


def verify_mf(m: MatrixFactorization) -> Report:
    """Check phi*psi = psi*phi = f*I entrywise plus every grading constraint."""
    report = Report(kind="verify-mf")
    ring = m.ring
    n = m.size
    f = m.potential
    if not f.is_homogeneous():
        report.add("potential/homogeneous", False, "potential is not homogeneous")
        return report
    d = m.degree if n else None

    for label, prod in (("phi*psi", _mat_mul(m.phi, m.psi, ring)),
                        ("psi*phi", _mat_mul(m.psi, m.phi, ring))):
        ok = True
        detail = "equals f*I"
        for i in range(n):
            for j in range(n):
                want = f if i == j else ring.zero()
                if prod[i][j] != want:
                    ok = False
                    detail = f"entry ({i},{j}) is {prod[i][j]!r}"
                    break
            if not ok:
                break
        report.add(f"product/{label}", ok, detail)

    grading_ok = True
    detail = "all entries homogeneous of twist-forced degree"
    for i in range(n):
        for j in range(n):
            p = m.phi[i][j]
            if not p.is_zero() and (not p.is_homogeneous() or
                                    p.homogeneous_degree() != m.col_twists[j] - m.row_twists[i]):
                grading_ok = False
                detail = f"phi({i},{j}) degree breaks twists"
            q = m.psi[i][j]
            if not q.is_zero() and (not q.is_homogeneous() or
                                    q.homogeneous_degree() != m.row_twists[j] + d - m.col_twists[i]):
                grading_ok = False
                detail = f"psi({i},{j}) degree breaks twists"
    report.add("grading", grading_ok, detail)
    return report


# ---------------------------------------------------------------------------
# elementary constructions
# ---------------------------------------------------------------------------


def dual_mf(m: MatrixFactorization) -> MatrixFactorization:
    """The transpose-dual factorization (psi^T, phi^T); an involution."""
    d = m.degree
    return MatrixFactorization(
        m.ring, m.potential, _transpose(m.psi), _transpose(m.phi),
        tuple(-(r + d) for r in m.row_twists),
        tuple(-c for c in m.col_twists))


def twist_mf(m: MatrixFactorization, shift: int) -> MatrixFactorization:
    return MatrixFactorization(
        m.ring, m.potential, m.phi, m.psi,
        tuple(r + shift for r in m.row_twists),
        tuple(c + shift for c in m.col_twists))


def direct_sum_mf(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    if a.ring != b.ring:
        raise RingMismatchError("direct sum over different rings")
    if a.potential != b.potential:
        raise PotentialMismatchError("direct sum of different potentials")
    zero = a.ring.zero()
    na, nb = a.size, b.size

    def block(A, B):
        rows = []
        for i in range(na):
            rows.append(tuple(A[i]) + (zero,) * nb)
        for i in range(nb):
            rows.append((zero,) * na + tuple(B[i]))
        return tuple(rows)

    return MatrixFactorization(
        a.ring, a.potential, block(a.phi, b.phi), block(a.psi, b.psi),
        a.row_twists + b.row_twists, a.col_twists + b.col_twists)


def _extend_ring(ring: PolyRing, new_names, new_degrees):
    for name in new_names:
        if name in ring.names:
            raise VariableCollisionError(f"variable {name!r} already in the ring")
    return PolyRing(ring.field, ring.names + tuple(new_names),
                    ring.degrees + tuple(new_degrees), ring.order)


def _lift_matrix(mat, target):
    return tuple(tuple(p.lift_to(target) for p in row) for row in mat)


def knoerrer_periodicity(m: MatrixFactorization, u: str = "u", v: str = "v") -> MatrixFactorization:
    """Factorization of f + u*v from one of f, via the 2x2 block construction.

    Blocks: phi' = ((u I, psi), (phi, -v I)), psi' = ((v I, psi), (phi, -u I)).
    The fresh variables get degrees 1 and deg(f) - 1 so the new potential is
    homogeneous.
    """
    d = m.degree
    if d is None or d < 2:
        raise ValueError("potential must be homogeneous of degree >= 2")
    big = _extend_ring(m.ring, (u, v), (1, d - 1))
    pu, pv = big.var(u), big.var(v)
    f = m.potential.lift_to(big) + pu * pv
    phi, psi = _lift_matrix(m.phi, big), _lift_matrix(m.psi, big)
    n = m.size
    zero = big.zero()

    def corner(scalar, sign_scalar, top, bottom):
        rows = []
        for i in range(n):
            rows.append(tuple(scalar if i == j else zero for j in range(n))
                        + tuple(top[i]))
        for i in range(n):
            rows.append(tuple(bottom[i])
                        + tuple(-sign_scalar if i == j else zero for j in range(n)))
        return tuple(rows)

    new_phi = corner(pu, pv, psi, phi)
    new_psi = corner(pv, pu, psi, phi)
    r, c = m.row_twists, m.col_twists
    return MatrixFactorization(
        big, f, new_phi, new_psi,
        tuple(c) + tuple(x + 1 for x in r),
        tuple(x + 1 for x in c) + tuple(x + d for x in r))


def double_branched_cover(m: MatrixFactorization, y: str = "y") -> MatrixFactorization:
    """Factorization of f + y^2 from one of f: both matrices ((y I, psi), (phi, -y I))."""
    d = m.degree
    if d is None or d % 2 != 0 or d < 2:
        raise ValueError("potential degree must be even and >= 2")
    big = _extend_ring(m.ring, (y,), (d // 2,))
    py = big.var(y)
    f = m.potential.lift_to(big) + py * py
    phi, psi = _lift_matrix(m.phi, big), _lift_matrix(m.psi, big)
    n = m.size
    zero = big.zero()
    rows = []
    for i in range(n):
        rows.append(tuple(py if i == j else zero for j in range(n)) + tuple(psi[i]))
    for i in range(n):
        rows.append(tuple(phi[i]) + tuple(-py if i == j else zero for j in range(n)))
    mat = tuple(rows)
    r, c = m.row_twists, m.col_twists
    half = d // 2
    return MatrixFactorization(
        big, f, mat, mat,
        tuple(c) + tuple(x + half for x in r),
        tuple(x + half for x in c) + tuple(x + d for x in r))


def change_of_variables(m: MatrixFactorization, substitution: dict,
                        target: PolyRing) -> MatrixFactorization:
    """Apply an invertible degree-preserving linear substitution to every entry.

    `substitution` maps source variable names to linear forms over `target`;
    omitted variables map to the same name.  Twists are unchanged.
    """
    if target.field.characteristic != m.ring.field.characteristic and \
            m.ring.field.characteristic != 0:
        raise RingMismatchError("incompatible coefficient fields")
    images = {}
    for name in m.ring.names:
        img = substitution.get(name)
        images[name] = img if img is not None else target.var(name)
    # invertibility of the coefficient matrix over the target field
    field = target.field
    if len(m.ring.names) != target.nvars:
        raise ValueError("substitution must be a square change of variables")
    matrix = []
    for name in m.ring.names:
        img = images[name]
        row = [field.zero] * target.nvars
        for mono, coeff in img.terms:
            if sum(mono) != 1:
                raise ValueError(f"substitution image for {name!r} is not linear")
            row[mono.index(1)] = coeff
        matrix.append(row)
    from .linalg import det
    if field.is_zero(det(field, matrix)):
        raise ValueError("substitution is not invertible")

    def sub(p):
        return p.substitute(images, target)

    return MatrixFactorization(
        target, sub(m.potential),
        tuple(tuple(sub(p) for p in row) for row in m.phi),
        tuple(tuple(sub(p) for p in row) for row in m.psi),
        m.row_twists, m.col_twists)


def permute_mf(m: MatrixFactorization, row_perm, col_perm) -> MatrixFactorization:
    """Reindex rows by row_perm and columns by col_perm (twists follow)."""
    n = m.size
    rp, cp = list(row_perm), list(col_perm)
    phi = tuple(tuple(m.phi[rp[i]][cp[j]] for j in range(n)) for i in range(n))
    psi = tuple(tuple(m.psi[cp[i]][rp[j]] for j in range(n)) for i in range(n))
    return MatrixFactorization(
        m.ring, m.potential, phi, psi,
        tuple(m.row_twists[i] for i in rp), tuple(m.col_twists[j] for j in cp))


def conjugate_mf(m: MatrixFactorization, U, Uinv, V, Vinv) -> MatrixFactorization:
    """(U phi V, V^-1 psi U^-1) for constant twist-respecting U, V."""
    ring = m.ring

    def scalar_mat(C):
        return tuple(tuple(ring.constant(c) for c in row) for row in C)

    phi = _mat_mul(_mat_mul(scalar_mat(U), m.phi, ring), scalar_mat(V), ring)
    psi = _mat_mul(_mat_mul(scalar_mat(Vinv), m.psi, ring), scalar_mat(Uinv), ring)
    return MatrixFactorization(ring, m.potential, phi, psi,
                               m.row_twists, m.col_twists)


def add_row_multiple(m: MatrixFactorization, i: int, j: int, lam) -> MatrixFactorization:
    """Row op phi_i += lam*phi_j (lam homogeneous of degree r_j - r_i); psi follows."""
    n = m.size
    phi = [list(row) for row in m.phi]
    psi = [list(row) for row in m.psi]
    for k in range(n):
        phi[i][k] = phi[i][k] + lam * phi[j][k]
    for k in range(n):
        psi[k][j] = psi[k][j] - lam * psi[k][i]
    return MatrixFactorization(m.ring, m.potential,
                               tuple(tuple(r) for r in phi),
                               tuple(tuple(r) for r in psi),
                               m.row_twists, m.col_twists)


def add_col_multiple(m: MatrixFactorization, i: int, j: int, lam) -> MatrixFactorization:
    """Column op phi_.j += lam*phi_.i (lam homogeneous of degree c_j - c_i); psi follows."""
    n = m.size
    phi = [list(row) for row in m.phi]
    psi = [list(row) for row in m.psi]
    for k in range(n):
        phi[k][j] = phi[k][j] + lam * phi[k][i]
    for k in range(n):
        psi[i][k] = psi[i][k] - lam * psi[j][k]
    return MatrixFactorization(m.ring, m.potential,
                               tuple(tuple(r) for r in phi),
                               tuple(tuple(r) for r in psi),
                               m.row_twists, m.col_twists)


# ---------------------------------------------------------------------------
# modules from factorizations
# ---------------------------------------------------------------------------


def cokernel_module(m: MatrixFactorization) -> GradedModulePresentation:
    """coker(phi) over S/(f): generators at the row twists, relations = phi."""
    return GradedModulePresentation(m.quotient_ring(), m.row_twists, m.phi)


def _psi_cokernel(m: MatrixFactorization) -> GradedModulePresentation:
    return GradedModulePresentation(m.quotient_ring(), m.col_twists, m.psi)


def periodic_resolution_check(m: MatrixFactorization, steps: int = 4,
                              degree_cutoff: int = 10) -> Report:
    """Certify the 2-periodic free resolution of coker(phi) degreewise.

    The resolution ... -> F(-d) --psi--> F1 --phi--> F0 -> coker -> 0 repeats
    (phi, psi) with all twists dropped by deg f each period.  Exactness at
    every junction is checked in each degree <= cutoff by ranks, where
    rank(map)_d = dim(target)_d - HF(coker map, d) comes from exact
    standard-monomial counts.
    """
    report = Report(kind="periodic-resolution")
    base = verify_mf(m)
    if not base.ok:
        bad = base.first_failure()
        report.add("complex/step1", False,
                   f"not a matrix factorization: {bad.name} ({bad.detail})")
        return report
    report.add("complex/all-steps", True,
               "phi*psi = psi*phi = f*I forces every composite to vanish mod f")

    R = m.quotient_ring()
    d = m.degree
    coker_phi = cokernel_module(m)
    coker_psi = _psi_cokernel(m)

    def free_dim(gen_twists, shift, deg):
        return sum(ring_hilbert_function(R, deg - (t + shift)) for t in gen_twists)

    def rank_phi(deg):  # rank of phi : F1 -> F0 in degree `deg`
        return free_dim(m.row_twists, 0, deg) - hilbert_function(coker_phi, deg)

    def rank_psi(deg):
        return free_dim(m.col_twists, 0, deg) - hilbert_function(coker_psi, deg)

    lo = min((0, *m.row_twists, *m.col_twists))
    for k in range(1, steps + 1):
        if k % 2 == 1:
            shift = (k - 1) // 2 * d
            fk_twists, fk_shift = m.col_twists, shift
            rank_k = lambda deg, s=shift: rank_phi(deg - s)
            rank_next = lambda deg, s=shift: rank_psi(deg - s)
        else:
            shift = (k - 2) // 2 * d
            fk_twists, fk_shift = m.row_twists, shift + d
            rank_k = lambda deg, s=shift: rank_psi(deg - s)
            rank_next = lambda deg, s=shift + d: rank_phi(deg - s)
        ok = True
        detail = "exact"
        for deg in range(lo, degree_cutoff + 1):
            dim_fk = free_dim(fk_twists, fk_shift, deg)
            if rank_k(deg) + rank_next(deg) != dim_fk:
                ok = False
                detail = (f"degree {deg}: ranks {rank_k(deg)}+{rank_next(deg)}"
                          f" != dim {dim_fk}")
                break
        report.add(f"exact/step{k}", ok, detail)
    return report
