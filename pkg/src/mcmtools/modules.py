"""Graded module presentations over catalog rings, and bounded exactness certificates.

A module M over R = S/I is presented by generator degrees and a matrix of
homogeneous relations (columns are relations, entries over the ambient S; the
defining ideal is folded in automatically wherever normal forms or Hilbert
functions are computed).

Exactness of a short sequence is certified degreewise up to a cutoff, from
exact data only: symbolic zero-composition plus Hilbert functions of the
presented modules and of the cokernels of the two maps.  For a degree-0 map
f: A -> E the rank of f in degree d equals HF(E,d) - HF(coker f, d), so
injectivity (rank = HF(A,d)) and surjectivity (coker vanishes) reduce to
standard-monomial counts; no floating point and no modular shortcuts.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groebner import ModuleGB, module_syzygies, vec_degree, vec_is_zero
from .linalg import nullspace
from .report import CheckRecord, Report
from .rings import GradedRing, NotHomogeneousError, RingMismatchError


@dataclass(frozen=True)
class GradedModulePresentation:
    """Generator degrees plus a homogeneous relation matrix (columns = relations)."""

    ring: GradedRing
    gen_degrees: tuple
    relations: tuple  # rows; relations[i][j] = coefficient of gen i in relation j

    def __post_init__(self):
        amb = self.ring.ambient
        if len(self.relations) != len(self.gen_degrees):
            raise ValueError("need one relation row per generator")
        widths = {len(row) for row in self.relations}
        if len(widths) > 1:
            raise ValueError("ragged relation matrix")
        for j in range(self.n_relations):
            degs = set()
            for i, row in enumerate(self.relations):
                p = row[j]
                if p.ring != amb:
                    raise RingMismatchError("relation entry over a different ring")
                if not p.is_zero():
                    degs.add(p.homogeneous_degree() + self.gen_degrees[i])
            if len(degs) > 1:
                raise NotHomogeneousError(f"relation column {j} is not homogeneous")

    # -- basic data ------------------------------------------------------
    @property
    def rank(self):
        return len(self.gen_degrees)

    @property
    def n_relations(self):
        return len(self.relations[0]) if self.relations else 0

    def relation_columns(self):
        return [tuple(self.relations[i][j] for i in range(self.rank))
                for j in range(self.n_relations)]

    def relation_degrees(self):
        out = []
        for col in self.relation_columns():
            out.append(vec_degree(col, self.gen_degrees))
        return out

    def twist(self, n: int) -> "GradedModulePresentation":
        """M(n): degree-d piece of the twist is the degree-(n+d) piece of M."""
        return GradedModulePresentation(
            self.ring, tuple(r - n for r in self.gen_degrees), self.relations)

    def direct_sum(self, other: "GradedModulePresentation"):
        if other.ring != self.ring:
            raise RingMismatchError("direct sum over different rings")
        amb = self.ring.ambient
        zero = amb.zero()
        rows = []
        for i in range(self.rank):
            rows.append(tuple(self.relations[i]) + (zero,) * other.n_relations)
        for i in range(other.rank):
            rows.append((zero,) * self.n_relations + tuple(other.relations[i]))
        return GradedModulePresentation(
            self.ring, self.gen_degrees + other.gen_degrees, tuple(rows))


def free_module(ring: GradedRing, degrees) -> GradedModulePresentation:
    degrees = tuple(degrees)
    return GradedModulePresentation(ring, degrees, tuple(() for _ in degrees))


def zero_module(ring: GradedRing) -> GradedModulePresentation:
    return GradedModulePresentation(ring, (), ())


@lru_cache(maxsize=None)
def _relations_gb(M: GradedModulePresentation) -> ModuleGB:
    """Groebner basis of (relation columns + modulus * e_i) inside S^rank."""
    amb = M.ring.ambient
    zero = amb.zero()
    vectors = [col for col in M.relation_columns() if not vec_is_zero(col)]
    for g in M.ring.modulus:
        for i in range(M.rank):
            vectors.append(tuple(g if k == i else zero for k in range(M.rank)))
    return ModuleGB(amb, M.rank, vectors)


def hilbert_function(M: GradedModulePresentation, d: int) -> int:
    """Exact dim_k of the degree-d piece, counted by standard monomials."""
    if M.rank == 0:
        return 0
    return len(_relations_gb(M).std_monomials(M.gen_degrees, d))


def element_normal_form(M: GradedModulePresentation, vec):
    return _relations_gb(M).normal_form(vec)


def element_is_zero(M: GradedModulePresentation, vec):
    return _relations_gb(M).contains(vec)


def minimal_generator_indices(M: GradedModulePresentation):
    """Indices of a subset of the generators that minimally generates M.

    Graded Nakayama: a generator is redundant exactly when some relation
    column expresses it through the others with a unit (degree-0) coefficient.
    """
    field = M.ring.field
    live = list(range(M.rank))
    cols = [dict(enumerate(col)) for col in M.relation_columns()]
    changed = True
    while changed:
        changed = False
        for col in cols:
            target = None
            for i in live:
                p = col.get(i)
                if p is not None and not p.is_zero() and p.degree() == 0:
                    target = i
                    break
            if target is None:
                continue
            unit = col[target].constant_coefficient()
            inv = field.invert(unit)
            live.remove(target)
            expr = {i: col[i].scale(field.neg(inv))
                    for i in live if i in col and not col[i].is_zero()}
            for other in cols:
                if other is col:
                    continue
                coeff = other.get(target)
                if coeff is None or coeff.is_zero():
                    continue
                for i, p in expr.items():
                    prev = other.get(i)
                    other[i] = coeff * p if prev is None else prev + coeff * p
                other[target] = coeff.ring.zero()
            col.clear()
            changed = True
            break
    return sorted(live)


# ---------------------------------------------------------------------------
# submodules and syzygies
# ---------------------------------------------------------------------------


def present_submodule(ring: GradedRing, ambient_degrees, vectors,
                      minimalize=True):
    """Presentation of the submodule of O(-d_1) + .. + O(-d_r) spanned by `vectors`.

    Returns (presentation, kept_vectors); kept_vectors[i] is the element of
    the ambient free module realizing generator i.  Relations are the
    quotient-ring syzygies of the kept vectors, computed over S with the
    defining ideal folded in and projected back.
    """
    amb = ring.ambient
    ambient_degrees = tuple(ambient_degrees)
    rank = len(ambient_degrees)
    zero = amb.zero()
    candidates = [v for v in vectors if not vec_is_zero(v)]
    candidates.sort(key=lambda v: vec_degree(v, ambient_degrees))

    kept = []
    if minimalize:
        modulus_vecs = [tuple(g if k == i else zero for k in range(rank))
                        for g in ring.modulus for i in range(rank)]
        for v in candidates:
            gb = ModuleGB(amb, rank, kept + modulus_vecs)
            if not gb.contains(v):
                kept.append(v)
    else:
        kept = candidates

    if not kept:
        presentation = zero_module(ring)
        return presentation, []

    gen_degrees = tuple(vec_degree(v, ambient_degrees) for v in kept)
    family = list(kept)
    for g in ring.modulus:
        for i in range(rank):
            family.append(tuple(g if k == i else zero for k in range(rank)))
    syz = module_syzygies(family, amb, rank)

    s = len(kept)
    from .groebner import ring_normal_form
    columns = []
    seen = set()
    for rel in syz:
        col = tuple(ring_normal_form(ring, rel[i]) for i in range(s))
        if all(p.is_zero() for p in col):
            continue
        if col in seen:
            continue
        seen.add(col)
        columns.append(col)
    columns.sort(key=lambda col: vec_degree(col, gen_degrees))

    rows = tuple(tuple(col[i] for col in columns) for i in range(s))
    presentation = GradedModulePresentation(ring, gen_degrees, rows)
    return presentation, kept


def ideal_presentation(ring: GradedRing, generators, minimalize=True):
    """Present the ideal (g_1..g_k) of R as a graded R-module."""
    vectors = [(g,) for g in generators]
    return present_submodule(ring, (0,), vectors, minimalize=minimalize)[0]


def syzygy_module(M: GradedModulePresentation) -> GradedModulePresentation:
    """First syzygy: the kernel of the free cover on M's generators.

    That kernel is the submodule of the cover spanned by M's relation
    columns; it is re-presented with minimal generators.
    """
    presentation, _ = present_submodule(M.ring, M.gen_degrees,
                                        M.relation_columns())
    return presentation


# ---------------------------------------------------------------------------
# maps between presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradedModuleMap:
    """A graded map: column j is the image of source generator j in the target."""

    source: GradedModulePresentation
    target: GradedModulePresentation
    matrix: tuple  # rows indexed by target generators
    shift: int = 0

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatchError("map between modules over different rings")
        if len(self.matrix) != self.target.rank:
            raise ValueError("need one matrix row per target generator")
        for row in self.matrix:
            if len(row) != self.source.rank:
                raise ValueError("need one matrix column per source generator")
        for j in range(self.source.rank):
            want = self.source.gen_degrees[j] + self.shift
            for i in range(self.target.rank):
                p = self.matrix[i][j]
                if not p.is_zero() and \
                        p.homogeneous_degree() + self.target.gen_degrees[i] != want:
                    raise NotHomogeneousError(
                        f"map entry ({i},{j}) breaks the grading")

    def column(self, j):
        return tuple(self.matrix[i][j] for i in range(self.target.rank))

    def apply(self, vec):
        """Image of an element of the source free cover."""
        amb = self.source.ring.ambient
        out = [amb.zero()] * self.target.rank
        for j, coeff in enumerate(vec):
            if coeff.is_zero():
                continue
            for i in range(self.target.rank):
                out[i] = out[i] + coeff * self.matrix[i][j]
        return tuple(out)

    def is_well_defined(self):
        """True when every source relation maps into the target's relations."""
        return all(element_is_zero(self.target, self.apply(col))
                   for col in self.source.relation_columns())

    def compose(self, earlier: "GradedModuleMap") -> "GradedModuleMap":
        """self o earlier."""
        if earlier.target is not self.source and earlier.target != self.source:
            raise RingMismatchError("maps are not composable")
        cols = [self.apply(earlier.column(j)) for j in range(earlier.source.rank)]
        rows = tuple(tuple(col[i] for col in cols)
                     for i in range(self.target.rank))
        return GradedModuleMap(earlier.source, self.target, rows,
                               self.shift + earlier.shift)


def cokernel_of_map(f: GradedModuleMap) -> GradedModulePresentation:
    """target / image(f), presented on the target's generators."""
    cols = [f.column(j) for j in range(f.source.rank)]
    rows = tuple(tuple(f.target.relations[i]) + tuple(col[i] for col in cols)
                 for i in range(f.target.rank))
    return GradedModulePresentation(f.target.ring, f.target.gen_degrees, rows)


def image_rank_in_degree(f: GradedModuleMap, d: int) -> int:
    """dim_k of (image of f)_d, via HF(target) - HF(coker f)."""
    return hilbert_function(f.target, d) - hilbert_function(cokernel_of_map(f), d)


def hom_space(A: GradedModulePresentation, B: GradedModulePresentation,
              shift: int = 0):
    """Basis of the space of graded maps A -> B of degree `shift`.

    Unknowns are coordinates of the generator images over standard-monomial
    bases of B; well-definedness on each relation of A gives the linear system.
    """
    amb = A.ring.ambient
    field = amb.field
    gbB = _relations_gb(B)

    unknowns = []  # (source gen index, (pos, mono))
    for j in range(A.rank):
        d = A.gen_degrees[j] + shift
        for pm in gbB.std_monomials(B.gen_degrees, d):
            unknowns.append((j, pm))
    if not unknowns:
        return []

    rows = []
    for col in A.relation_columns():
        cdeg = vec_degree(col, A.gen_degrees)
        if cdeg is None:
            continue
        target_basis = gbB.std_monomials(B.gen_degrees, cdeg + shift)
        index = {pm: k for k, pm in enumerate(target_basis)}
        eqs = [[field.zero] * len(unknowns) for _ in target_basis]
        for u, (j, (pos, mono)) in enumerate(unknowns):
            coeff = col[j]
            if coeff.is_zero():
                continue
            moved = tuple(coeff.mul_term(mono, field.one) if k == pos else amb.zero()
                          for k in range(B.rank))
            nf = gbB.normal_form(moved)
            for p, poly in enumerate(nf):
                for m, c in poly.terms:
                    eqs[index[(p, m)]][u] = field.add(eqs[index[(p, m)]][u], c)
        rows.extend(eqs)

    basis = nullspace(field, rows, ncols=len(unknowns)) if rows else \
        [[field.one if i == k else field.zero for i in range(len(unknowns))]
         for k in range(len(unknowns))]

    out = []
    for v in basis:
        cols = [[amb.zero() for _ in range(B.rank)] for _ in range(A.rank)]
        for u, (j, (pos, mono)) in enumerate(unknowns):
            if field.is_zero(v[u]):
                continue
            cols[j][pos] = cols[j][pos] + amb.monomial(mono, v[u])
        rows_m = tuple(tuple(cols[j][i] for j in range(A.rank))
                       for i in range(B.rank))
        out.append(GradedModuleMap(A, B, rows_m, shift))
    return out


# ---------------------------------------------------------------------------
# bounded exactness certificates
# ---------------------------------------------------------------------------


def _degree_range(cutoff, *modules):
    lo = 0
    for M in modules:
        if M.gen_degrees:
            lo = min(lo, min(M.gen_degrees))
    return range(lo, cutoff + 1)


def is_sequence_exact(first: GradedModuleMap, second: GradedModuleMap,
                      cutoff: int = 12) -> Report:
    """Certify 0 -> A -> E -> B -> 0 in every degree <= cutoff.

    Checks, per degree: composition zero, injectivity of `first`,
    surjectivity of `second`, and HF(E) = HF(A) + HF(B).  This is a bounded
    certificate, not a proof for all degrees.
    """
    report = Report(kind="exact-sequence")
    A, E, B = first.source, first.target, second.target
    if second.source != E:
        raise RingMismatchError("maps do not share the middle module")

    report.add("well-defined/first", first.is_well_defined(), "relations map to zero")
    report.add("well-defined/second", second.is_well_defined(), "relations map to zero")

    composite = second.compose(first)
    comp_zero = all(element_is_zero(B, composite.column(j))
                    for j in range(A.rank))

    coker_first = cokernel_of_map(first)
    coker_second = cokernel_of_map(second)

    for d in _degree_range(cutoff, A, E, B):
        ha, he, hb = (hilbert_function(A, d), hilbert_function(E, d),
                      hilbert_function(B, d))
        rank_first = he - hilbert_function(coker_first, d)
        surj = hilbert_function(coker_second, d) == 0
        report.add(f"d={d}/composition", comp_zero, "second o first = 0")
        report.add(f"d={d}/injective", rank_first == ha,
                   f"rank {rank_first} vs dim {ha}")
        report.add(f"d={d}/surjective", surj, f"coker dim {hilbert_function(coker_second, d)}")
        report.add(f"d={d}/additivity", he == ha + hb,
                   f"{he} = {ha} + {hb}" if he == ha + hb else f"{he} != {ha} + {hb}")
    return report


def check_extension(E: GradedModulePresentation, sub: GradedModulePresentation,
                    quot: GradedModulePresentation,
                    embedding: GradedModuleMap | None = None,
                    quotient_cover=None, cutoff: int = 12,
                    search_shift: int = 0) -> Report:
    """Certify that E is an extension of `quot` by `sub`.

    The embedding sub -> E may be supplied; otherwise a degree-`search_shift`
    hom-space search looks for an injective one (failure to find one is
    reported, not treated as refutation).  The induced quotient is certified
    against `quot` by Hilbert-function equality through the cutoff plus an
    explicit surjection from quot's free cover.
    """
    report = Report(kind="extension")
    if embedding is None:
        embedding = _find_injective_hom(sub, E, search_shift, cutoff)
        if embedding is None:
            report.add("embedding/found", False,
                       "no injective map found within search bounds")
            return report
        report.add("embedding/found", True, "found by hom-space search")

    report.add("embedding/well-defined", embedding.is_well_defined(),
               "relations map to zero")

    Q = cokernel_of_map(embedding)
    coker_emb_hf = lambda d: hilbert_function(Q, d)
    for d in _degree_range(cutoff, sub, E, quot):
        hs = hilbert_function(sub, d)
        rank_emb = hilbert_function(E, d) - coker_emb_hf(d)
        report.add(f"d={d}/injective", rank_emb == hs,
                   f"rank {rank_emb} vs dim {hs}")
        hq = hilbert_function(quot, d)
        report.add(f"d={d}/quotient-HF", coker_emb_hf(d) == hq,
                   f"{coker_emb_hf(d)} vs {hq}")

    cover = _quotient_cover(Q, quot, quotient_cover)
    if cover is None:
        report.add("quotient/cover", False, "no surjection from quot's free cover found")
        return report
    coker_cover = cokernel_of_map(cover)
    surj = all(hilbert_function(coker_cover, d) == 0
               for d in _degree_range(cutoff, quot, Q))
    report.add("quotient/cover", surj,
               "free cover of the quotient surjects onto E/sub")
    return report


def _find_injective_hom(A, E, shift, cutoff):
    basis = hom_space(A, E, shift)
    field = A.ring.field
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            rows = tuple(tuple(a + b for a, b in zip(ra, rb))
                         for ra, rb in zip(basis[i].matrix, basis[j].matrix))
            candidates.append(GradedModuleMap(A, E, rows, shift))
    for f in candidates:
        coker = cokernel_of_map(f)
        ok = all(hilbert_function(E, d) - hilbert_function(coker, d)
                 == hilbert_function(A, d)
                 for d in _degree_range(cutoff, A, E))
        if ok:
            return f
    return None


def _quotient_cover(Q, quot, explicit):
    """A map from quot's free cover onto Q; columns may be given explicitly."""
    amb = Q.ring.ambient
    cover_source = free_module(Q.ring, quot.gen_degrees)
    if explicit is not None:
        return GradedModuleMap(cover_source, Q, explicit)
    live = minimal_generator_indices(Q)
    need = sorted((Q.gen_degrees[i], i) for i in live)
    have = sorted((d, j) for j, d in enumerate(quot.gen_degrees))
    if [d for d, _ in need] != [d for d, _ in have][:len(need)]:
        if len(need) > len(have):
            return None
        match = {}
        pool = list(have)
        for d, i in need:
            hit = next((k for k, (dd, _) in enumerate(pool) if dd == d), None)
            if hit is None:
                return None
            match[pool.pop(hit)[1]] = i
    else:
        match = {have[k][1]: need[k][1] for k in range(len(need))}
    zero = amb.zero()
    rows = [[zero] * quot.rank for _ in range(Q.rank)]
    for j, i in match.items():
        rows[i][j] = amb.one()
    return GradedModuleMap(cover_source, Q, tuple(tuple(r) for r in rows))
