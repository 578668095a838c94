"""Groebner bases for submodules of free modules over a graded polynomial ring.

Elements of a rank-r free module S^r are handled as tuples of r Polynomials;
internally the algorithms use flat dicts keyed by (position, monomial).  The
module term order is term-over-position: monomials compare in the ring's
order, ties broken by lower position.

Besides reduced bases and normal forms this provides syzygy generators via
tracked Buchberger runs (every zero reduction of an S-pair is a syzygy of the
run basis; transforming back through the bookkeeping matrices gives
generators of the syzygy module of the input vectors).
"""
from __future__ import annotations

import heapq
from functools import lru_cache

from .rings import (NotHomogeneousError, RingMismatchError, monomial_div,
                    monomial_divides, monomial_lcm, monomial_mul)

# ---------------------------------------------------------------------------
# module element helpers (tuple-of-Polynomial <-> flat dict)
# ---------------------------------------------------------------------------


def vec_to_dict(vec):
    out = {}
    for pos, p in enumerate(vec):
        for mono, c in p.terms:
            out[(pos, mono)] = c
    return out


def dict_to_vec(d, ring, rank):
    polys = [[] for _ in range(rank)]
    for (pos, mono), c in d.items():
        polys[pos].append((mono, c))
    return tuple(ring.from_terms(terms) for terms in polys)


def vec_is_zero(vec):
    return all(p.is_zero() for p in vec)


def vec_degree(vec, gen_degrees):
    """Homogeneous degree of a module element; None if zero."""
    degs = set()
    for pos, p in enumerate(vec):
        if not p.is_zero():
            degs.add(p.homogeneous_degree() + gen_degrees[pos])
    if not degs:
        return None
    if len(degs) > 1:
        raise NotHomogeneousError(f"module element not homogeneous: {vec}")
    return degs.pop()


def _lead(d, key):
    """Leading (pos, mono) of a nonzero dict element under term-over-position."""
    return max(d, key=lambda pm: (key(pm[1]), -pm[0]))


def _sub_scaled(d, g, mono, coeff, field):
    """In place: d -= coeff * x^mono * g."""
    for (pos, m), c in g.items():
        k = (pos, monomial_mul(m, mono))
        prev = d.get(k)
        val = field.sub(prev, field.mul(coeff, c)) if prev is not None \
            else field.neg(field.mul(coeff, c))
        if field.is_zero(val):
            d.pop(k, None)
        else:
            d[k] = val


def _scale(d, c, field):
    return {k: field.mul(c, v) for k, v in d.items()}


def _track_sub_scaled(t, tg, mono, coeff, field):
    """In place on a track dict keyed by (src_index, monomial)."""
    for (idx, m), c in tg.items():
        k = (idx, monomial_mul(m, mono))
        prev = t.get(k)
        val = field.sub(prev, field.mul(coeff, c)) if prev is not None \
            else field.neg(field.mul(coeff, c))
        if field.is_zero(val):
            t.pop(k, None)
        else:
            t[k] = val


def _divide(d, basis, leads, key, field, track=None, basis_tracks=None):
    """Full reduction of d by basis; returns the remainder dict.

    basis entries are dicts with cached monic leads in `leads`. When tracking,
    `track` is updated so that (input) = (remainder) + combination recorded in it.
    """
    d = dict(d)
    rem = {}
    while d:
        pos, mono = _lead(d, key)
        coeff = d[(pos, mono)]
        for i, (gpos, gmono) in enumerate(leads):
            if gpos == pos and monomial_divides(gmono, mono):
                q = monomial_div(mono, gmono)
                _sub_scaled(d, basis[i], q, coeff, field)
                if track is not None:
                    _track_sub_scaled(track, basis_tracks[i], q, coeff, field)
                break
        else:
            rem[(pos, mono)] = coeff
            del d[(pos, mono)]
    return rem


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------


def _buchberger(vectors, ring, track=False):
    """Run Buchberger on nonzero input dicts; return (basis, leads, tracks, syzygies).

    Every basis element is monic.  The product criterion is not used: it is
    invalid for module elements.  With track=True each basis element carries
    its expression in the inputs and each zero reduction emits a syzygy.
    """
    field = ring.field
    key = ring.key()
    basis, leads, tracks, syzygies = [], [], [], []

    def insert(d, t):
        lead = _lead(d, key)
        lc = d[lead]
        inv = field.invert(lc)
        d = _scale(d, inv, field)
        t = _scale(t, inv, field) if t is not None else None
        idx = len(basis)
        for j in range(idx):
            if leads[j][0] == lead[0]:
                lcm = monomial_lcm(leads[j][1], lead[1])
                heapq.heappush(pairs, (ring.monomial_degree(lcm), j, idx))
        basis.append(d)
        leads.append(lead)
        tracks.append(t)

    pairs = []
    for i, d in enumerate(vectors):
        t = {(i, (0,) * ring.nvars): field.one} if track else None
        if not d:
            if track:
                syzygies.append(t)
            continue
        red_t = dict(t) if track else None
        rem = _divide(d, basis, leads, key, field, red_t, tracks)
        if rem:
            insert(rem, red_t)
        elif track:
            if red_t:
                syzygies.append(red_t)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        lcm = monomial_lcm(leads[i][1], leads[j][1])
        qi, qj = monomial_div(lcm, leads[i][1]), monomial_div(lcm, leads[j][1])
        d = {}
        _sub_scaled(d, basis[i], qi, field.neg(field.one), field)
        _sub_scaled(d, basis[j], qj, field.one, field)
        t = None
        if track:
            t = {}
            _track_sub_scaled(t, tracks[i], qi, field.neg(field.one), field)
            _track_sub_scaled(t, tracks[j], qj, field.one, field)
        rem = _divide(d, basis, leads, key, field, t, tracks)
        if rem:
            insert(rem, t)
        elif track and t:
            syzygies.append(t)

    return basis, leads, tracks, syzygies


def _interreduce(basis, leads, ring):
    """Reduce a Groebner basis to the unique reduced monic basis."""
    field, key = ring.field, ring.key()
    keep = []
    for i, lead in enumerate(leads):
        if not any(j != i and leads[j][0] == lead[0]
                   and monomial_divides(leads[j][1], lead[1])
                   and (leads[j] != lead or j < i)
                   for j in range(len(leads))):
            keep.append(i)
    reduced = []
    kept = [basis[i] for i in keep]
    kept_leads = [leads[i] for i in keep]
    for i in range(len(kept)):
        others = kept[:i] + kept[i + 1:]
        other_leads = kept_leads[:i] + kept_leads[i + 1:]
        rem = _divide(kept[i], others, other_leads, key, field)
        if rem:
            lead = _lead(rem, key)
            rem = _scale(rem, field.invert(rem[lead]), field)
            reduced.append((rem, lead))
    reduced.sort(key=lambda dl: (key(dl[1][1]), -dl[1][0]))
    return [d for d, _ in reduced], [l for _, l in reduced]


class ModuleGB:
    """A reduced Groebner basis of a submodule of S^rank, ready for normal forms."""

    def __init__(self, ring, rank, vectors):
        self.ring = ring
        self.rank = rank
        dicts = [vec_to_dict(v) for v in vectors]
        basis, leads, _, _ = _buchberger([d for d in dicts if d], ring)
        self.basis, self.leads = _interreduce(basis, leads, ring)
        self._std_cache = {}

    @property
    def elements(self):
        return [dict_to_vec(d, self.ring, self.rank) for d in self.basis]

    def normal_form_dict(self, d):
        return _divide(d, self.basis, self.leads, self.ring.key(), self.ring.field)

    def normal_form(self, vec):
        rem = self.normal_form_dict(vec_to_dict(vec))
        return dict_to_vec(rem, self.ring, self.rank)

    def contains(self, vec):
        return not self.normal_form_dict(vec_to_dict(vec))

    def std_monomials(self, gen_degrees, d):
        """Standard monomials (pos, mono) of total degree d, a basis of the quotient."""
        if d in self._std_cache:
            return self._std_cache[d]
        out = []
        for pos in range(self.rank):
            pos_leads = [m for (p, m) in self.leads if p == pos]
            for mono in self.ring.monomials_of_degree(d - gen_degrees[pos]):
                if not any(monomial_divides(lm, mono) for lm in pos_leads):
                    out.append((pos, mono))
        self._std_cache[d] = out
        return out


# ---------------------------------------------------------------------------
# syzygies of a family of module elements
# ---------------------------------------------------------------------------


def module_syzygies(vectors, ring, rank):
    """Generators of the syzygy module of `vectors` inside S^len(vectors).

    Tracked Buchberger: zero reductions give syzygies of the run basis, and
    the columns of (I - X Y) recover the relations hidden by redundant inputs
    (X expresses the run basis in the inputs, Y the inputs in the run basis).
    """
    field, key = ring.field, ring.key()
    s = len(vectors)
    dicts = [vec_to_dict(v) for v in vectors]
    basis, leads, tracks, raw_syz = _buchberger(dicts, ring, track=True)

    syzygies = [dict(t) for t in raw_syz]
    # columns of I - X*Y, where v_i = sum_k y_ki g_k from division by the run basis
    for i, d in enumerate(dicts):
        ytrack = {}
        rem = _divide(d, basis, leads, key, field, ytrack, tracks)
        assert not rem, "input must reduce to zero by its own Groebner basis"
        # ytrack now holds -(expression of v_i through the inputs via tracks)
        k = (i, (0,) * ring.nvars)
        prev = ytrack.get(k)
        val = field.add(prev, field.one) if prev is not None else field.one
        if field.is_zero(val):
            ytrack.pop(k, None)
        else:
            ytrack[k] = val
        if ytrack:
            syzygies.append(ytrack)

    out = []
    seen = set()
    for t in syzygies:
        vec = dict_to_vec(t, ring, s)
        if not vec_is_zero(vec):
            canon = tuple(p.terms for p in vec)
            if canon not in seen:
                seen.add(canon)
                out.append(vec)
    return out


# ---------------------------------------------------------------------------
# ideal-level interface (rank 1)
# ---------------------------------------------------------------------------


def groebner_basis(generators, ring=None):
    """Reduced monic Groebner basis of the ideal spanned by homogeneous generators.

    Idempotent: running it on its own output returns the same list.
    """
    generators = list(generators)
    if not generators:
        return []
    if ring is None:
        ring = generators[0].ring
    for g in generators:
        if g.ring != ring:
            raise RingMismatchError("generators over different rings")
        if not g.is_homogeneous():
            raise NotHomogeneousError(f"generator not homogeneous: {g!r}")
    gb = ModuleGB(ring, 1, [(g,) for g in generators if not g.is_zero()])
    return [v[0] for v in gb.elements]


def normal_form(p, basis):
    """Remainder of p under division by a Groebner basis of polynomials."""
    if not basis:
        return p
    ring = p.ring
    for g in basis:
        if g.ring != ring:
            raise RingMismatchError("basis over a different ring")
    gb = ModuleGB.__new__(ModuleGB)
    gb.ring, gb.rank = ring, 1
    gb.basis = []
    gb.leads = []
    field, key = ring.field, ring.key()
    for g in basis:
        if g.is_zero():
            continue
        d = vec_to_dict((g,))
        lead = _lead(d, key)
        gb.basis.append(_scale(d, field.invert(d[lead]), field))
        gb.leads.append(lead)
    gb._std_cache = {}
    return gb.normal_form((p,))[0]


@lru_cache(maxsize=None)
def _ring_gb(graded_ring):
    return ModuleGB(graded_ring.ambient, 1, [(g,) for g in graded_ring.modulus])


def ring_hilbert_function(graded_ring, d):
    """dim_k of the degree-d piece of ambient/(modulus)."""
    if d < 0:
        return 0
    return len(_ring_gb(graded_ring).std_monomials((0,), d))


def ring_normal_form(graded_ring, p):
    """Canonical representative of p in the quotient ring."""
    return _ring_gb(graded_ring).normal_form((p,))[0]
