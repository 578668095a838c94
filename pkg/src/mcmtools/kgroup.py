"""Class-level invariants: first Chern classes, the twist-collapsed Grothendieck
group G', condition (C) membership tests, and the Veronese biliaison invariant.

Each geometric model carries a fixed divisor-class basis, the hyperplane class
in that basis, the first Chern classes of its rank-1 generators, and relation
templates named after the catalog's short exact sequences.  Relations enter
the group presentation only once the named sequence has been certified by the
module machinery; lattice membership is decided by Smith normal form with an
explicit integer witness.
"""
from __future__ import annotations

import re
from dataclasses import dataclass


class UnknownLabelError(ValueError):
    pass


class OrientabilityError(ValueError):
    """Input vector is not orientable (precondition of condition (C) and m)."""


# ---------------------------------------------------------------------------
# Smith normal form over the integers
# ---------------------------------------------------------------------------


def smith_normal_form(A):
    """(U, D, V) with U*A*V = D diagonal, divisibility chain, U and V unimodular."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row_i += q * row_j
        D[i] = [x + q * y for x, y in zip(D[i], D[j])]
        U[i] = [x + q * y for x, y in zip(U[i], U[j])]

    def add_col(i, j, q):  # col_i += q * col_j
        for row in D:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    for k in range(min(m, n)):
        while True:
            pivot = None
            for i in range(k, m):
                for j in range(k, n):
                    if D[i][j] != 0 and (pivot is None or
                                         abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (k, k):
                if pivot[0] != k:
                    swap_rows(k, pivot[0])
                if pivot[1] != k:
                    swap_cols(k, pivot[1])
            dirty = False
            for i in range(k + 1, m):
                if D[i][k] != 0:
                    q = -(D[i][k] // D[k][k])
                    add_row(i, k, q)
                    if D[i][k] != 0:
                        dirty = True
            for j in range(k + 1, n):
                if D[k][j] != 0:
                    q = -(D[k][j] // D[k][k])
                    add_col(j, k, q)
                    if D[k][j] != 0:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if D[i][j] % D[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(k, offender, 1)
        if D[k][k] < 0:
            D[k] = [-x for x in D[k]]
            U[k] = [-x for x in U[k]]
    return U, D, V


def solve_integer(A, b):
    """An integer solution x of A x = b, or None; A given as list of rows."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [0] * n
    U, D, V = smith_normal_form(A)
    ub = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(min(m, n)):
        d = D[i][i]
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    for i in range(min(m, n), m):
        if ub[i] != 0:
            return None
    return [sum(V[i][k] * y[k] for k in range(n)) for i in range(n)]


# ---------------------------------------------------------------------------
# model class data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassModel:
    """Divisor-class data for one catalog model."""

    name: str
    basis: tuple
    hyperplane: tuple
    generator_classes: dict  # rank-1 generator label -> c1 coefficients
    relation_templates: tuple  # (sequence name, {label: integer coefficient})

    @property
    def generators(self):
        return ("O",) + tuple(self.generator_classes)


CLASS_MODELS = {
    "quadric-surface": ClassModel(
        "quadric-surface", ("L", "M"), (1, 1),
        {"I_L": (-1, 0), "I_M": (0, -1)},
        (("quadric-surface-C", {"O": -2, "I_L": 1, "I_M": 1}),)),
    "cubic-scroll": ClassModel(
        "cubic-scroll", ("H", "F"), (1, 0),
        {"I_F": (0, -1), "I_H-F": (-1, 1), "I_H-2F": (-1, 2)},
        (("scroll-2", {"O": -2, "I_F": 1, "I_H-F": 1}),
         ("scroll-3", {"O": -1, "I_F": 1, "I_H-F": -1, "I_H-2F": 1}))),
    "veronese": ClassModel(
        "veronese", ("C",), (2,),
        {"I_C": (-1,)},
        ()),
    "quadric-cone-p3": ClassModel(
        "quadric-cone-p3", ("L",), (2,),
        {"I_L": (-1,)},
        (("cone-C", {"O": -2, "I_L": 2}),)),
    "quadric-threefold-cone": ClassModel(
        "quadric-threefold-cone", ("D", "E"), (1, 1),
        {"I_D": (-1, 0), "I_E": (0, -1)},
        (("threefold-C", {"O": -2, "I_D": 1, "I_E": 1}),)),
}


def class_model(name: str) -> ClassModel:
    try:
        return CLASS_MODELS[name]
    except KeyError:
        raise UnknownLabelError(f"unknown model {name!r}") from None


# ---------------------------------------------------------------------------
# sheaf class vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SheafClassVector:
    """A multiset of (rank-1 generator label, twist) pairs; 'O' is the structure sheaf."""

    entries: tuple  # ((label, twist), ...)

    @property
    def rank(self):
        return len(self.entries)

    def count(self, label):
        return sum(1 for lab, _ in self.entries if lab == label)

    def append(self, label, twist=0):
        return SheafClassVector(self.entries + ((label, twist),))

    def concat(self, other):
        return SheafClassVector(self.entries + other.entries)

    def twist_all(self, n):
        return SheafClassVector(tuple((lab, tw + n) for lab, tw in self.entries))


def class_vector(*entries) -> SheafClassVector:
    """class_vector("I_C", ("O", -1), ("I_F", 2)) - bare labels mean twist 0."""
    out = []
    for e in entries:
        if isinstance(e, str):
            out.append((e, 0))
        else:
            out.append((e[0], int(e[1])))
    return SheafClassVector(tuple(out))


_ENTRY = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?([A-Za-z][A-Za-z0-9_-]*)"
                    r"\s*(?:\(\s*(-?\d+)\s*\))?\s*$")


def parse_class_vector(text: str) -> SheafClassVector:
    """Parse CLI syntax like '2*I_C + O(-1) + I_F(2)'."""
    entries = []
    for chunk in text.split("+"):
        m = _ENTRY.match(chunk)
        if not m:
            raise UnknownLabelError(f"bad class-vector entry: {chunk.strip()!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        twist = int(m.group(3)) if m.group(3) else 0
        entries.extend([(m.group(2), twist)] * mult)
    return SheafClassVector(tuple(entries))


def format_class_vector(v: SheafClassVector) -> str:
    if not v.entries:
        return "0"
    parts = []
    for lab, tw in v.entries:
        parts.append(f"{lab}({tw})" if tw else lab)
    return " + ".join(parts)


def c1_of_vector(model: ClassModel, v: SheafClassVector):
    """First Chern class: sum of generator classes plus twist multiples of H."""
    total = [0] * len(model.basis)
    for label, twist in v.entries:
        if label == "O":
            cls = (0,) * len(model.basis)
        elif label in model.generator_classes:
            cls = model.generator_classes[label]
        else:
            raise UnknownLabelError(f"unknown label {label!r} on {model.name}")
        for k in range(len(total)):
            total[k] += cls[k] + twist * model.hyperplane[k]
    return tuple(total)


def is_orientable(model: ClassModel, v: SheafClassVector) -> bool:
    """True when c1(v) is an integer multiple of the hyperplane class."""
    c1 = c1_of_vector(model, v)
    H = model.hyperplane
    pivot = next((k for k, h in enumerate(H) if h != 0), None)
    if pivot is None:
        return all(x == 0 for x in c1)
    if c1[pivot] % H[pivot] != 0:
        return False
    t = c1[pivot] // H[pivot]
    return all(x == t * h for x, h in zip(c1, H))


# ---------------------------------------------------------------------------
# the quotient group G'
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    """Finitely generated abelian group: generator labels and named relation vectors."""

    model: str
    generators: tuple
    relations: tuple  # (name, coefficient vector over generators)

    def relation_matrix(self):
        return [[vec[i] for _, vec in self.relations]
                for i in range(len(self.generators))]


def build_gprime(model: ClassModel, certify: bool = True, cutoff: int = 12):
    """Group presentation of G' = G(M)/(1-h): rank-1 generators plus O.

    Relations come from the model's certified short exact sequences with all
    twists erased.  With certify=True each named sequence is run through the
    exactness certifier first; uncertified relations are dropped (so a model
    with no certified sequences yields the free group).
    """
    gens = model.generators
    admitted = []
    for seq_name, coeffs in model.relation_templates:
        if certify:
            from .catalog import certified_sequence_report
            if not certified_sequence_report(seq_name, cutoff).ok:
                continue
        vec = tuple(coeffs.get(g, 0) for g in gens)
        admitted.append((seq_name, vec))
    return GroupPresentation(model.name, gens, tuple(admitted))


def check_condition_C(model: ClassModel, v: SheafClassVector,
                      gprime: GroupPresentation | None = None,
                      certify: bool = True, cutoff: int = 12):
    """Decide whether [v] = rank(v) * [O] in G'; returns (bool, witness).

    Precondition: v orientable (rejected otherwise).  The witness lists
    (relation name, multiplicity) pairs expressing v - r*O in the relation
    lattice; membership is decided by a Smith-normal-form solve.
    """
    if not is_orientable(model, v):
        raise OrientabilityError(
            f"condition (C) applies to orientable sheaves only: {format_class_vector(v)}")
    if gprime is None:
        gprime = build_gprime(model, certify=certify, cutoff=cutoff)
    gens = gprime.generators
    target = [0] * len(gens)
    for label, _twist in v.entries:  # twists are erased in G' (h = 1)
        if label not in gens:
            raise UnknownLabelError(f"unknown label {label!r} on {model.name}")
        target[gens.index(label)] += 1
    target[gens.index("O")] -= v.rank
    A = gprime.relation_matrix()
    x = solve_integer(A, target)
    if x is None:
        return False, None
    witness = [(gprime.relations[k][0], x[k]) for k in range(len(x)) if x[k] != 0]
    return True, witness


# ---------------------------------------------------------------------------
# the Veronese biliaison invariant m(Z)
# ---------------------------------------------------------------------------


def veronese_m_invariant(kernel: SheafClassVector, middle: SheafClassVector) -> int:
    """m(Z) for a resolution 0 -> kernel -> middle -> I_Z(a) -> 0 on the Veronese.

    Counts copies of I_C in the middle minus copies in the kernel; both inputs
    must be orientable, which forces the answer to be even.
    """
    model = class_model("veronese")
    for v, side in ((kernel, "kernel"), (middle, "middle")):
        if not is_orientable(model, v):
            raise OrientabilityError(f"{side} vector is not orientable: "
                                     f"{format_class_vector(v)}")
    m = middle.count("I_C") - kernel.count("I_C")
    assert m % 2 == 0, "orientable class data forces an even invariant"
    return m
