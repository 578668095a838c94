"""The hard-coded catalog: five geometric models with coordinate-explicit rings,
rank-1 ideal modules, matrix-factorization templates, certified short exact
sequences, extension data, and the Veronese resolution patterns.

Coordinate choices (all monomial-friendly):

* quadric surface in P^3:  k[x,y,z,w]/(xw - yz), rulings I_L = (x,y), I_M = (x,z);
* quadric cone in P^3:     k[x,u,v,t]/(x^2 + uv), line I_L = (x,u);
* quadric threefold cone:  k(i)[a,b,u,v,t]/(ab + uv) where a,b stand for the
  diagonalising coordinates x+iy, x-iy; plane ideals I_D = (a,u), I_E = (a,v);
* cubic scroll in P^4:     2x2 minors of (x0 x1 x3 / x1 x2 x4); fiber
  I_F = (x1,x2,x4), conic I_H-F = (x3,x4), exceptional line I_H-2F = (x0,x1,x2);
* Veronese surface in P^5: 2x2 minors of the symmetric 3x3 in y0..y5; conic
  I_C = (y0,y1,y2).

Matrix-factorization templates are transcribed from their displayed block
forms; every template is verified when first instantiated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .fields import QI, QQ
from .kgroup import ClassModel, SheafClassVector, class_model, class_vector
from .matfac import MatrixFactorization, cokernel_module, verify_mf
from .modules import (GradedModuleMap, GradedModulePresentation, free_module,
                      ideal_presentation, is_sequence_exact, present_submodule)
from .report import Report
from .rings import GradedRing, PolyRing, poly_ring

MODEL_NAMES = ("quadric-surface", "quadric-cone-p3", "quadric-threefold-cone",
               "cubic-scroll", "veronese")

MF_NAMES = ("bgs-i", "bgs-ii", "bgs-iii", "cone-4x4",
            "r1-a", "r1-b", "r1-c", "r1-d", "r1-e", "r3-d", "r3-e")
PARAMETRIC_MF = ("bgs-iii", "cone-4x4", "r1-d", "r1-e", "r3-d", "r3-e")

SEQUENCE_NAMES = ("quadric-surface-C", "scroll-1", "scroll-2", "scroll-3",
                  "cone-C", "threefold-C", "threefold-C-rev")

EXTENSION_NAMES = ("cone", "threefold-d", "threefold-e")

PATTERN_NAMES = ("point", "two-points", "three-general", "three-collinear",
                 "six-points", "determinantal")


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def base_rings():
    """All ambient rings used by the catalog, keyed by a short tag."""
    return {
        "line": poly_ring("x,t", QQ),                    # BGS curve ring k[x,t]
        "branch": poly_ring("a,b,t", QI),                # diagonalised x^2+y^2 -> ab
        "cone": poly_ring("x,u,v,t", QQ),
        "threefold": poly_ring("a,b,u,v,t", QI),
        "surface": poly_ring("x,y,z,w", QQ),
        "scroll": poly_ring("x0,x1,x2,x3,x4", QQ),
        "veronese": poly_ring("y0,y1,y2,y3,y4,y5", QQ),
    }


def _v(ring, name):
    return ring.var(name)


@lru_cache(maxsize=None)
def quotient_rings():
    amb = base_rings()
    x, u, v = (_v(amb["cone"], n) for n in ("x", "u", "v"))
    a, b, u3, v3 = (_v(amb["threefold"], n) for n in ("a", "b", "u", "v"))
    sx, sy, sz, sw = (_v(amb["surface"], n) for n in ("x", "y", "z", "w"))
    x0, x1, x2, x3, x4 = (_v(amb["scroll"], f"x{i}") for i in range(5))
    y = [_v(amb["veronese"], f"y{i}") for i in range(6)]
    la, lb = _v(amb["branch"], "a"), _v(amb["branch"], "b")
    lx = _v(amb["line"], "x")
    return {
        "line": GradedRing(amb["line"], (lx * lx,)),
        "branch": GradedRing(amb["branch"], (la * lb,)),
        "cone": GradedRing(amb["cone"], (x * x + u * v,)),
        "threefold": GradedRing(amb["threefold"], (a * b + u3 * v3,)),
        "surface": GradedRing(amb["surface"], (sx * sw - sy * sz,)),
        "scroll": GradedRing(amb["scroll"], (x0 * x2 - x1 * x1,
                                             x0 * x4 - x1 * x3,
                                             x1 * x4 - x2 * x3)),
        "veronese": GradedRing(amb["veronese"], (
            y[0] * y[3] - y[1] * y[1],
            y[0] * y[4] - y[1] * y[2],
            y[0] * y[5] - y[2] * y[2],
            y[1] * y[4] - y[2] * y[3],
            y[1] * y[5] - y[2] * y[4],
            y[3] * y[5] - y[4] * y[4])),
    }


_MODEL_RING_TAG = {
    "quadric-surface": "surface",
    "quadric-cone-p3": "cone",
    "quadric-threefold-cone": "threefold",
    "cubic-scroll": "scroll",
    "veronese": "veronese",
}

_IDEAL_GENERATORS = {
    ("quadric-surface", "I_L"): ("x", "y"),
    ("quadric-surface", "I_M"): ("x", "z"),
    ("quadric-cone-p3", "I_L"): ("x", "u"),
    ("quadric-threefold-cone", "I_D"): ("a", "u"),
    ("quadric-threefold-cone", "I_E"): ("a", "v"),
    ("cubic-scroll", "I_F"): ("x1", "x2", "x4"),
    ("cubic-scroll", "I_H-F"): ("x3", "x4"),
    ("cubic-scroll", "I_H-2F"): ("x0", "x1", "x2"),
    ("veronese", "I_C"): ("y0", "y1", "y2"),
}


@dataclass(frozen=True)
class ModelDescriptor:
    """One catalog model: ring, rank-1 modules, class data, named templates."""

    name: str
    ring: GradedRing
    module_labels: tuple
    classes: ClassModel
    sequence_names: tuple
    mf_names: tuple

    def module(self, label):
        return get_module(self.name, label)


@lru_cache(maxsize=None)
def get_model(name: str) -> ModelDescriptor:
    if name not in MODEL_NAMES:
        raise KeyError(f"unknown model {name!r}; choose from {MODEL_NAMES}")
    ring = quotient_rings()[_MODEL_RING_TAG[name]]
    labels = tuple(lab for (model, lab) in _IDEAL_GENERATORS if model == name)
    seqs = tuple(s for s in SEQUENCE_NAMES if _SEQUENCE_MODEL[s] == name)
    mfs = {"quadric-cone-p3": ("cone-4x4",),
           "quadric-threefold-cone": ("r3-d", "r3-e")}.get(name, ())
    return ModelDescriptor(name, ring, labels, class_model(name), seqs, mfs)


@lru_cache(maxsize=None)
def get_module(model: str, label: str) -> GradedModulePresentation:
    """Rank-1 ideal module of a model, or the scroll's rank-2 syzygy module E0."""
    if label == "E0":
        if model != "cubic-scroll":
            raise KeyError("E0 lives on the cubic scroll")
        return _scroll_e0()[0]
    key = (model, label)
    if key not in _IDEAL_GENERATORS:
        raise KeyError(f"unknown module {label!r} on {model!r}")
    ring = quotient_rings()[_MODEL_RING_TAG[model]]
    gens = [ring.ambient.var(n) for n in _IDEAL_GENERATORS[key]]
    return ideal_presentation(ring, gens)


@lru_cache(maxsize=None)
def _scroll_e0():
    """The scroll syzygy module E0 inside O(-1)^3, on its six degree-2 generators.

    The generators are the six independent linear syzygies of (x1, x2, x4);
    s1..s3 span the sub I_F(-1) (they are the multiplication-by-x3/x4 image)
    and the third coordinates of s4..s6 cut out the quotient I_H-2F(-1).
    """
    ring = quotient_rings()["scroll"]
    amb = ring.ambient
    x0, x1, x2, x3, x4 = (amb.var(f"x{i}") for i in range(5))
    z = amb.zero()
    gens = [
        (x2, -x1, z),    # s1
        (x1, -x0, z),    # s2
        (x4, -x3, z),    # s3
        (x3, z, -x0),    # s4
        (x4, z, -x1),    # s5
        (z, x4, -x2),    # s6
    ]
    presentation, kept = present_submodule(ring, (1, 1, 1), gens)
    assert len(kept) == 6 and kept == gens, "E0 generators must survive minimisation"
    return presentation, kept


# ---------------------------------------------------------------------------
# matrix factorization templates
# ---------------------------------------------------------------------------


def _require_level(name, l):
    if name in PARAMETRIC_MF:
        if l is None or l < 1:
            raise ValueError(f"{name} needs a level l >= 1, got {l!r}")
        return l
    if l not in (None, 0):
        raise ValueError(f"{name} takes no level parameter")
    return None


def _mf(ring, f, phi, psi, rows, cols):
    m = MatrixFactorization(ring, f, tuple(tuple(r) for r in phi),
                            tuple(tuple(r) for r in psi),
                            tuple(rows), tuple(cols))
    rep = verify_mf(m)
    assert rep.ok, f"catalog template failed verification: {rep.first_failure()}"
    return m


@lru_cache(maxsize=None)
def get_mf(name: str, l: int | None = None) -> MatrixFactorization:
    """Instantiate a named factorization template, verified on construction."""
    if name not in MF_NAMES:
        raise KeyError(f"unknown factorization {name!r}; choose from {MF_NAMES}")
    l = _require_level(name, l)
    amb = base_rings()

    if name in ("bgs-i", "bgs-ii", "bgs-iii"):
        S = amb["line"]
        x, t = S.var("x"), S.var("t")
        f = x * x
        if name == "bgs-i":
            return _mf(S, f, [[f]], [[S.one()]], (0,), (2,))
        if name == "bgs-ii":
            return _mf(S, f, [[x]], [[x]], (0,), (1,))
        tl = t ** l
        z = S.zero()
        mat = [[x, tl], [z, -x]]
        return _mf(S, f, mat, mat, (0, l - 1), (1, l))

    if name == "cone-4x4":
        S = amb["cone"]
        x, u, v, t = (S.var(n) for n in ("x", "u", "v", "t"))
        f = x * x + u * v
        tl = t ** l
        z = S.zero()
        phi = [[u, z, x, tl],
               [z, u, z, -x],
               [x, tl, -v, z],
               [z, -x, z, -v]]
        psi = [[v, z, x, tl],
               [z, v, z, -x],
               [x, tl, -u, z],
               [z, -x, z, -u]]
        return _mf(S, f, phi, psi, (1, l, 1, l), (2, l + 1, 2, l + 1))

    if name in ("r1-a", "r1-b", "r1-c", "r1-d", "r1-e"):
        S = amb["branch"]
        a, b, t = (S.var(n) for n in ("a", "b", "t"))
        f = a * b
        if name == "r1-a":
            return _mf(S, f, [[f]], [[S.one()]], (0,), (2,))
        if name == "r1-b":
            return _mf(S, f, [[a]], [[b]], (0,), (1,))
        if name == "r1-c":
            return _mf(S, f, [[b]], [[a]], (0,), (1,))
        tl = t ** l
        z = S.zero()
        if name == "r1-d":
            phi = [[a, -tl], [z, b]]
            psi = [[b, tl], [z, a]]
        else:
            phi = [[b, -tl], [z, a]]
            psi = [[a, tl], [z, b]]
        return _mf(S, f, phi, psi, (0, l - 1), (1, l))

    # r3-d / r3-e over the threefold ring: Knoerrer blocks ((u I, psi),(phi, -v I))
    S = amb["threefold"]
    a, b, u, v, t = (S.var(n) for n in ("a", "b", "u", "v", "t"))
    f = a * b + u * v
    tl = t ** l
    z = S.zero()
    if name == "r3-d":
        inner_phi = [[a, -tl], [z, b]]
        inner_psi = [[b, tl], [z, a]]
    else:
        inner_phi = [[b, -tl], [z, a]]
        inner_psi = [[a, tl], [z, b]]
    phi = [[u, z] + inner_psi[0], [z, u] + inner_psi[1],
           inner_phi[0] + [-v, z], inner_phi[1] + [z, -v]]
    psi = [[v, z] + inner_psi[0], [z, v] + inner_psi[1],
           inner_phi[0] + [-u, z], inner_phi[1] + [z, -u]]
    return _mf(S, f, phi, psi, (1, l, 1, l), (2, l + 1, 2, l + 1))


# ---------------------------------------------------------------------------
# short exact sequences (explicit matrices in the chosen coordinates)
# ---------------------------------------------------------------------------

_SEQUENCE_MODEL = {
    "quadric-surface-C": "quadric-surface",
    "scroll-1": "cubic-scroll",
    "scroll-2": "cubic-scroll",
    "scroll-3": "cubic-scroll",
    "cone-C": "quadric-cone-p3",
    "threefold-C": "quadric-threefold-cone",
    "threefold-C-rev": "quadric-threefold-cone",
}


def _identity_onto(target, source_free):
    """The map sending the free cover's basis to the target's generators."""
    amb = target.ring.ambient
    one, zero = amb.one(), amb.zero()
    rows = tuple(tuple(one if i == j else zero for j in range(source_free.rank))
                 for i in range(target.rank))
    return GradedModuleMap(source_free, target, rows)


@lru_cache(maxsize=None)
def get_sequence(name: str):
    """(first, second) maps of the named sequence 0 -> A -> E -> B -> 0."""
    if name not in SEQUENCE_NAMES:
        raise KeyError(f"unknown sequence {name!r}; choose from {SEQUENCE_NAMES}")
    model = get_model(_SEQUENCE_MODEL[name])
    ring = model.ring
    amb = ring.ambient
    z = amb.zero()

    if name == "quadric-surface-C":
        x, y, w, zz = amb.var("x"), amb.var("y"), amb.var("w"), amb.var("z")
        A = model.module("I_L")
        B = model.module("I_M").twist(1)
        E = free_module(ring, (0, 0))
        first = GradedModuleMap(A, E, ((zz, w), (-x, -y)))
        return first, _identity_onto(B, E)

    if name == "scroll-2":
        x0, x1, x2, x3, x4 = (amb.var(f"x{i}") for i in range(5))
        A = model.module("I_F")
        B = model.module("I_H-F").twist(1)
        E = free_module(ring, (0, 0))
        first = GradedModuleMap(A, E, ((x1, x2, x4), (-x0, -x1, -x3)))
        return first, _identity_onto(B, E)

    if name == "scroll-3":
        x0, x1, x2, x3, x4 = (amb.var(f"x{i}") for i in range(5))
        A = model.module("I_F")
        E = free_module(ring, (0,)).direct_sum(model.module("I_H-F").twist(1))
        B = model.module("I_H-2F").twist(1)
        one = amb.one()
        first = GradedModuleMap(A, E, ((x0, x1, x3),
                                       (-x2, z, z),
                                       (z, -x2, -x4)))
        second = GradedModuleMap(E, B, ((z, one, z),
                                        (z, z, one),
                                        (one, z, z)))
        return first, second

    if name == "scroll-1":
        A = model.module("I_F").twist(-1)
        E = get_module("cubic-scroll", "E0")
        B = model.module("I_H-2F").twist(-1)
        one = amb.one()
        # I_F(-1) -> E0 is multiplication by x3/x4: x1 -> s2, x2 -> s1, x4 -> s3
        first = GradedModuleMap(A, E, ((z, one, z),
                                       (one, z, z),
                                       (z, z, one),
                                       (z, z, z),
                                       (z, z, z),
                                       (z, z, z)))
        # E0 -> I_H-2F(-1) is minus the third coordinate: s4,s5,s6 -> x0,x1,x2
        second = GradedModuleMap(E, B, ((z, z, z, -one, z, z),
                                        (z, z, z, z, -one, z),
                                        (z, z, z, z, z, -one)))
        return first, second

    if name == "cone-C":
        x, u, v = amb.var("x"), amb.var("u"), amb.var("v")
        A = model.module("I_L")
        B = model.module("I_L").twist(1)
        E = free_module(ring, (0, 0))
        first = GradedModuleMap(A, E, ((x, u), (v, -x)))
        return first, _identity_onto(B, E)

    a, b, u, v = amb.var("a"), amb.var("b"), amb.var("u"), amb.var("v")
    E = free_module(ring, (0, 0))
    if name == "threefold-C":
        A = model.module("I_D")
        B = model.module("I_E").twist(1)
        first = GradedModuleMap(A, E, ((v, -b), (-a, -u)))
    else:  # threefold-C-rev
        A = model.module("I_E")
        B = model.module("I_D").twist(1)
        first = GradedModuleMap(A, E, ((u, -b), (-a, -v)))
    return first, _identity_onto(B, E)


@lru_cache(maxsize=None)
def certified_sequence_report(name: str, cutoff: int = 12) -> Report:
    first, second = get_sequence(name)
    return is_sequence_exact(first, second, cutoff)


# ---------------------------------------------------------------------------
# extensions realised by the 4x4 factorization cokernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionData:
    """check_extension inputs for one catalog extension, with explicit maps."""

    name: str
    level: int
    middle: GradedModulePresentation
    sub: GradedModulePresentation
    quot: GradedModulePresentation
    embedding: GradedModuleMap
    quotient_cover: tuple  # explicit matrix for the free cover of `quot` -> middle/sub


@lru_cache(maxsize=None)
def get_extension(name: str, l: int) -> ExtensionData:
    """Extension data: cone (sub I_L) and threefold d/e (subs I_D, I_E)."""
    if name not in EXTENSION_NAMES:
        raise KeyError(f"unknown extension {name!r}; choose from {EXTENSION_NAMES}")
    if l < 1:
        raise ValueError("level must be >= 1")
    if name == "cone":
        m = get_mf("cone-4x4", l)
        model = get_model("quadric-cone-p3")
        sub = model.module("I_L")
        quot = model.module("I_L").twist(-l + 1)
        sub_cols = {0: (0, 1), 1: (2, -1)}   # x -> e1, u -> -e3
        cover_cols = {0: (1, 1), 1: (3, 1)}  # x -> e2, u -> e4
    elif name == "threefold-d":
        m = get_mf("r3-d", l)
        model = get_model("quadric-threefold-cone")
        sub = model.module("I_D")
        quot = model.module("I_E").twist(-l + 1)
        sub_cols = {0: (0, 1), 1: (2, -1)}   # a -> e1, u -> -e3
        cover_cols = {0: (3, 1), 1: (1, 1)}  # a -> e4, v -> e2
    else:
        m = get_mf("r3-e", l)
        model = get_model("quadric-threefold-cone")
        sub = model.module("I_E")
        quot = model.module("I_D").twist(-l + 1)
        sub_cols = {0: (2, 1), 1: (0, 1)}    # a -> e3, v -> e1
        cover_cols = {0: (1, 1), 1: (3, -1)}  # a -> e2, u -> -e4

    middle = cokernel_module(m)
    amb = middle.ring.ambient
    zero = amb.zero()

    def matrix_from(cols, n_cols):
        rows = [[zero] * n_cols for _ in range(middle.rank)]
        for j, (i, sign) in cols.items():
            rows[i][j] = amb.from_int(sign)
        return tuple(tuple(r) for r in rows)

    embedding = GradedModuleMap(sub, middle, matrix_from(sub_cols, sub.rank))
    cover = matrix_from(cover_cols, quot.rank)
    return ExtensionData(name, l, middle, sub, quot, embedding, cover)


# ---------------------------------------------------------------------------
# Veronese resolution patterns and the Rao modules
# ---------------------------------------------------------------------------


def get_resolution_pattern(name: str, n: int | None = None):
    """(kernel, middle) class vectors of a displayed Veronese resolution."""
    if name == "point":
        return class_vector(("O", -1)), class_vector("I_C", "I_C")
    if name == "two-points":
        return class_vector(("I_C", -1)), class_vector(("O", -1), "I_C")
    if name == "three-general":
        return get_resolution_pattern("determinantal", 2)
    if name == "three-collinear":
        return class_vector(("O", -2)), class_vector("I_C", ("I_C", -1))
    if name == "six-points":
        return (class_vector(*[("O", -1)] * 3),
                class_vector(*["I_C"] * 4))
    if name == "determinantal":
        if n is None or n <= 0 or n % 2 != 0:
            raise ValueError("determinantal patterns need even positive n")
        half = n // 2
        return (class_vector(*[("I_C", -half)] * n),
                class_vector(*[("O", -half)] * (n + 1)))
    raise KeyError(f"unknown pattern {name!r}; choose from {PATTERN_NAMES}")


def rao_module(d: int) -> GradedModulePresentation:
    """The Rao module S3/(a, b, u, v, t^d) as a graded module over the threefold ring."""
    if d < 1:
        raise ValueError("Rao module level must be >= 1")
    ring = quotient_rings()["threefold"]
    amb = ring.ambient
    a, b, u, v, t = (amb.var(nm) for nm in ("a", "b", "u", "v", "t"))
    return GradedModulePresentation(ring, (0,), ((a, b, u, v, t ** d),))


# ---------------------------------------------------------------------------
# serialization and self-check
# ---------------------------------------------------------------------------


def mf_instances():
    """All concrete catalog factorizations: (file stem, factorization)."""
    out = []
    for name in MF_NAMES:
        if name in PARAMETRIC_MF:
            for l in range(1, 5):
                out.append((f"{name}-l{l}", get_mf(name, l)))
        else:
            out.append((name, get_mf(name)))
    return out


def module_instances():
    """All serialized catalog modules: (file stem, presentation)."""
    out = []
    for (model, label) in sorted(_IDEAL_GENERATORS):
        out.append((f"{model}-{label}", get_module(model, label)))
    out.append(("cubic-scroll-E0", get_module("cubic-scroll", "E0")))
    for d in (1, 2, 3):
        out.append((f"rao-{d}", rao_module(d)))
    return out


def data_file_contents():
    """Mapping file name -> canonical text for the versioned data directory."""
    from .textio import format_mfx, format_module
    files = {}
    for stem, m in mf_instances():
        files[f"{stem}.mfx"] = format_mfx(m)
    for stem, M in module_instances():
        files[f"{stem}.mod"] = format_module(M)
    return files


def catalog_self_check(cutoff: int = 12, steps: int = 4,
                       resolution_cutoff: int = 10,
                       deep: bool = True) -> Report:
    """Verify every template: factorizations, sequences, patterns, resolutions."""
    from .matfac import periodic_resolution_check
    report = Report(kind="catalog-self-check")
    for stem, m in mf_instances():
        report.add(f"mf/{stem}", verify_mf(m).ok, "phi*psi = psi*phi = f*I")
    for name in SEQUENCE_NAMES:
        rep = certified_sequence_report(name, cutoff)
        bad = rep.first_failure()
        report.add(f"sequence/{name}", rep.ok, bad.name if bad else "exact")
    for name in PATTERN_NAMES:
        from .kgroup import is_orientable
        model = class_model("veronese")
        if name == "determinantal":
            pats = [get_resolution_pattern(name, n) for n in (2, 4)]
        else:
            pats = [get_resolution_pattern(name)]
        ok = all(is_orientable(model, e) and is_orientable(model, nv)
                 for e, nv in pats)
        report.add(f"pattern/{name}", ok, "both sides orientable")
    if deep:
        for stem, m in mf_instances():
            rep = periodic_resolution_check(m, steps, resolution_cutoff)
            bad = rep.first_failure()
            report.add(f"resolution/{stem}", rep.ok, bad.name if bad else "exact")
    return report
