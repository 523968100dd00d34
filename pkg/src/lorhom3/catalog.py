"""Exact constructors for every geometry in the classification, plus the
normal-form reducers for metrics on the Heisenberg and SOL groups.

All defining constants live in the raw tables below so the regression
suite can mutate them and watch the corresponding check fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .exactlin import (
    Mat, det, frac, identity, mat_mul, nullspace, solve, transpose, vec,
)
from .liealg import (
    AlgebraTag, LieAlgebra, derived_algebra, recognize_algebra3, validate,
)
from .metric import InvariantMetric, curvature
from .isotropy import HomogeneousModel, IsoType, _carrier_from_vectors
from .classify import CompletenessFlag, GeometryClass, MaximalGeometry


class UnknownName(KeyError):
    pass


class NotHeis(ValueError):
    pass


class NotSol(ValueError):
    pass


class InvalidParameters(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw defining constants
# ---------------------------------------------------------------------------

ALGEBRA_TABLES = {
    "abelian": {"names": ("e1", "e2", "e3"), "brackets": {}},
    # central X', [Z, T] = X'
    "heis": {"names": ("X'", "Z", "T"), "brackets": {(1, 2): (1, 0, 0)}},
    # [T, X] = X, [T, Z] = -Z
    "sol": {"names": ("X", "Z", "T"),
            "brackets": {(0, 2): (-1, 0, 0), (1, 2): (0, 1, 0)}},
    # [X', Y] = Y, [X', Z] = -Z, [Z, Y] = 2 X'
    "sl2": {"names": ("X'", "Y", "Z"),
            "brackets": {(0, 1): (0, 1, 0), (0, 2): (0, 0, -1), (1, 2): (-2, 0, 0)}},
}

METRIC_TABLES = {
    "minkowski": ("abelian", ((1, 0, 0), (0, 1, 0), (0, 0, -1))),
    "anti_de_sitter_killing": ("sl2", ((2, 0, 0), (0, 0, -4), (0, -4, 0))),
    "lorentz_heisenberg": ("heis", ((1, 0, 0), (0, 0, 1), (0, 1, 0))),
    "flat_heis": ("heis", ((0, 0, 1), (0, 1, 0), (1, 0, 0))),
    "heis_elliptic": ("heis", ((-1, 0, 0), (0, 1, 0), (0, 0, 1))),
    "lorentz_sol": ("sol", ((0, 0, 1), (0, 1, 0), (1, 0, 0))),
    # derived entry: found by exact-curvature search over small rational
    # Gram matrices; the classical sources only assert existence
    "flat_sol": ("sol", ((0, 1, 0), (1, 0, 0), (0, 0, 1))),
    "sl2_right_unipotent": ("sl2", ((2, 0, 0), (0, 0, -4), (0, -4, 4))),
    "sl2_right_semisimple": ("sl2", ((4, 0, 0), (0, 0, -4), (0, -4, 0))),
}

# carrier of the product entry inside the R + sl2 model, frozen from the
# transverse-subalgebra search (a line plus a borel subalgebra)
PRODUCT_CARRIER = ((1, 0, 0, 0), (0, 1, 1, 0), (0, 1, 0, 1))

CATALOG_NAMES = (
    "minkowski",
    "de_sitter_note",
    "anti_de_sitter_killing",
    "lorentz_heisenberg",
    "flat_heis",
    "heis_elliptic",
    "lorentz_sol",
    "flat_sol",
    "sl2_right_unipotent",
    "sl2_right_semisimple",
    "product_r_desitter2",
)

MODEL_NAMES = (
    "lorentz_sol_4d",
    "lorentz_heisenberg_4d",
    "r_x_sol_flat",
    "r2_x_r2",
    "unipotent_family",
    "product_r_desitter2_4d",
)


@dataclass
class ExpectedRecord:
    """The classification facts an entry must reproduce under analysis."""

    isotropy_dim: Optional[int]
    isotropy_type: Optional[IsoType]
    flat: Optional[bool]
    kappa: Optional[Fraction]          # None: non-constant (or not applicable)
    kappa_sign: Optional[int]          # sign only, when the value is scale-bound
    killing_dim: Optional[int]
    geometry_class: Optional[GeometryClass]
    maximal_geometry: Optional[MaximalGeometry]
    completeness: Optional[CompletenessFlag]
    compact_realization: Optional[bool]


@dataclass
class CatalogEntry:
    name: str
    algebra: Optional[LieAlgebra]
    metric: Optional[InvariantMetric]
    expected: ExpectedRecord
    origin: str
    stub: bool = False
    notes: tuple = ()


def build_algebra(key: str) -> LieAlgebra:
    table = ALGEBRA_TABLES[key]
    return LieAlgebra(3, {k: vec(v) for k, v in table["brackets"].items()},
                      list(table["names"]))


def _entry_pair(name: str):
    algebra_key, gram = METRIC_TABLES[name]
    return build_algebra(algebra_key), InvariantMetric(gram)


_EXPECTED = {
    "minkowski": ExpectedRecord(3, IsoType.FULL3, True, Fraction(0), 0, 6,
                                GeometryClass.MINKOWSKI, MaximalGeometry.MINKOWSKI,
                                CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "anti_de_sitter_killing": ExpectedRecord(3, IsoType.FULL3, False, Fraction(-1, 8), -1, 6,
                                             GeometryClass.ANTI_DE_SITTER,
                                             MaximalGeometry.ANTI_DE_SITTER,
                                             CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "lorentz_heisenberg": ExpectedRecord(1, IsoType.SEMI_SIMPLE, False, None, None, 4,
                                         GeometryClass.LORENTZ_HEISENBERG,
                                         MaximalGeometry.LORENTZ_HEISENBERG,
                                         CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "flat_heis": ExpectedRecord(3, IsoType.FULL3, True, Fraction(0), 0, 6,
                                GeometryClass.MINKOWSKI, MaximalGeometry.MINKOWSKI,
                                CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "heis_elliptic": ExpectedRecord(1, IsoType.ELLIPTIC, False, None, None, 4,
                                    GeometryClass.RIEMANNIAN_TYPE,
                                    MaximalGeometry.RIEMANNIAN,
                                    CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "lorentz_sol": ExpectedRecord(1, IsoType.UNIPOTENT, False, None, None, 4,
                                  GeometryClass.LORENTZ_SOL, MaximalGeometry.LORENTZ_SOL,
                                  CompletenessFlag.INCOMPLETE_BY_THEOREM, True),
    "flat_sol": ExpectedRecord(3, IsoType.FULL3, True, Fraction(0), 0, 6,
                               GeometryClass.MINKOWSKI, MaximalGeometry.MINKOWSKI,
                               CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "sl2_right_unipotent": ExpectedRecord(1, IsoType.UNIPOTENT, False, None, None, 4,
                                          GeometryClass.SL2_RIGHT_UNIPOTENT,
                                          MaximalGeometry.ANTI_DE_SITTER,
                                          CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "sl2_right_semisimple": ExpectedRecord(1, IsoType.SEMI_SIMPLE, False, None, None, 4,
                                           GeometryClass.SL2_RIGHT_SEMI_SIMPLE,
                                           MaximalGeometry.ANTI_DE_SITTER,
                                           CompletenessFlag.COMPLETE_BY_THEOREM, True),
    "product_r_desitter2": ExpectedRecord(1, IsoType.SEMI_SIMPLE, False, None, None, 4,
                                          GeometryClass.PRODUCT_R_DESITTER2,
                                          MaximalGeometry.NONE,
                                          CompletenessFlag.COMPLETE_BY_THEOREM, False),
    "de_sitter_note": ExpectedRecord(None, None, None, None, 1, None, None, None, None, False),
}

_ORIGINS = {
    "minkowski": "the flat model: translations plus the full orthogonal group",
    "de_sitter_note": "constant positive curvature model; informational stub",
    "anti_de_sitter_killing": "left translations with the bi-invariant trace form "
                              "on the universal cover of SL(2, R)",
    "lorentz_heisenberg": "the left-invariant metric on the Heisenberg group whose "
                          "center has positive norm; isotropy is a boost",
    "flat_heis": "the null-center left-invariant metric on Heisenberg; flat",
    "heis_elliptic": "negative-norm center on Heisenberg; the isotropy is a "
                     "rotation, so the geometry is riemannian in disguise",
    "lorentz_sol": "the unique left-invariant metric on SOL with degenerate "
                   "derived algebra and an isotropic eigendirection of the "
                   "diagonal generator; unipotent isotropy, not flat",
    "flat_sol": "a flat left-invariant metric on SOL (derived entry: located by "
                "exact curvature search; classical sources assert existence only)",
    "sl2_right_unipotent": "left-invariant metric on the SL(2, R) cover also "
                           "preserved by a unipotent one-parameter group of "
                           "right translations",
    "sl2_right_semisimple": "left-invariant metric on the SL(2, R) cover also "
                            "preserved by a semi-simple one-parameter group of "
                            "right translations",
    "product_r_desitter2": "metric product of a line with the constant-curvature "
                           "lorentz surface; no compact realization",
}

_STUB_NOTES = {
    "de_sitter_note": (
        "constant positive curvature admits only finite groups acting properly, "
        "hence no compact quotient",
        "the underlying manifold is not a Lie group, so there is no left-invariant "
        "presentation in this catalog; analysis commands do not apply",
    ),
}


def catalog_names() -> tuple:
    return CATALOG_NAMES


def catalog_get(name: str) -> CatalogEntry:
    if name not in CATALOG_NAMES:
        raise UnknownName(name)
    if name == "de_sitter_note":
        return CatalogEntry(name, None, None, _EXPECTED[name], _ORIGINS[name],
                            stub=True, notes=_STUB_NOTES[name])
    if name == "product_r_desitter2":
        model = model_get("product_r_desitter2_4d")
        carrier = _carrier_from_vectors(model, [vec(v) for v in PRODUCT_CARRIER])
        if carrier is None:
            raise RuntimeError("frozen product carrier is not a subalgebra")
        return CatalogEntry(name, carrier.algebra, carrier.metric,
                            _EXPECTED[name], _ORIGINS[name],
                            notes=("presented on the line-plus-affine transverse "
                                   "subgroup of the product model",))
    algebra, metric = _entry_pair(name)
    return CatalogEntry(name, algebra, metric, _EXPECTED[name], _ORIGINS[name])


# ---------------------------------------------------------------------------
# normal forms on heis and sol
# ---------------------------------------------------------------------------

class HeisClass(Enum):
    LORENTZ_HEISENBERG = "lorentz_heisenberg"
    FLAT_NULL_CENTER = "flat_null_center"
    ELLIPTIC_RIEMANNIAN = "elliptic_riemannian_type"


class SolClass(Enum):
    LORENTZ_SOL = "lorentz_sol"
    FLAT = "flat"
    OTHER_SOL = "other_sol"


@dataclass
class NormalForm:
    klass: object
    witness: Optional[Mat]      # P with P^T S P = scale * canonical
    scale: Optional[Fraction]
    note: str = ""


def normalize_heis(algebra: LieAlgebra, metric: InvariantMetric) -> NormalForm:
    """Trichotomy by the exact sign of the center's norm; for positive norm,
    an explicit automorphism and scale onto the canonical representative."""
    ident = recognize_algebra3(algebra)
    if ident.tag != AlgebraTag.HEIS:
        raise NotHeis("algebra is %s, not heis" % ident.tag.value)
    p0 = ident.witness
    s_ref = metric.congruent(p0).gram
    p = s_ref[0][0]
    if p < 0:
        return NormalForm(HeisClass.ELLIPTIC_RIEMANNIAN, None, None,
                          "center norm negative: riemannian-type geometry")
    if p == 0:
        return NormalForm(HeisClass.FLAT_NULL_CENTER, None, None,
                          "center is null: the metric is flat")
    a1 = identity(3)
    a1[0][1] = -s_ref[0][1] / p
    a1[0][2] = -s_ref[0][2] / p
    s1 = mat_mul(transpose(a1), mat_mul(s_ref, a1))
    a0, b0, c0 = s1[1][1], s1[1][2], s1[2][2]
    disc = b0 * b0 - a0 * c0
    from .exactlin import sqrt_fraction
    root = sqrt_fraction(disc)
    if root is None:
        return NormalForm(HeisClass.LORENTZ_HEISENBERG, None, None,
                          "isotropic directions of the center's orthogonal plane "
                          "are irrational; class certified, no rational witness")
    if a0 != 0:
        d1 = [(-b0 + root) / a0, Fraction(1)]
        d2 = [(-b0 - root) / a0, Fraction(1)]
    else:
        d1 = [Fraction(1), Fraction(0)]
        d2 = [-c0 / (2 * b0), Fraction(1)]
    mu = d1[0] * d2[1] - d1[1] * d2[0]
    a2 = [[mu, Fraction(0), Fraction(0)],
          [Fraction(0), d1[0], d2[0]],
          [Fraction(0), d1[1], d2[1]]]
    s2 = mat_mul(transpose(a2), mat_mul(s1, a2))
    nu = s2[1][2]
    kap = nu / (s2[0][0])
    a3 = [[kap, Fraction(0), Fraction(0)],
          [Fraction(0), kap, Fraction(0)],
          [Fraction(0), Fraction(0), Fraction(1)]]
    witness = mat_mul(p0, mat_mul(a1, mat_mul(a2, a3)))
    scale = kap * nu
    target = metric.congruent(witness).gram
    canon = [[scale, 0, 0], [0, 0, scale], [0, scale, 0]]
    assert all(target[i][j] == frac(canon[i][j]) for i in range(3) for j in range(3))
    return NormalForm(HeisClass.LORENTZ_HEISENBERG, witness, scale)


def normalize_sol(algebra: LieAlgebra, metric: InvariantMetric) -> NormalForm:
    """Classify a metric on sol: the canonical class needs the derived plane
    degenerate with its null line an eigendirection; the reduction moves are
    rational because that null line already is."""
    ident = recognize_algebra3(algebra)
    if ident.tag != AlgebraTag.SOL:
        raise NotSol("algebra is %s, not sol" % ident.tag.value)
    derived = derived_algebra(algebra)
    gram_d = [[metric.inner(u, v) for v in derived] for u in derived]
    degen = det(gram_d) == 0
    eigen_ok = False
    lam = None
    kvec = None
    if degen:
        ker = nullspace(gram_d, cols=2)
        if ker:
            from .liealg import vec_comb
            kvec = vec_comb(derived, ker[0])
            t0 = _complement_vector(derived)
            image = algebra.bracket(t0, kvec)
            coords = solve(transpose([kvec]), image)
            if coords is not None:
                lam = coords[0]
                eigen_ok = lam != 0
    if not (degen and eigen_ok):
        curv = curvature(algebra, metric)
        if curv.is_flat():
            return NormalForm(SolClass.FLAT, None, None, "flat metric on sol")
        return NormalForm(SolClass.OTHER_SOL, None, None,
                          "derived plane nondegenerate or null line not an "
                          "eigendirection")
    t0 = _complement_vector(derived)
    tv = [x / lam for x in t0]
    other = _second_eigvec(algebra, derived, tv)
    x1 = kvec
    z1 = other
    c_norm = metric.norm2(z1)
    t1 = [a - (metric.inner(z1, tv) / c_norm) * b for a, b in zip(tv, z1)]
    t2 = [a - (metric.norm2(t1) / (2 * metric.inner(x1, t1))) * b
          for a, b in zip(t1, x1)]
    kap = c_norm / metric.inner(x1, t2)
    x2 = [kap * x for x in x1]
    witness = transpose([x2, z1, t2])
    scale = c_norm
    target = metric.congruent(witness).gram
    canon = [[Fraction(0), Fraction(0), scale],
             [Fraction(0), scale, Fraction(0)],
             [scale, Fraction(0), Fraction(0)]]
    assert target == canon
    return NormalForm(SolClass.LORENTZ_SOL, witness, scale)


def _complement_vector(plane: list):
    for i in range(3):
        cand = [Fraction(1 if j == i else 0) for j in range(3)]
        rowsp = [list(v) for v in plane] + [cand]
        from .exactlin import rank
        if rank(rowsp) == 3:
            return cand
    raise RuntimeError("derived plane spans everything; not a plane")


def _second_eigvec(algebra: LieAlgebra, derived: list, tv):
    """Eigendirection of ad(tv) on the derived plane for eigenvalue -1."""
    cols = transpose([list(v) for v in derived])
    rows = []
    for j, dvec in enumerate(derived):
        image = algebra.bracket(tv, dvec)
        coords = solve(cols, image)
        rows.append(coords)
    tau = transpose(rows)
    sys = [[tau[0][0] + 1, tau[0][1]], [tau[1][0], tau[1][1] + 1]]
    ker = nullspace(sys, cols=2)
    if not ker:
        raise RuntimeError("second eigendirection missing; ad action not sol-like")
    from .liealg import vec_comb
    return vec_comb(derived, ker[0])


# ---------------------------------------------------------------------------
# 4-dimensional models
# ---------------------------------------------------------------------------

def model_names() -> tuple:
    return MODEL_NAMES


def model_get(name: str, c=None, m=None, n=None) -> HomogeneousModel:
    """The named 4-dimensional algebra with marked isotropy line and induced
    invariant lorentz form."""
    if name == "lorentz_sol_4d":
        # heis = span{X', Z, Y} with [Y, Z] = X'; the extra generator acts on
        # (X', Z, Y) by [[1,0,0],[0,-1,1],[0,0,2]]
        alg = LieAlgebra(4, {
            (1, 2): (-1, 0, 0, 0),     # [Z, Y] = -X'
            (0, 3): (-1, 0, 0, 0),     # [X', T] = -X'
            (1, 3): (0, 1, 0, 0),      # [Z, T] = Z
            (2, 3): (0, -1, -2, 0),    # [Y, T] = -Z - 2Y
        }, ["X'", "Z", "Y", "T"])
        return _finish_model(name, alg, iso_index=2, quotient=(0, 1, 3),
                             gram=((0, 0, 1), (0, 1, 0), (1, 0, 0)),
                             hints=(1, -2), compact=True)
    if name == "lorentz_heisenberg_4d":
        # heis = span{X', Z, T} with [T, Z] = X'; the first factor acts by
        # (X', Z, T) -> (X', exp(t) Z, exp(-t) T)
        alg = LieAlgebra(4, {
            (1, 2): (-1, 0, 0, 0),     # [Z, T] = -X'
            (1, 3): (0, -1, 0, 0),     # [Z, Y] = -Z
            (2, 3): (0, 0, 1, 0),      # [T, Y] = T
        }, ["X'", "Z", "T", "Y"])
        return _finish_model(name, alg, iso_index=3, quotient=(0, 1, 2),
                             gram=((1, 0, 0), (0, 0, 1), (0, 1, 0)),
                             hints=(), compact=True)
    if name == "r_x_sol_flat":
        alg = LieAlgebra(4, {
            (1, 3): (0, -1, 0, 0),     # [Z, Y] = -Z
            (2, 3): (0, 0, 1, 0),      # [T, Y] = T
        }, ["X'", "Z", "T", "Y"])
        return _finish_model(name, alg, iso_index=3, quotient=(0, 1, 2),
                             gram=((1, 0, 0), (0, 0, 1), (0, 1, 0)),
                             hints=(), compact=True)
    if name == "r2_x_r2":
        alg = LieAlgebra(4, {
            (0, 2): (0, 0, -1, 0),     # [X', T] = -T
            (1, 3): (0, -1, 0, 0),     # [Z, Y] = -Z
            (2, 3): (0, 0, 1, 0),      # [T, Y] = T
        }, ["X'", "Z", "T", "Y"])
        return _finish_model(name, alg, iso_index=3, quotient=(0, 1, 2),
                             gram=((1, 0, 0), (0, 0, 1), (0, 1, 0)),
                             hints=(), compact=False,
                             notes=("trivial center: the invariant line field "
                                    "argument rules out compact realizations",))
    if name == "unipotent_family":
        if c is None or m is None or n is None:
            raise InvalidParameters("unipotent_family needs parameters c, m, n")
        try:
            c, m, n = frac(c), frac(m), frac(n)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidParameters(str(exc))
        alg = LieAlgebra(4, {
            (1, 2): (-1, 0, 0, 0),         # [Z, Y] = -X'
            (0, 3): (-c, 0, 0, 0),         # [X', T] = -c X'
            (1, 3): (-m, -c, -n, 0),       # [Z, T] = -(m X' + c Z + n Y)
            (2, 3): (0, -1, 0, 0),         # [Y, T] = -Z
        }, ["X'", "Z", "Y", "T"])
        hints = []
        disc = c * c + 4 * n
        from .exactlin import sqrt_fraction
        root = sqrt_fraction(disc) if disc >= 0 else None
        if root is not None:
            hints = [(-c + root) / 2, (-c - root) / 2]
        return _finish_model(name, alg, iso_index=2, quotient=(0, 1, 3),
                             gram=((0, 0, 1), (0, 1, 0), (1, 0, 0)),
                             hints=tuple(hints), compact=None,
                             parameters={"c": c, "m": m, "n": n})
    if name == "product_r_desitter2_4d":
        alg = LieAlgebra(4, {
            (1, 2): (0, 0, 1, 0),      # [X', Y] = Y
            (1, 3): (0, 0, 0, -1),     # [X', Z] = -Z
            (2, 3): (0, -2, 0, 0),     # [Y, Z] = -2 X'
        }, ["U", "X'", "Y", "Z"])
        return _finish_model(name, alg, iso_index=1, quotient=(0, 2, 3),
                             gram=((1, 0, 0), (0, 0, 4), (0, 4, 0)),
                             hints=(), compact=False,
                             notes=("the product geometry has no compact "
                                    "realization (exact-volume obstruction)",))
    raise UnknownName(name)


def _finish_model(name, alg, iso_index, quotient, gram, hints, compact,
                  parameters=None, notes=()):
    validate(alg)
    iso = alg.basis_vector(iso_index)
    qvecs = [alg.basis_vector(i) for i in quotient]
    model = HomogeneousModel(
        name=name,
        algebra=alg,
        iso_vector=iso,
        quotient_vectors=qvecs,
        induced_metric=InvariantMetric(gram),
        parameters=parameters or {},
        carrier_hints=tuple(hints),
        compact_realization=compact,
        notes=tuple(notes),
    )
    from .isotropy import validate_model
    validate_model(model)
    return model
