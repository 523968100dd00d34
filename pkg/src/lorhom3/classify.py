"""Executable classification of left-invariant lorentzian geometries.

From an (algebra, metric) pair, or a 4-dimensional homogeneous model, to a
geometry class, maximal geometry and completeness flag.  The completeness
flag encodes the classification theory, not a computation; the geodesic
probe is attached separately as corroborating evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .exactlin import mat_vec, nullspace
from .liealg import AlgebraTag, LieAlgebra, recognize_algebra3, validate
from .metric import (
    DegeneratePlane, InvariantMetric, constant_curvature_test, curvature,
    levi_civita, parallel_fields, sectional_curvature,
)
from .isotropy import (
    HomogeneousModel, IsoType, prolongation, transverse_subalgebras,
    validate_model,
)


class NotLorentzian(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    """A structural law failed (isotropy dim 2, or dim 3 without constant
    curvature); always reported loudly, never smoothed over."""


class NoTransverseSubalgebra(RuntimeError):
    pass


class GeometryClass(Enum):
    MINKOWSKI = "minkowski"
    DE_SITTER = "de_sitter"
    ANTI_DE_SITTER = "anti_de_sitter"
    LORENTZ_HEISENBERG = "lorentz_heisenberg"
    LORENTZ_SOL = "lorentz_sol"
    SL2_RIGHT_UNIPOTENT = "sl2_right_unipotent"
    SL2_RIGHT_SEMI_SIMPLE = "sl2_right_semi_simple"
    PRODUCT_R_DESITTER2 = "product_r_desitter2"
    RIEMANNIAN_TYPE = "riemannian_type"
    LEFT_INVARIANT_ONLY = "left_invariant_only"
    FLAT_SUBCLASS = "flat_subclass"


class MaximalGeometry(Enum):
    MINKOWSKI = "minkowski"
    ANTI_DE_SITTER = "anti_de_sitter"
    LORENTZ_HEISENBERG = "lorentz_heisenberg"
    LORENTZ_SOL = "lorentz_sol"
    RIEMANNIAN = "riemannian"
    NONE = "none"


class CompletenessFlag(Enum):
    COMPLETE_BY_THEOREM = "complete_by_theorem"
    INCOMPLETE_BY_THEOREM = "incomplete_by_theorem"
    UNKNOWN = "unknown"


@dataclass
class ClassificationReport:
    algebra_tag: AlgebraTag
    algebra_witness_available: bool
    kappa: Optional[Fraction]          # None means non-constant curvature
    scalar: Fraction
    ricci_square: Fraction
    flat: bool
    isotropy_dim: int
    isotropy_type: IsoType
    killing_dim: int
    geometry_class: GeometryClass
    flat_carrier: Optional[str]        # group label for FLAT_SUBCLASS
    maximal_geometry: MaximalGeometry
    completeness: CompletenessFlag
    compact_realization: Optional[bool]
    warnings: list = field(default_factory=list)
    carrier_basis: Optional[list] = None      # transporting subalgebra (models)
    model_compact_realization: Optional[bool] = None
    cap_reached: bool = False


def _product_factor_curvature(algebra, metric, curv, conn):
    """If a spacelike left-invariant parallel field splits off a line and the
    orthogonal plane has nonzero constant curvature, return that curvature.

    Exact test: R must equal kappa (gp(y,z) Px - gp(x,z) Py) where P is the
    g-orthogonal projection onto the plane and gp the projected metric.
    """
    for v in parallel_fields(conn):
        nv = metric.norm2(v)
        if nv <= 0:
            continue
        n = algebra.dim
        gv = mat_vec(metric.gram, v)
        proj = [[Fraction(1 if i == j else 0) - v[i] * gv[j] / nv
                 for j in range(n)] for i in range(n)]
        gp = [[metric.gram[i][j] - gv[i] * gv[j] / nv for j in range(n)]
              for i in range(n)]
        plane = nullspace([gv])
        try:
            kappa = sectional_curvature(metric, curv, plane[0], plane[1])
        except DegeneratePlane:
            continue
        if kappa == 0:
            continue
        ok = True
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for m in range(n):
                        expect = kappa * (gp[j][k] * proj[m][i] - gp[i][k] * proj[m][j])
                        if curv.riemann[i][j][k][m] != expect:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return kappa
    return None


def analyze_left_invariant(algebra: LieAlgebra, metric: InvariantMetric) -> ClassificationReport:
    """Decision tree: constant curvature first, then the product splitting,
    then the isotropy prolongation with the algebra identity."""
    if algebra.dim != 3:
        raise ValueError("left-invariant analysis needs a 3-dimensional algebra")
    validate(algebra)
    if not metric.is_lorentzian():
        raise NotLorentzian("metric signature is %s, not (2, 1)" % (metric.signature(),))
    ident = recognize_algebra3(algebra)
    conn = levi_civita(algebra, metric)
    curv = curvature(algebra, metric, conn)
    kappa = constant_curvature_test(algebra, metric, curv)
    iso = prolongation(algebra, metric)
    warnings = list(iso.warnings)
    if ident.witness is None and ident.note:
        warnings.append("algebra identity: %s" % ident.note)
    ric2 = curv.ricci_square_trace(metric)
    flat = curv.is_flat()

    if kappa is not None:
        if iso.dim != 3:
            raise InternalInconsistency(
                "constant curvature with isotropy dimension %d" % iso.dim)
        if kappa == 0:
            cls = GeometryClass.MINKOWSKI
        elif kappa < 0:
            cls = GeometryClass.ANTI_DE_SITTER
        else:
            cls = GeometryClass.DE_SITTER
            warnings.append("constant positive curvature admits no compact quotient")
    else:
        if iso.dim == 3:
            raise InternalInconsistency("full isotropy without constant curvature")
        factor = _product_factor_curvature(algebra, metric, curv, conn)
        if factor is not None:
            cls = GeometryClass.PRODUCT_R_DESITTER2
            warnings.append(
                "metric splits as line x constant-curvature lorentz surface "
                "(factor curvature %s)" % factor)
        elif iso.dim == 0:
            cls = GeometryClass.LEFT_INVARIANT_ONLY
            warnings.append("trivial local isotropy; no model geometry attached")
        else:
            cls = _one_param_class(ident.tag, iso.type_tag, warnings)

    maximal = _maximal_of(cls, warnings)
    completeness = _completeness_of(cls, ident.tag)
    compact = _compact_of(cls, ident.tag)
    return ClassificationReport(
        algebra_tag=ident.tag,
        algebra_witness_available=ident.witness is not None,
        kappa=kappa,
        scalar=curv.scalar,
        ricci_square=ric2,
        flat=flat,
        isotropy_dim=iso.dim,
        isotropy_type=iso.type_tag,
        killing_dim=3 + iso.dim,
        geometry_class=cls,
        flat_carrier=None,
        maximal_geometry=maximal,
        completeness=completeness,
        compact_realization=compact,
        warnings=warnings,
        cap_reached=iso.cap_reached,
    )


def _one_param_class(tag: AlgebraTag, iso_type: IsoType, warnings: list) -> GeometryClass:
    if iso_type == IsoType.ELLIPTIC:
        return GeometryClass.RIEMANNIAN_TYPE
    if iso_type == IsoType.UNIPOTENT:
        if tag == AlgebraTag.SOL:
            return GeometryClass.LORENTZ_SOL
        if tag == AlgebraTag.SL2:
            return GeometryClass.SL2_RIGHT_UNIPOTENT
    if iso_type == IsoType.SEMI_SIMPLE:
        if tag == AlgebraTag.HEIS:
            return GeometryClass.LORENTZ_HEISENBERG
        if tag == AlgebraTag.SL2:
            return GeometryClass.SL2_RIGHT_SEMI_SIMPLE
    warnings.append(
        "one-parameter %s isotropy on a %s algebra matches no catalog geometry; "
        "compactness is not assumed, so no class is forced" % (iso_type.value, tag.value))
    return GeometryClass.LEFT_INVARIANT_ONLY


def _maximal_of(cls: GeometryClass, warnings: list) -> MaximalGeometry:
    table = {
        GeometryClass.MINKOWSKI: MaximalGeometry.MINKOWSKI,
        GeometryClass.ANTI_DE_SITTER: MaximalGeometry.ANTI_DE_SITTER,
        GeometryClass.LORENTZ_HEISENBERG: MaximalGeometry.LORENTZ_HEISENBERG,
        GeometryClass.LORENTZ_SOL: MaximalGeometry.LORENTZ_SOL,
        GeometryClass.SL2_RIGHT_UNIPOTENT: MaximalGeometry.ANTI_DE_SITTER,
        GeometryClass.SL2_RIGHT_SEMI_SIMPLE: MaximalGeometry.ANTI_DE_SITTER,
        GeometryClass.RIEMANNIAN_TYPE: MaximalGeometry.RIEMANNIAN,
        GeometryClass.LEFT_INVARIANT_ONLY: MaximalGeometry.NONE,
        GeometryClass.FLAT_SUBCLASS: MaximalGeometry.MINKOWSKI,
    }
    if cls == GeometryClass.DE_SITTER:
        warnings.append("maximal geometry is the positive-curvature model, "
                        "outside the compactly realizable list")
        return MaximalGeometry.NONE
    if cls == GeometryClass.PRODUCT_R_DESITTER2:
        warnings.append("maximal geometry is the product model, "
                        "outside the compactly realizable list")
        return MaximalGeometry.NONE
    return table[cls]


def _completeness_of(cls: GeometryClass, tag: AlgebraTag) -> CompletenessFlag:
    if cls == GeometryClass.LORENTZ_SOL:
        return CompletenessFlag.INCOMPLETE_BY_THEOREM
    if cls == GeometryClass.LEFT_INVARIANT_ONLY:
        return CompletenessFlag.UNKNOWN
    if cls == GeometryClass.RIEMANNIAN_TYPE and tag != AlgebraTag.HEIS:
        return CompletenessFlag.UNKNOWN
    return CompletenessFlag.COMPLETE_BY_THEOREM


def _compact_of(cls: GeometryClass, tag: AlgebraTag) -> Optional[bool]:
    if cls in (GeometryClass.DE_SITTER, GeometryClass.PRODUCT_R_DESITTER2):
        return False
    if cls == GeometryClass.LEFT_INVARIANT_ONLY:
        return None
    if cls == GeometryClass.RIEMANNIAN_TYPE:
        return True if tag == AlgebraTag.HEIS else None
    return True


def maximal_geometry(report: ClassificationReport) -> MaximalGeometry:
    return report.maximal_geometry


_FLAT_CARRIER_PRIORITY = (AlgebraTag.SOL, AlgebraTag.HEIS)


def analyze_model(model: HomogeneousModel) -> ClassificationReport:
    """Pull the invariant metric back along a transverse subalgebra and
    delegate; flat germs are renamed after the best unimodular carrier."""
    validate_model(model)
    carriers = transverse_subalgebras(model)
    if not carriers:
        raise NoTransverseSubalgebra(
            "no rational transverse subalgebra acts simply transitively on %s"
            % model.name)
    chosen = carriers[0]
    report = analyze_left_invariant(chosen.algebra, chosen.metric)
    report.carrier_basis = chosen.vectors
    if not chosen.unimodular:
        report.warnings.append(
            "no unimodular transverse subgroup found; germ computed on a "
            "non-unimodular carrier")
    if report.geometry_class == GeometryClass.MINKOWSKI and report.flat:
        tagging = _best_flat_carrier(carriers)
        if tagging is not None:
            report.geometry_class = GeometryClass.FLAT_SUBCLASS
            report.flat_carrier = tagging
            report.maximal_geometry = MaximalGeometry.MINKOWSKI
    if model.compact_realization is not None:
        report.model_compact_realization = model.compact_realization
        if model.compact_realization is False:
            report.warnings.append(
                "the 4-dimensional model itself admits no compact realization")
    for note in model.notes:
        report.warnings.append(note)
    return report


def _best_flat_carrier(carriers) -> Optional[str]:
    tags = []
    for c in carriers:
        if not c.unimodular:
            continue
        tags.append(recognize_algebra3(c.algebra).tag)
    for wanted in _FLAT_CARRIER_PRIORITY:
        if wanted in tags:
            return wanted.value
    return None
