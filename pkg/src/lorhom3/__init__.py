"""Exact-plus-numeric engine for the local geometry of left-invariant
lorentzian metrics on 3-dimensional Lie groups and their 4-dimensional
homogeneous models: connection, curvature, isotropy, geometry class and
geodesic completeness diagnostics."""

__version__ = "1.0.0"

from .liealg import (
    AlgebraIdentity, AlgebraTag, JacobiViolation, LieAlgebra, ad_matrix,
    center, conjugate, derived_algebra, derived_series, is_nilpotent,
    is_solvable, is_unimodular, killing_form, recognize_algebra3, validate,
)
from .metric import (
    AdaptedBasis, ConnectionCoefficients, CurvatureData, DegenerateMetric,
    DegeneratePlane, InvariantMetric, NotIsotropic, adapted_basis,
    constant_curvature_test, curvature, levi_civita, sectional_curvature,
    signature,
)
from .isotropy import (
    HomogeneousModel, IsoType, IsotropyAlgebra, classify_one_param,
    degenerate_invariant_planes, invariant_lorentz_forms, nabla_x_matrix,
    prolongation, skew_basis, transverse_subalgebras,
)
from .geodesic import (
    GeodesicTrajectory, GlVerdict, ProbeVerdict, SamplerConfig,
    ToleranceUnachievable, Verdict, completeness_probe, euler_arnold_rhs,
    gl_criterion, integrate_geodesic,
)
from .catalog import (
    CatalogEntry, HeisClass, SolClass, UnknownName, catalog_get,
    catalog_names, model_get, model_names, normalize_heis, normalize_sol,
)
from .classify import (
    ClassificationReport, CompletenessFlag, GeometryClass, MaximalGeometry,
    NoTransverseSubalgebra, analyze_left_invariant, analyze_model,
    maximal_geometry,
)
