"""Infinitesimal isotropy of a locally homogeneous left-invariant metric.

The isotropy algebra is computed as the metric-skew endomorphisms that
annihilate the curvature tensor and its covariant derivatives, intersected
order by order until the dimension stabilizes.  In Lorentz signature the
stabilized dimension is 0, 1 or 3; a computed 2 is an internal
inconsistency and is raised loudly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (
    Mat, Vec, det, frac, inverse, mat_mul, mat_vec, nullspace,
    primitive_int_vector, signature, solve, sqrt_fraction, transpose, zeros,
)
from .liealg import LieAlgebra, validate
from .metric import (
    InvariantMetric, adapted_basis, covariant_derivative, curvature,
    levi_civita,
)

PROLONGATION_CAP = 3


class ZeroGenerator(ValueError):
    pass


class NoFixedVector(RuntimeError):
    """Internal inconsistency: a skew map in this signature always fixes a line."""


class NonRationalPlane(ArithmeticError):
    """The invariant planes exist but have irrational direction fields."""


class IsotropyDimensionTwo(RuntimeError):
    """dim 2 contradicts the isotropy dimension law; always a bug, never a result."""


class CapReached(RuntimeWarning):
    pass


class IsoType(Enum):
    TRIVIAL = "trivial"
    ELLIPTIC = "elliptic"
    UNIPOTENT = "unipotent"
    SEMI_SIMPLE = "semi_simple"
    FULL3 = "full3"


@dataclass
class IsotropyAlgebra:
    """Basis of g-skew curvature-jet annihilators, with its conjugacy type."""

    basis: list               # list of dim x dim rational matrices
    dim: int
    type_tag: IsoType
    orders_used: int          # covariant derivative orders consumed
    cap_reached: bool = False
    warnings: list = field(default_factory=list)


def skew_basis(metric: InvariantMetric) -> list:
    """Basis of {A : g(Ax, y) + g(x, Ay) = 0}; dimension 3 in dimension 3."""
    n = metric.dim
    g = metric.gram
    rows = []
    for i in range(n):
        for j in range(i, n):
            row = []
            for r in range(n):
                for c in range(n):
                    # coefficient of A[r][c] in (S A + A^T S)[i][j]
                    coef = Fraction(0)
                    if c == j:
                        coef += g[i][r]
                    if c == i:
                        coef += g[j][r]
                    row.append(coef)
            rows.append(row)
    sols = nullspace(rows, cols=n * n)
    return [[list(v[r * n:(r + 1) * n]) for r in range(n)] for v in sols]


def _derivation_rows(gens: list, tensor, slots: int, n: int) -> Mat:
    """Rows of the linear system 'sum t_a (A_a . tensor) = 0' over the t_a."""
    def get(t, idx):
        for i in idx:
            t = t[i]
        return t

    rows = []
    for idx in itertools.product(range(n), repeat=slots):
        base = get(tensor, idx)
        per_gen = []
        for a in gens:
            acted = mat_vec(a, base)
            for pos in range(slots):
                for m in range(n):
                    coef = a[m][idx[pos]]
                    if coef != 0:
                        other = get(tensor, idx[:pos] + (m,) + idx[pos + 1:])
                        acted = [x - coef * o for x, o in zip(acted, other)]
            per_gen.append(acted)
        for comp in range(n):
            rows.append([pg[comp] for pg in per_gen])
    return rows


def _combine(gens: list, coeffs: Sequence) -> Mat:
    n = len(gens[0])
    out = zeros(n)
    for c, g in zip(coeffs, gens):
        if c != 0:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * g[i][j]
    return out


def prolongation(algebra: LieAlgebra, metric: InvariantMetric,
                 cap: int = PROLONGATION_CAP) -> IsotropyAlgebra:
    """Stabilized intersection of the skew algebra with the annihilators of
    R, nabla R, nabla^2 R, ... (each acting as a tensor derivation)."""
    n = algebra.dim
    conn = levi_civita(algebra, metric)
    curv = curvature(algebra, metric, conn)
    gens = skew_basis(metric)
    tensors = [(curv.riemann, 3)]
    dims = [len(gens)]
    warnings = []
    order = 0
    tensor, slots = tensors[0]
    while True:
        if not gens:
            break
        rows = _derivation_rows(gens, tensor, slots, n)
        sols = nullspace(rows, cols=len(gens))
        new_gens = [_combine(gens, s) for s in sols]
        dims.append(len(new_gens))
        if len(new_gens) == len(gens):
            gens = new_gens
            break
        gens = new_gens
        if order == cap:
            warnings.append("prolongation cap reached at order %d with dims %s"
                            % (cap, dims))
            tag = _type_of(gens, n) if len(gens) in (0, 1, 3) else IsoType.TRIVIAL
            return IsotropyAlgebra([_normalize_gen(g) for g in gens], len(gens),
                                   tag, order, True, warnings)
        order += 1
        tensor = covariant_derivative(conn, tensor, slots)
        slots += 1
    gens = [_normalize_gen(g) for g in gens]
    d = len(gens)
    if d == 2:
        raise IsotropyDimensionTwo(
            "computed isotropy dimension 2 for a lorentzian pair; "
            "this contradicts the dimension law and means a bug")
    return IsotropyAlgebra(gens, d, _type_of(gens, n), order, False, warnings)


def _normalize_gen(g: Mat) -> Mat:
    flat = [x for row in g for x in row]
    v = primitive_int_vector(flat)
    n = len(g)
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def _type_of(gens: list, n: int) -> IsoType:
    if not gens:
        return IsoType.TRIVIAL
    if len(gens) >= 3:
        return IsoType.FULL3
    a = gens[0]
    tr = _trace_sq(a)
    if tr > 0:
        return IsoType.SEMI_SIMPLE
    if tr < 0:
        return IsoType.ELLIPTIC
    return IsoType.UNIPOTENT


def _trace_sq(a: Mat) -> Fraction:
    n = len(a)
    return sum(a[i][j] * a[j][i] for i in range(n) for j in range(n))


def classify_one_param(a: Mat, metric: InvariantMetric) -> IsoType:
    """Conjugacy type of a one-parameter skew generator: the exact sign of
    trace(A^2) is positive for boosts, negative for rotations, zero for
    unipotents."""
    if all(x == 0 for row in a for x in row):
        raise ZeroGenerator("the zero matrix generates no one-parameter group")
    res = skew_residual(a, metric)
    if any(x != 0 for row in res for x in row):
        raise ValueError("generator is not metric-skew")
    tr = _trace_sq(a)
    if tr > 0:
        return IsoType.SEMI_SIMPLE
    if tr < 0:
        return IsoType.ELLIPTIC
    return IsoType.UNIPOTENT


def skew_residual(a: Mat, metric: InvariantMetric) -> Mat:
    n = metric.dim
    g = metric.gram
    sa = mat_mul(g, a)
    ats = mat_mul(transpose(a), g)
    return [[sa[i][j] + ats[i][j] for j in range(n)] for i in range(n)]


def invariant_lorentz_forms(action: Mat) -> list:
    """Basis of symmetric S with S.action + action^T.S = 0, each annotated
    with its exact signature.  Empty is a valid answer."""
    n = len(action)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}

    def sym(i, j):
        return index[(i, j) if i <= j else (j, i)]

    rows = []
    for i in range(n):
        for j in range(i, n):
            row = [Fraction(0)] * len(pairs)
            # (S A)[i][j] + (A^T S)[i][j] = sum_k S[i][k] A[k][j] + A[k][i] S[k][j]
            for k in range(n):
                if action[k][j] != 0:
                    row[sym(i, k)] += action[k][j]
                if action[k][i] != 0:
                    row[sym(k, j)] += action[k][i]
            rows.append(row)
    sols = nullspace(rows, cols=len(pairs))
    out = []
    for s in sols:
        gram = zeros(n)
        for (i, j), k in index.items():
            gram[i][j] = gram[j][i] = s[k]
        out.append((gram, signature(gram)))
    return out


def fixed_vector(a: Mat) -> Vec:
    ker = nullspace(a)
    if not ker:
        raise NoFixedVector("skew generator with no fixed vector: "
                            "inconsistent with lorentzian signature")
    return ker[0]


def degenerate_invariant_planes(iso: IsotropyAlgebra, metric: InvariantMetric) -> list:
    """The degenerate 2-planes fixed by one-dimensional isotropy.

    Unipotent type: the single plane orthogonal to the fixed isotropic
    vector.  Semi-simple type: the two planes spanned by the fixed unit
    vector and each isotropic line of its orthogonal complement.
    Planes are returned as pairs of spanning vectors.
    """
    if iso.dim != 1:
        raise ValueError("invariant planes are computed for dim-1 isotropy only")
    a = iso.basis[0]
    x = fixed_vector(a)
    if iso.type_tag == IsoType.UNIPOTENT:
        plane = nullspace([mat_vec(metric.gram, x)])
        return [(plane[0], plane[1])]
    if iso.type_tag == IsoType.SEMI_SIMPLE:
        perp = nullspace([mat_vec(metric.gram, x)])
        w1, w2 = perp
        a0 = metric.norm2(w1)
        b0 = metric.inner(w1, w2)
        c0 = metric.norm2(w2)
        # isotropic lines of the lorentz plane: a0 s^2 + 2 b0 s t + c0 t^2 = 0
        disc = b0 * b0 - a0 * c0
        root = sqrt_fraction(disc)
        if root is None:
            raise NonRationalPlane("isotropic directions are irrational")
        lines = []
        if a0 != 0:
            for sgn in (1, -1):
                s = (-b0 + sgn * root) / a0
                lines.append([s * u + v for u, v in zip(w1, w2)])
        else:
            lines.append(list(w1))
            if b0 != 0:
                lines.append([u - (c0 / (2 * b0)) * v for u, v in zip(w2, w1)])
        lines = [primitive_int_vector(l) for l in lines]
        return [(list(x), l) for l in lines[:2]]
    raise ValueError("elliptic isotropy has no degenerate invariant plane")


# ---------------------------------------------------------------------------
# 4-dimensional homogeneous models
# ---------------------------------------------------------------------------

class ModelInvariantViolation(ValueError):
    pass


class ShapeViolation(RuntimeError):
    pass


@dataclass
class HomogeneousModel:
    """A 4-dimensional algebra with a marked isotropy line and an invariant
    lorentz form on the quotient of the remaining directions."""

    name: str
    algebra: LieAlgebra                  # dim 4
    iso_vector: Vec                      # the isotropy generator Y
    quotient_vectors: list               # three vectors projecting to a basis
    induced_metric: InvariantMetric      # Gram on the projected basis
    parameters: dict = field(default_factory=dict)
    carrier_hints: tuple = ()
    compact_realization: Optional[bool] = None
    notes: tuple = ()

    def full_basis(self) -> list:
        return [list(v) for v in self.quotient_vectors] + [list(self.iso_vector)]

    def quotient_coords(self, v: Sequence) -> Vec:
        cols = transpose(self.full_basis())
        sol = solve(cols, v)
        return sol[:3]

    def quotient_action(self) -> Mat:
        cols = [self.quotient_coords(self.algebra.bracket(self.iso_vector, q))
                for q in self.quotient_vectors]
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def invariance_residual(self) -> Mat:
        a = self.quotient_action()
        s = self.induced_metric.gram
        sa = mat_mul(s, a)
        ats = mat_mul(transpose(a), s)
        return [[sa[i][j] + ats[i][j] for j in range(3)] for i in range(3)]


def validate_model(model: HomogeneousModel) -> None:
    validate(model.algebra)
    if det(transpose(model.full_basis())) == 0:
        raise ModelInvariantViolation("isotropy vector and quotient basis are dependent")
    res = model.invariance_residual()
    if any(x != 0 for row in res for x in row):
        raise ModelInvariantViolation("induced metric is not isotropy-invariant")
    if not model.induced_metric.is_lorentzian():
        raise ModelInvariantViolation("induced form is not lorentzian")


@dataclass
class Carrier:
    """A transverse subalgebra realizing the model metric as left-invariant."""

    vectors: list                 # three vectors in the 4-dim algebra
    algebra: LieAlgebra           # their bracket structure, dim 3
    metric: InvariantMetric       # pulled-back induced metric
    unimodular: bool


def _carrier_from_vectors(model: HomogeneousModel, vecs: list) -> Optional[Carrier]:
    cols = transpose([list(v) for v in vecs])
    brackets = {}
    for i in range(3):
        for j in range(i + 1, 3):
            w = model.algebra.bracket(vecs[i], vecs[j])
            coords = solve(cols, w)
            if coords is None:
                return None
            brackets[(i, j)] = coords
    alg = LieAlgebra(3, brackets, ["u1", "u2", "u3"])
    proj = [model.quotient_coords(v) for v in vecs]
    gram = [[model.induced_metric.inner(proj[i], proj[j]) for j in range(3)]
            for i in range(3)]
    met = InvariantMetric(gram)
    from .liealg import is_unimodular
    return Carrier([list(v) for v in vecs], alg, met, is_unimodular(alg))


_GRID = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
         Fraction(1, 2), Fraction(-1, 2))


def transverse_subalgebras(model: HomogeneousModel) -> list:
    """All closed complements span{q_i + x_i Y} with coefficients in a small
    rational grid extended by model-specific hints; exact checks throughout."""
    values = list(_GRID)
    for h in model.carrier_hints:
        h = frac(h)
        if h not in values:
            values.append(h)
    found = []
    seen = []
    for xs in itertools.product(values, repeat=3):
        vecs = []
        for q, x in zip(model.quotient_vectors, xs):
            vecs.append([a + x * b for a, b in zip(q, model.iso_vector)])
        carrier = _carrier_from_vectors(model, vecs)
        if carrier is None:
            continue
        key = tuple(sorted(tuple(primitive_int_vector(v)) for v in carrier.vectors))
        if key in seen:
            continue
        seen.append(key)
        found.append(carrier)
    found.sort(key=lambda c: (not c.unimodular,))
    return found


def nabla_x_matrix(model: HomogeneousModel):
    """Matrix of v -> nabla_v X in an adapted frame, where X is the direction
    fixed by the model's unipotent isotropy action; asserted to be the
    single-corner nilpotent shape, and the corner entry alpha is returned.

    alpha = 0 exactly when X is a Killing field of the model metric.
    """
    validate_model(model)
    action = model.quotient_action()
    if classify_one_param(action, model.induced_metric) != IsoType.UNIPOTENT:
        raise ModelInvariantViolation("model isotropy action is not unipotent")
    x_q = fixed_vector(action)
    if model.induced_metric.norm2(x_q) != 0:
        raise ModelInvariantViolation("fixed vector of unipotent isotropy must be null")
    carriers = transverse_subalgebras(model)
    if not carriers:
        raise ModelInvariantViolation("no rational transverse subalgebra found")
    carrier = carriers[0]
    # express the fixed quotient direction in carrier coordinates
    proj = transpose([model.quotient_coords(v) for v in carrier.vectors])
    x = mat_vec(inverse(proj), x_q)
    frame = adapted_basis(carrier.metric, x)
    conn = levi_civita(carrier.algebra, carrier.metric)
    n = 3
    cols = [conn.nabla(i, x) for i in range(n)]
    nab = [[cols[j][i] for j in range(n)] for i in range(n)]
    b = frame.matrix()
    m = mat_mul(inverse(b), mat_mul(nab, b))
    alpha = m[0][2]
    for i in range(3):
        for j in range(3):
            if (i, j) != (0, 2) and m[i][j] != 0:
                raise ShapeViolation("nabla X is not of the single-corner shape: %r" % (m,))
    return m, alpha
