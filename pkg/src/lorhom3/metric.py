"""Levi-Civita connection and curvature of a left-invariant metric.

The metric is a symmetric Gram matrix on the Lie algebra basis; everything
is exact rational.  Curvature sign convention, pinned by the regression
suite: R(x, y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_{[x,y]} z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (
    Mat, Vec, det, frac, inverse, mat, mat_mul, mat_vec, nullspace,
    signature as _signature, sqrt_fraction, transpose, vec,
)
from .liealg import LieAlgebra


class DegenerateMetric(ValueError):
    pass


class DegeneratePlane(ValueError):
    """A null 2-plane has no sectional curvature; honest refusal, not failure."""


class NotIsotropic(ValueError):
    pass


class InvariantMetric:
    """Symmetric nondegeneracy-checked Gram matrix at the identity."""

    def __init__(self, gram):
        g = mat(gram)
        n = len(g)
        for row in g:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.gram = g
        self.dim = n
        self._inv = None

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        acc = Fraction(0)
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            row = self.gram[i]
            for j, vj in enumerate(v):
                if vj != 0 and row[j] != 0:
                    acc += ui * row[j] * vj
        return acc

    def norm2(self, u: Sequence) -> Fraction:
        return self.inner(u, u)

    def determinant(self) -> Fraction:
        return det(self.gram)

    def inverse(self) -> Mat:
        if self._inv is None:
            if self.determinant() == 0:
                raise DegenerateMetric("metric has determinant zero")
            self._inv = inverse(self.gram)
        return self._inv

    def signature(self):
        return _signature(self.gram)

    def is_lorentzian(self) -> bool:
        return self.signature() == (self.dim - 1, 1, 0)

    def scaled(self, s) -> "InvariantMetric":
        s = frac(s)
        return InvariantMetric([[s * x for x in row] for row in self.gram])

    def congruent(self, p: Mat) -> "InvariantMetric":
        return InvariantMetric(mat_mul(transpose(p), mat_mul(self.gram, p)))

    def __repr__(self):
        return "InvariantMetric(%r)" % (self.gram,)


def signature(metric: InvariantMetric):
    """(positive, negative, zero) inertia counts, exactly."""
    return metric.signature()


@dataclass
class ConnectionCoefficients:
    """gamma[i][j] is the coefficient vector of nabla_{e_i} e_j."""

    gamma: list
    dim: int

    def nabla(self, i: int, v: Sequence) -> Vec:
        out = [Fraction(0)] * self.dim
        for l, vl in enumerate(v):
            if vl != 0:
                g = self.gamma[i][l]
                for k in range(self.dim):
                    if g[k] != 0:
                        out[k] += vl * g[k]
        return out

    def nabla_vec(self, x: Sequence, v: Sequence) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi != 0:
                t = self.nabla(i, v)
                for k in range(self.dim):
                    out[k] += xi * t[k]
        return out

    def torsion_residual(self, algebra: LieAlgebra) -> list:
        res = []
        for i in range(self.dim):
            for j in range(self.dim):
                w = algebra.bracket(algebra.basis_vector(i), algebra.basis_vector(j))
                res.append([self.gamma[i][j][k] - self.gamma[j][i][k] - w[k]
                            for k in range(self.dim)])
        return res

    def compatibility_residual(self, metric: InvariantMetric) -> list:
        res = []
        for i in range(self.dim):
            for j in range(self.dim):
                for l in range(self.dim):
                    ej = [Fraction(1 if t == j else 0) for t in range(self.dim)]
                    el = [Fraction(1 if t == l else 0) for t in range(self.dim)]
                    res.append(metric.inner(self.gamma[i][j], el)
                               + metric.inner(ej, self.gamma[i][l]))
        return res


def levi_civita(algebra: LieAlgebra, metric: InvariantMetric) -> ConnectionCoefficients:
    """Koszul formula for left-invariant fields:
    2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)."""
    n = algebra.dim
    ginv = metric.inverse()
    gram = metric.gram
    c = algebra.c
    half = Fraction(1, 2)
    # paired brackets m[i][j][k] = g([e_i, e_j], e_k)
    m = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cij = c[i][j]
            for l in range(n):
                cl = cij[l]
                if cl != 0:
                    row = gram[l]
                    for k in range(n):
                        if row[k] != 0:
                            m[i][j][k] += cl * row[k]
    gamma = [[None] * n for _ in range(n)]
    for i in range(n):
        mi = m[i]
        for j in range(n):
            k2 = [(mi[j][k] - m[j][k][i] + m[k][i][j]) * half for k in range(n)]
            gamma[i][j] = [sum(ginv[l][k] * k2[k] for k in range(n) if k2[k] != 0)
                           or Fraction(0) for l in range(n)]
    return ConnectionCoefficients(gamma, n)


@dataclass
class CurvatureData:
    """Frame components of R, Ricci, the scalar, and nabla R."""

    riemann: list          # riemann[i][j][k] = components of R(e_i, e_j) e_k
    ricci: Mat             # Ric(u, v) = trace(w -> R(w, u) v)
    scalar: Fraction
    nabla_riemann: list    # nabla_riemann[w][i][j][k]
    dim: int

    def operator(self, x: Sequence, y: Sequence) -> Mat:
        """Matrix of z -> R(x, y) z."""
        n = self.dim
        cols = [self.apply(x, y, [Fraction(1 if t == k else 0) for t in range(n)])
                for k in range(n)]
        return [[cols[k][i] for k in range(n)] for i in range(n)]

    def apply(self, x: Sequence, y: Sequence, z: Sequence) -> Vec:
        n = self.dim
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                for k, zk in enumerate(z):
                    if zk == 0:
                        continue
                    comp = self.riemann[i][j][k]
                    for m in range(n):
                        if comp[m] != 0:
                            out[m] += xi * yj * zk * comp[m]
        return out

    def is_flat(self) -> bool:
        return all(all(x == 0 for x in self.riemann[i][j][k])
                   for i in range(self.dim) for j in range(self.dim)
                   for k in range(self.dim))

    def ricci_operator(self, metric: InvariantMetric) -> Mat:
        return mat_mul(metric.inverse(), self.ricci)

    def ricci_square_trace(self, metric: InvariantMetric) -> Fraction:
        op = self.ricci_operator(metric)
        sq = mat_mul(op, op)
        return sum(sq[i][i] for i in range(self.dim))


def covariant_derivative(conn: ConnectionCoefficients, tensor, slots: int):
    """One more covariant slot on a type-(1, slots) frame tensor.

    tensor is a nested list of depth ``slots`` whose leaves are coefficient
    vectors; the result has depth slots + 1 with the new slot first.
    """
    n = conn.dim

    def get(t, idx):
        for i in idx:
            t = t[i]
        return t

    out = []
    for w in range(n):
        def derive(depth, idx):
            if depth == slots:
                base = conn.nabla(w, get(tensor, idx))
                for pos in range(slots):
                    for m in range(n):
                        coef = conn.gamma[w][idx[pos]][m]
                        if coef != 0:
                            other = get(tensor, idx[:pos] + (m,) + idx[pos + 1:])
                            base = [b - coef * o for b, o in zip(base, other)]
                return base
            return [derive(depth + 1, idx + (i,)) for i in range(n)]
        out.append(derive(0, ()))
    return out


def curvature(algebra: LieAlgebra, metric: InvariantMetric,
              conn: Optional[ConnectionCoefficients] = None) -> CurvatureData:
    n = algebra.dim
    if conn is None:
        conn = levi_civita(algebra, metric)
    e = [algebra.basis_vector(i) for i in range(n)]
    riem = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            w = algebra.bracket(e[i], e[j])
            for k in range(n):
                t1 = conn.nabla(i, conn.gamma[j][k])
                t2 = conn.nabla(j, conn.gamma[i][k])
                t3 = conn.nabla_vec(w, e[k])
                riem[i][j][k] = [a - b - c for a, b, c in zip(t1, t2, t3)]
    ricci = [[sum(riem[i][u][v][i] for i in range(n)) for v in range(n)]
             for u in range(n)]
    ginv = metric.inverse()
    scalar = sum(ginv[u][v] * ricci[u][v] for u in range(n) for v in range(n))
    nabla_r = covariant_derivative(conn, riem, 3)
    return CurvatureData(riem, ricci, scalar, nabla_r, n)


def sectional_curvature(metric: InvariantMetric, curv: CurvatureData,
                        x: Sequence, y: Sequence) -> Fraction:
    """K = g(R(x,y)y, x) / (g(x,x) g(y,y) - g(x,y)^2); raises DegeneratePlane
    when the denominator vanishes."""
    x = vec(x)
    y = vec(y)
    denom = metric.norm2(x) * metric.norm2(y) - metric.inner(x, y) ** 2
    if denom == 0:
        raise DegeneratePlane("plane spanned by the given vectors is degenerate")
    return metric.inner(curv.apply(x, y, y), x) / denom


def constant_curvature_test(algebra: LieAlgebra, metric: InvariantMetric,
                            curv: Optional[CurvatureData] = None) -> Optional[Fraction]:
    """kappa with R(x,y)z = kappa (g(y,z) x - g(x,z) y) exactly, else None."""
    if curv is None:
        curv = curvature(algebra, metric)
    n = algebra.dim
    kappa = curv.scalar / (n * (n - 1))
    g = metric.gram
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    expect = kappa * (g[j][k] * (1 if m == i else 0)
                                      - g[i][k] * (1 if m == j else 0))
                    if curv.riemann[i][j][k][m] != expect:
                        return None
    return kappa


@dataclass
class AdaptedBasis:
    """Frame (e1, e2, e3) with Gram matrix = scale * [[0,0,1],[0,1,0],[1,0,0]]
    in the order (e1, e2, e3) -> rows/cols (1,2,3); e1 is the given isotropic
    vector.  scale is 1 whenever the required normalization is a rational
    square, otherwise the rational scale class is reported instead of an
    irrational stretch.
    """

    e1: Vec
    e2: Vec
    e3: Vec
    scale: Fraction

    def matrix(self) -> Mat:
        return transpose([self.e1, self.e2, self.e3])

    def gram_residual(self, metric: InvariantMetric) -> list:
        s = self.scale
        pairs = [(self.e1, self.e1, 0), (self.e1, self.e2, 0), (self.e2, self.e2, s),
                 (self.e3, self.e3, 0), (self.e2, self.e3, 0), (self.e3, self.e1, s)]
        return [metric.inner(u, v) - w for u, v, w in pairs]


def adapted_basis(metric: InvariantMetric, e1: Sequence) -> AdaptedBasis:
    """Deterministic adapted frame for an isotropic direction e1."""
    e1 = vec(e1)
    if all(x == 0 for x in e1):
        raise NotIsotropic("e1 must be nonzero")
    if metric.norm2(e1) != 0:
        raise NotIsotropic("e1 has nonzero norm %s" % (metric.norm2(e1),))
    if not metric.is_lorentzian():
        raise DegenerateMetric("adapted bases need a lorentzian metric")
    row = [mat_vec(metric.gram, e1)]
    perp = nullspace(row)
    candidates = list(perp)
    candidates += [[a + b for a, b in zip(perp[0], perp[1])],
                   [a - b for a, b in zip(perp[0], perp[1])]]
    e2 = next(v for v in candidates if metric.norm2(v) > 0)
    rho = metric.norm2(e2)
    root = sqrt_fraction(rho)
    if root is not None:
        e2 = [x / root for x in e2]
        scale = Fraction(1)
    else:
        scale = rho
    # the second isotropic direction of the lorentz plane orthogonal to e2
    perp2 = nullspace([mat_vec(metric.gram, e2)])
    w = next(v for v in perp2 if not _parallel(v, e1))
    t = -metric.norm2(w) / (2 * metric.inner(w, e1))
    e3 = [a + t * b for a, b in zip(w, e1)]
    pairing = metric.inner(e3, e1)
    e3 = [x * scale / pairing for x in e3]
    basis = AdaptedBasis(e1, e2, e3, scale)
    assert all(r == 0 for r in basis.gram_residual(metric))
    return basis


def _parallel(u: Sequence, v: Sequence) -> bool:
    n = len(u)
    for i in range(n):
        for j in range(n):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


def parallel_fields(conn: ConnectionCoefficients) -> list:
    """Left-invariant vector fields v with nabla v = 0 (frame condition)."""
    n = conn.dim
    rows = []
    for i in range(n):
        for k in range(n):
            rows.append([conn.gamma[i][l][k] for l in range(n)])
    return nullspace(rows, cols=n)
