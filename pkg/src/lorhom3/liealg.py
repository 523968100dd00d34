"""Real Lie algebras in dimension 3 and 4, given by exact structure constants.

A basis change matrix P always has the new basis vectors as *columns*,
written in the old coordinates: f_j = sum_i P[i][j] e_i.  Gram matrices
transform as S -> P^T S P under the same convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (
    Mat, Vec, det, identity, in_span, inverse, mat_mul, mat_vec, nullspace,
    primitive_int_vector, rank, row_space_basis, signature, solve,
    sqrt_fraction, transpose, vec, zeros,
)


class JacobiViolation(ValueError):
    """Raised by validate(); carries the first failing index tuple (i,j,l,k)."""

    def __init__(self, indices):
        self.indices = indices
        super().__init__("Jacobi identity fails at (i, j, l, k) = %s" % (indices,))


class LieAlgebra:
    """Structure constants c^k_{ij} with [e_i, e_j] = sum_k c^k_{ij} e_k.

    Constants are supplied for i < j only; the antisymmetric closure is
    generated, so antisymmetry holds by construction.
    """

    def __init__(self, dim: int, brackets=None, basis_names: Optional[Sequence[str]] = None):
        self.dim = dim
        self.basis_names = list(basis_names) if basis_names else ["e%d" % (i + 1) for i in range(dim)]
        if len(self.basis_names) != dim:
            raise ValueError("need %d basis names" % dim)
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in (brackets or {}).items():
            if not 0 <= i < j < dim:
                raise ValueError("bracket key (%d, %d) must satisfy 0 <= i < j < dim" % (i, j))
            w = vec(v)
            c[i][j] = w
            c[j][i] = [-x for x in w]
        self.c = c

    def bracket(self, x: Sequence, y: Sequence) -> Vec:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                cij = self.c[i][j]
                for k in range(self.dim):
                    if cij[k] != 0:
                        out[k] += xi * yj * cij[k]
        return out

    def basis_vector(self, i: int) -> Vec:
        return [Fraction(1 if j == i else 0) for j in range(self.dim)]

    def name_index(self, name: str) -> int:
        return self.basis_names.index(name)

    def constants_equal(self, other: "LieAlgebra") -> bool:
        return self.dim == other.dim and self.c == other.c

    def __repr__(self):
        return "LieAlgebra(dim=%d, basis=%s)" % (self.dim, self.basis_names)


def validate(algebra: LieAlgebra) -> None:
    """Check the Jacobi identity exactly; raise JacobiViolation on failure."""
    n = algebra.dim
    e = [algebra.basis_vector(i) for i in range(n)]
    for i, j, l in itertools.combinations(range(n), 3):
        s = algebra.bracket(algebra.bracket(e[i], e[j]), e[l])
        s = [a + b for a, b in zip(s, algebra.bracket(algebra.bracket(e[j], e[l]), e[i]))]
        s = [a + b for a, b in zip(s, algebra.bracket(algebra.bracket(e[l], e[i]), e[j]))]
        for k in range(n):
            if s[k] != 0:
                raise JacobiViolation((i, j, l, k))


def is_valid(algebra: LieAlgebra) -> bool:
    try:
        validate(algebra)
        return True
    except JacobiViolation:
        return False


def ad_matrix(algebra: LieAlgebra, x: Sequence) -> Mat:
    """Matrix of y -> [x, y] in the given basis."""
    n = algebra.dim
    cols = [algebra.bracket(x, algebra.basis_vector(j)) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def killing_form(algebra: LieAlgebra) -> Mat:
    n = algebra.dim
    ads = [ad_matrix(algebra, algebra.basis_vector(i)) for i in range(n)]
    b = zeros(n)
    for i in range(n):
        for j in range(i, n):
            t = sum(ads[i][r][s] * ads[j][s][r] for r in range(n) for s in range(n))
            b[i][j] = b[j][i] = t
    return b


def _bracket_span(algebra: LieAlgebra, left: list, right: list) -> list:
    vecs = [algebra.bracket(u, v) for u in left for v in right]
    vecs = [v for v in vecs if any(x != 0 for x in v)]
    return row_space_basis(vecs) if vecs else []


def derived_algebra(algebra: LieAlgebra) -> list:
    basis = [algebra.basis_vector(i) for i in range(algebra.dim)]
    return _bracket_span(algebra, basis, basis)


def derived_series(algebra: LieAlgebra) -> list:
    """[g, g^(1), ...] down to the first repetition; starts at g^(1)."""
    series = []
    current = [algebra.basis_vector(i) for i in range(algebra.dim)]
    while True:
        nxt = _bracket_span(algebra, current, current)
        if series and len(nxt) == len(series[-1]):
            break
        series.append(nxt)
        current = nxt
        if not nxt:
            break
    return series


def lower_central_series(algebra: LieAlgebra) -> list:
    full = [algebra.basis_vector(i) for i in range(algebra.dim)]
    series = []
    current = full
    while True:
        nxt = _bracket_span(algebra, full, current)
        if series and len(nxt) == len(series[-1]):
            break
        series.append(nxt)
        current = nxt
        if not nxt:
            break
    return series


def center(algebra: LieAlgebra) -> list:
    n = algebra.dim
    rows = []
    for j in range(n):
        adj = ad_matrix(algebra, algebra.basis_vector(j))
        # x central iff [e_j, x] = 0 for all j; rows of ad(e_j) stack up
        rows.extend(adj)
    return nullspace(rows, cols=n)


def is_unimodular(algebra: LieAlgebra) -> bool:
    n = algebra.dim
    for i in range(n):
        a = ad_matrix(algebra, algebra.basis_vector(i))
        if sum(a[k][k] for k in range(n)) != 0:
            return False
    return True


def is_solvable(algebra: LieAlgebra) -> bool:
    series = derived_series(algebra)
    return not series or not series[-1]


def is_nilpotent(algebra: LieAlgebra) -> bool:
    series = lower_central_series(algebra)
    return not series or not series[-1]


def is_abelian(algebra: LieAlgebra) -> bool:
    return not derived_algebra(algebra)


def conjugate(algebra: LieAlgebra, p: Mat, basis_names=None) -> LieAlgebra:
    """Structure constants in the new basis f_j = sum_i P[i][j] e_i."""
    n = algebra.dim
    pinv = inverse(p)
    cols = [[p[i][j] for i in range(n)] for j in range(n)]
    new = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = algebra.bracket(cols[i], cols[j])
            new[(i, j)] = mat_vec(pinv, w)
    return LieAlgebra(n, new, basis_names or algebra.basis_names)


# ---------------------------------------------------------------------------
# recognition of 3-dimensional algebras
# ---------------------------------------------------------------------------

class AlgebraTag(Enum):
    ABELIAN = "abelian"
    HEIS = "heis"
    SOL = "sol"
    SL2 = "sl2"
    SU2 = "su2"
    EUCLID2_COVER = "euclid2_cover"
    OTHER = "other"


@dataclass
class AlgebraIdentity:
    """Isomorphism class plus, when one exists over Q, an exact witness.

    The witness P conjugates the input constants to the reference
    presentation of the tag.  A rational witness need not exist even when
    the real isomorphism class is certain (the class is decided by
    invariants); in that case witness is None and note says why.
    """

    tag: AlgebraTag
    witness: Optional[Mat]
    note: str = ""


def reference_algebra(tag: AlgebraTag) -> LieAlgebra:
    if tag == AlgebraTag.ABELIAN:
        return LieAlgebra(3, {}, ["e1", "e2", "e3"])
    if tag == AlgebraTag.HEIS:
        # central X', [Z, T] = X'
        return LieAlgebra(3, {(1, 2): (1, 0, 0)}, ["X'", "Z", "T"])
    if tag == AlgebraTag.SOL:
        # [T, X] = X, [T, Z] = -Z
        return LieAlgebra(3, {(0, 2): (-1, 0, 0), (1, 2): (0, 1, 0)}, ["X", "Z", "T"])
    if tag == AlgebraTag.SL2:
        # [X', Y] = Y, [X', Z] = -Z, [Z, Y] = 2 X'
        return LieAlgebra(3, {(0, 1): (0, 1, 0), (0, 2): (0, 0, -1), (1, 2): (-2, 0, 0)},
                          ["X'", "Y", "Z"])
    if tag == AlgebraTag.EUCLID2_COVER:
        # [T, X] = Z, [T, Z] = -X
        return LieAlgebra(3, {(0, 2): (0, -1, 0), (1, 2): (1, 0, 0)}, ["X", "Z", "T"])
    if tag == AlgebraTag.SU2:
        return LieAlgebra(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0)},
                          ["e1", "e2", "e3"])
    raise ValueError("no reference presentation for %s" % tag)


def witness_checks(algebra: LieAlgebra, tag: AlgebraTag, p: Mat) -> bool:
    return conjugate(algebra, p).constants_equal(reference_algebra(tag))


def _complement_indices(space_basis: list, dim: int) -> list:
    out = []
    current = [list(v) for v in space_basis]
    for i in range(dim):
        candidate = [Fraction(1 if j == i else 0) for j in range(dim)]
        if not in_span(candidate, current):
            out.append(i)
            current = current + [candidate]
    return out


def _coords_in(vspace: list, v: Sequence) -> Optional[Vec]:
    cols = transpose([list(u) for u in vspace])
    return solve(cols, v)


def recognize_algebra3(algebra: LieAlgebra) -> AlgebraIdentity:
    """Identify the real isomorphism class of a valid 3-dimensional algebra.

    Screening is by exact invariants (derived dimension, centrality,
    unimodularity, Killing signature); the witness, when rational data
    allow one, is built structurally rather than by blind search.
    """
    if algebra.dim != 3:
        raise ValueError("recognize_algebra3 needs dim 3")
    validate(algebra)
    derived = derived_algebra(algebra)
    d = len(derived)

    if d == 0:
        return AlgebraIdentity(AlgebraTag.ABELIAN, identity(3))

    if d == 1:
        gen = derived[0]
        central = all(not any(x != 0 for x in algebra.bracket(gen, algebra.basis_vector(i)))
                      for i in range(3))
        if not central:
            return AlgebraIdentity(AlgebraTag.OTHER, None,
                                   "1-dimensional non-central derived algebra")
        u_idx = _complement_indices(derived, 3)
        u = algebra.basis_vector(u_idx[0])
        v = algebra.basis_vector(u_idx[1])
        w = algebra.bracket(u, v)
        mu = _coords_in([gen], w)[0]
        z = [x / mu for x in u]
        p = transpose([list(gen), z, list(v)])
        assert witness_checks(algebra, AlgebraTag.HEIS, p)
        return AlgebraIdentity(AlgebraTag.HEIS, p)

    if d == 2:
        return _recognize_derived2(algebra, derived)

    return _recognize_semisimple(algebra)


def _recognize_derived2(algebra: LieAlgebra, derived: list) -> AlgebraIdentity:
    d1, d2 = derived
    if any(x != 0 for x in algebra.bracket(d1, d2)):
        return AlgebraIdentity(AlgebraTag.OTHER, None, "non-abelian derived plane")
    t_idx = _complement_indices(derived, 3)[0]
    t0 = algebra.basis_vector(t_idx)
    # action of ad(t0) on the derived plane, in the (d1, d2) coordinates
    col1 = _coords_in(derived, algebra.bracket(t0, d1))
    col2 = _coords_in(derived, algebra.bracket(t0, d2))
    tau = [[col1[0], col2[0]], [col1[1], col2[1]]]
    tr = tau[0][0] + tau[1][1]
    dt = tau[0][0] * tau[1][1] - tau[0][1] * tau[1][0]
    if tr != 0:
        return AlgebraIdentity(AlgebraTag.OTHER, None,
                               "non-unimodular action on the derived plane")
    if dt < 0:
        lam = sqrt_fraction(-dt)
        if lam is None:
            return AlgebraIdentity(AlgebraTag.SOL, None,
                                   "eigenvalue ratio is irrational; no rational witness")
        x2 = nullspace([[tau[0][0] - lam, tau[0][1]], [tau[1][0], tau[1][1] - lam]])[0]
        z2 = nullspace([[tau[0][0] + lam, tau[0][1]], [tau[1][0], tau[1][1] + lam]])[0]
        xv = vec_comb(derived, x2)
        zv = vec_comb(derived, z2)
        tv = [x / lam for x in t0]
        p = transpose([xv, zv, tv])
        assert witness_checks(algebra, AlgebraTag.SOL, p)
        return AlgebraIdentity(AlgebraTag.SOL, p)
    # dt > 0: rotation type
    lam = sqrt_fraction(dt)
    if lam is None:
        return AlgebraIdentity(AlgebraTag.EUCLID2_COVER, None,
                               "rotation rate is irrational; no rational witness")
    tv = [x / lam for x in t0]
    xv = list(d1)
    zv = algebra.bracket(tv, xv)
    p = transpose([xv, zv, tv])
    assert witness_checks(algebra, AlgebraTag.EUCLID2_COVER, p)
    return AlgebraIdentity(AlgebraTag.EUCLID2_COVER, p)


def vec_comb(basis: list, coeffs: Sequence) -> Vec:
    out = [Fraction(0)] * len(basis[0])
    for c, b in zip(coeffs, basis):
        for i, x in enumerate(b):
            out[i] += c * x
    return out


def _recognize_semisimple(algebra: LieAlgebra) -> AlgebraIdentity:
    b = killing_form(algebra)
    sig = signature(b)
    if sig == (0, 3, 0):
        return AlgebraIdentity(AlgebraTag.SU2, None, "negative definite trace form")
    if sig != (2, 1, 0):
        return AlgebraIdentity(AlgebraTag.OTHER, None,
                               "unexpected trace form signature %s" % (sig,))
    e = _find_isotropic(b)
    if e is None:
        return AlgebraIdentity(AlgebraTag.SL2, None,
                               "no rational nilpotent found within the search bound")
    # complete e to a standard triple: solve ad(e)^2 f = -2 e, then correct f
    ade = ad_matrix(algebra, e)
    ade2 = mat_mul(ade, ade)
    f0 = solve(ade2, [-2 * x for x in e])
    if f0 is None:
        return AlgebraIdentity(AlgebraTag.SL2, None,
                               "nilpotent is not regular; no witness built")
    h0 = algebra.bracket(e, f0)
    # [h0, f0] = -2 f0 + p e  (the h0 component vanishes by trace-form identities)
    w = algebra.bracket(h0, f0)
    resid = [a + 2 * x for a, x in zip(w, f0)]
    pcoef = _coords_in([e, h0, f0], resid)
    f = [a - (pcoef[0] / 4) * x for a, x in zip(f0, e)]
    xv = [x / 2 for x in h0]
    zv = [-x for x in f]
    p = transpose([xv, list(e), zv])
    if det(p) == 0 or not witness_checks(algebra, AlgebraTag.SL2, p):
        return AlgebraIdentity(AlgebraTag.SL2, None, "triple completion degenerated")
    return AlgebraIdentity(AlgebraTag.SL2, p)


def _find_isotropic(b: Mat, bound: int = 12) -> Optional[Vec]:
    """Small-height rational isotropic vector of an indefinite form, if any."""
    def q(v):
        return sum(v[i] * b[i][j] * v[j] for i in range(3) for j in range(3))

    for height in range(1, bound + 1):
        for x in range(-height, height + 1):
            for y in range(-height, height + 1):
                for z in range(-height, height + 1):
                    if max(abs(x), abs(y), abs(z)) != height:
                        continue
                    v = [Fraction(x), Fraction(y), Fraction(z)]
                    if q(v) == 0:
                        return primitive_int_vector(v)
    return None
