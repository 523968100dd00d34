"""Integer fast path for the bulk isotropy-dimension sweep.

Only dimensions are needed there, and those are invariant under scaling
the metric and rescaling the basis, so structure constants and Gram
entries are cleared to integers and the whole curvature/annihilator
pipeline runs on machine integers; fractions appear only in the tiny
reduced systems.  Cross-validated against the exact path in the tests.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .exactlin import nullspace


def _int_reduce(rows, cols):
    """Fraction-free elimination; returns the (<= cols) independent rows."""
    m = []
    for r in rows:
        if any(r):
            m.append(list(r))
    rank = 0
    col = 0
    nrows = len(m)
    while col < cols and rank < nrows:
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        pv = pr[col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            if f:
                row = m[r]
                for c2 in range(col, cols):
                    row[c2] = row[c2] * pv - pr[c2] * f
                g = 0
                for x in row:
                    g = math.gcd(g, x if x >= 0 else -x)
                if g > 1:
                    for c2 in range(cols):
                        row[c2] //= g
        rank += 1
        col += 1
    return m[:rank]


def _int_nullspace(reduced, cols):
    """Nullspace vectors from the already-reduced integer rows."""
    if not reduced:
        return [[Fraction(1 if i == j else 0) for j in range(cols)] for i in range(cols)]
    frac_rows = [[Fraction(x) for x in r] for r in reduced]
    return nullspace(frac_rows, cols=cols)


def prolongation_dims(c_int, s_int, cap: int = 3):
    """(final dimension, cap_reached) for integer structure constants and an
    integer lorentzian Gram matrix."""
    n = 3
    # inverse metric as adjugate / det; work with the adjugate only
    a = s_int
    adj = [[a[1][1] * a[2][2] - a[1][2] * a[2][1],
            a[0][2] * a[2][1] - a[0][1] * a[2][2],
            a[0][1] * a[1][2] - a[0][2] * a[1][1]],
           [a[1][2] * a[2][0] - a[1][0] * a[2][2],
            a[0][0] * a[2][2] - a[0][2] * a[2][0],
            a[0][2] * a[1][0] - a[0][0] * a[1][2]],
           [a[1][0] * a[2][1] - a[1][1] * a[2][0],
            a[0][1] * a[2][0] - a[0][0] * a[2][1],
            a[0][0] * a[1][1] - a[0][1] * a[1][0]]]
    dd = sum(a[0][k] * adj[k][0] for k in range(3))
    if dd == 0:
        raise ValueError("degenerate metric")

    def inner(u, v):
        return sum(u[i] * a[i][j] * v[j] for i in range(3) for j in range(3))

    e = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    br = [[[c_int[i][j][k] for k in range(3)] for j in range(3)] for i in range(3)]

    # gamma scaled by 2*det: gam[i][j] = 2*det * nabla_{e_i} e_j
    gam = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            k2 = [inner(br[i][j], e[k]) - inner(br[j][k], e[i]) + inner(br[k][i], e[j])
                  for k in range(3)]
            gam[i][j] = [sum(adj[l][k] * k2[k] for k in range(3)) for l in range(3)]

    def nab(i, v):
        # nabla scaled by 2*det against an unscaled vector
        out = [0, 0, 0]
        for l in range(3):
            if v[l]:
                g = gam[i][l]
                for k in range(3):
                    out[k] += v[l] * g[k]
        return out

    # curvature scaled by (2*det)^2: the bracket term carries only one
    # connection factor and needs the extra 2*det to match
    riem = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            w = br[i][j]
            for k in range(3):
                t1 = nab(i, gam[j][k])
                t2 = nab(j, gam[i][k])
                t3 = [0, 0, 0]
                for l in range(3):
                    if w[l]:
                        g = gam[l][k]
                        for m in range(3):
                            t3[m] += w[l] * g[m]
                riem[i][j][k] = [t1[m] - t2[m] - 2 * dd * t3[m] for m in range(3)]

    # skew algebra: integer basis
    rows = []
    for i in range(3):
        for j in range(i, 3):
            row = []
            for r in range(3):
                for c2 in range(3):
                    coef = 0
                    if c2 == j:
                        coef += a[i][r]
                    if c2 == i:
                        coef += a[j][r]
                    row.append(coef)
            rows.append(row)
    gens = []
    for v in _int_nullspace(_int_reduce(rows, 9), 9):
        den = math.lcm(*[x.denominator for x in v])
        ints = [int(x * den) for x in v]
        gens.append([ints[r * 3:(r + 1) * 3] for r in range(3)])

    tensor = riem
    slots = 3
    order = 0
    conn_list = gam  # scaled connection for covariant derivatives
    while True:
        if not gens:
            return 0, False
        rows = _derivation_rows_int(gens, tensor, slots)
        dim_before = len(gens)
        reduced = _int_reduce(rows, dim_before)
        nullity = dim_before - len(reduced)
        if nullity == dim_before:
            break
        if nullity == 0:
            return 0, False
        new_gens = []
        for s in _int_nullspace(reduced, dim_before):
            den = math.lcm(*[x.denominator for x in s])
            coeffs = [int(x * den) for x in s]
            g = [[0] * 3 for _ in range(3)]
            for cf, base in zip(coeffs, gens):
                if cf:
                    for r in range(3):
                        for c2 in range(3):
                            g[r][c2] += cf * base[r][c2]
            new_gens.append(g)
        gens = new_gens
        if order == cap:
            return len(gens), True
        order += 1
        tensor = _covariant_int(conn_list, tensor, slots)
        slots += 1
    return len(gens), False


def _derivation_rows_int(gens, tensor, slots):
    rows = []
    rng = range(3)
    for idx in itertools.product(rng, repeat=slots):
        base = tensor
        for i in idx:
            base = base[i]
        per_gen = []
        for g in gens:
            acted = [sum(g[m][k] * base[k] for k in rng) for m in rng]
            for pos in range(slots):
                for m in rng:
                    coef = g[m][idx[pos]]
                    if coef:
                        other = tensor
                        for t, i in enumerate(idx):
                            other = other[m if t == pos else i]
                        for c2 in rng:
                            acted[c2] -= coef * other[c2]
            per_gen.append(acted)
        for comp in rng:
            rows.append([pg[comp] for pg in per_gen])
    return rows


def _covariant_int(gam, tensor, slots):
    """Covariant derivative with the scaled connection; overall scale grows
    by one factor, which is harmless for nullspace dimensions."""
    rng = range(3)

    def get(idx):
        t = tensor
        for i in idx:
            t = t[i]
        return t

    out = []
    for w in rng:
        def derive(depth, idx):
            if depth == slots:
                base = get(idx)
                res = [sum(gam[w][l][k] * base[l] for l in rng) for k in rng]
                for pos in range(slots):
                    for m in rng:
                        coef = gam[w][idx[pos]][m]
                        if coef:
                            other = get(idx[:pos] + (m,) + idx[pos + 1:])
                            for c2 in rng:
                                res[c2] -= coef * other[c2]
                return res
            return [derive(depth + 1, idx + (i,)) for i in rng]
        out.append(derive(0, ()))
    return out


# ---------------------------------------------------------------------------
# sample generation for the sweep
# ---------------------------------------------------------------------------

def _elementary(rng: random.Random):
    p = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    kind = rng.randrange(3)
    i, j = rng.sample(range(3), 2)
    if kind == 0:
        p[i][j] = rng.choice([-2, -1, 1, 2])
    elif kind == 1:
        p[i][i], p[j][j] = 0, 0
        p[i][j], p[j][i] = 1, 1
    else:
        p[i][i] = -1
    return p


def _mat_mul_int(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)]
            for i in range(3)]


def random_unimodular(rng: random.Random, steps: int = 6):
    p = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    for _ in range(steps):
        p = _mat_mul_int(p, _elementary(rng))
    return p


def _conjugate_int(c, p):
    """Integer conjugation by a determinant +-1 matrix: constants stay integral."""
    detp = (p[0][0] * (p[1][1] * p[2][2] - p[1][2] * p[2][1])
            - p[0][1] * (p[1][0] * p[2][2] - p[1][2] * p[2][0])
            + p[0][2] * (p[1][0] * p[2][1] - p[1][1] * p[2][0]))
    adj = [[p[1][1] * p[2][2] - p[1][2] * p[2][1],
            p[0][2] * p[2][1] - p[0][1] * p[2][2],
            p[0][1] * p[1][2] - p[0][2] * p[1][1]],
           [p[1][2] * p[2][0] - p[1][0] * p[2][2],
            p[0][0] * p[2][2] - p[0][2] * p[2][0],
            p[0][2] * p[1][0] - p[0][0] * p[1][2]],
           [p[1][0] * p[2][1] - p[1][1] * p[2][0],
            p[0][1] * p[2][0] - p[0][0] * p[2][1],
            p[0][0] * p[1][1] - p[0][1] * p[1][0]]]
    pinv = [[adj[i][j] * detp for j in range(3)] for i in range(3)]  # det = +-1
    cols = [[p[i][j] for i in range(3)] for j in range(3)]

    def bracket(x, y):
        out = [0, 0, 0]
        for i in range(3):
            if x[i]:
                for j in range(3):
                    if y[j]:
                        for k in range(3):
                            out[k] += x[i] * y[j] * c[i][j][k]
        return out

    newc = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            w = bracket(cols[i], cols[j])
            for k in range(3):
                newc[i][j][k] = sum(pinv[k][l] * w[l] for l in range(3))
    return newc


def _base_constants(rng: random.Random):
    """Integer structure constants from the families that exhaust dim 3."""
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]

    def setb(i, j, v):
        c[i][j] = list(v)
        c[j][i] = [-x for x in v]

    kind = rng.randrange(6)
    if kind == 0:
        pass  # abelian
    elif kind == 1:
        setb(1, 2, (rng.choice([1, 2, -1]), 0, 0))  # heis-like
    elif kind == 2:
        # r ltimes r^2 with an arbitrary integer action on the plane
        mvals = [rng.randrange(-2, 3) for _ in range(4)]
        setb(0, 2, (-mvals[0], -mvals[2], 0))
        setb(1, 2, (-mvals[1], -mvals[3], 0))
    elif kind == 3:
        setb(0, 1, (0, 1, 0))
        setb(0, 2, (0, 0, -1))
        setb(1, 2, (-2, 0, 0))  # sl2
    elif kind == 4:
        setb(0, 1, (0, 0, 1))
        setb(1, 2, (1, 0, 0))
        setb(0, 2, (0, -1, 0))  # su2
    else:
        setb(0, 2, (-1, 0, 0))
        setb(1, 2, (0, 1, 0))  # sol
    return c


def _is_lorentzian_int(g):
    """Signature (2,1) test on an integer symmetric 3x3 matrix: determinant
    negative and not negative definite."""
    d = (g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
         - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
         + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]))
    if d >= 0:
        return False
    negdef = g[0][0] < 0 and (g[0][0] * g[1][1] - g[0][1] * g[0][1]) > 0
    return not negdef


def random_lorentz_sample(rng: random.Random):
    """One valid (integer constants, integer lorentzian Gram) pair."""
    c = _conjugate_int(_base_constants(rng), random_unimodular(rng))
    while True:
        g = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                g[i][j] = g[j][i] = rng.randrange(-4, 5)
        if _is_lorentzian_int(g):
            return c, g


def killing_dimension_sweep(samples: int, seed: int, cap: int = 3):
    """Returns (counts by isotropy dim, violations list, cap-hit count)."""
    rng = random.Random(seed)
    counts = {0: 0, 1: 0, 3: 0}
    violations = []
    cap_hits = 0
    for k in range(samples):
        c, g = random_lorentz_sample(rng)
        dim, capped = prolongation_dims(c, g, cap=cap)
        if capped:
            cap_hits += 1
        if dim in counts:
            counts[dim] += 1
        else:
            violations.append((k, c, g, dim))
    return counts, violations, cap_hits
