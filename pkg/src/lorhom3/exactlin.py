"""Exact linear algebra over the rationals.

Matrices are lists of row lists and vectors are flat lists, all with
``fractions.Fraction`` entries.  No floating point enters any routine here;
callers that need floats convert at the very end.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = list
Mat = list


class SingularMatrix(ValueError):
    pass


def frac(x) -> Fraction:
    """Coerce ints, strings like '-3/7' and Fractions; floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating point value %r rejected in exact context" % (x,))
    return Fraction(x)


def vec(entries) -> Vec:
    return [frac(x) for x in entries]


def mat(rows) -> Mat:
    return [vec(r) for r in rows]


def zeros(n: int, m: Optional[int] = None) -> Mat:
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Mat:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_copy(a: Mat) -> Mat:
    return [row[:] for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Mat, v: Sequence) -> Vec:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Mat, s) -> Mat:
    s = frac(s)
    return [[s * x for x in row] for row in a]


def vec_add(u, v) -> Vec:
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v) -> Vec:
    return [x - y for x, y in zip(u, v)]


def vec_scale(u, s) -> Vec:
    s = frac(s)
    return [s * x for x in u]


def is_zero_vec(u) -> bool:
    return all(x == 0 for x in u)


def is_zero_mat(a) -> bool:
    return all(x == 0 for row in a for x in row)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def det(a: Mat) -> Fraction:
    m = mat_copy(a)
    n = len(m)
    d = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            d = -d
        d *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return d


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [row[:] + identity(n)[i] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def rref(a: Mat):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Mat) -> int:
    if not a:
        return 0
    return len(rref(a)[1])


def primitive_int_vector(v: Sequence) -> Vec:
    """Clear denominators, divide by the gcd and make the first nonzero entry
    positive.  Gives a canonical representative of the line through v."""
    v = [frac(x) for x in v]
    den = math.lcm(*[x.denominator for x in v]) if v else 1
    ints = [int(x * den) for x in v]
    g = math.gcd(*[abs(x) for x in ints]) if any(ints) else 1
    if g == 0:
        g = 1
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return [Fraction(x) for x in ints]


def nullspace(a: Mat, cols: Optional[int] = None) -> list:
    """Basis of the right nullspace, as canonical primitive integer vectors."""
    if not a:
        return [identity(cols)[i] for i in range(cols)] if cols else []
    n = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(primitive_int_vector(v))
    return basis


def solve(a: Mat, b: Sequence) -> Optional[Vec]:
    """One solution of a x = b, or None when inconsistent."""
    rows = len(a)
    n = len(a[0]) if rows else 0
    aug = [a[i][:] + [frac(b[i])] for i in range(rows)]
    red, pivots = rref(aug)
    for r in range(len(pivots), rows):
        if red[r][n] != 0:
            return None
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def row_space_basis(a: Mat) -> list:
    red, pivots = rref(a)
    return [primitive_int_vector(red[r]) for r in range(len(pivots))]


def same_span(a: Iterable, b: Iterable) -> bool:
    a = [list(v) for v in a]
    b = [list(v) for v in b]
    if not a and not b:
        return True
    if bool(a) != bool(b):
        return False
    return row_space_basis(a) == row_space_basis(b)


def in_span(v: Sequence, basis: Iterable) -> bool:
    basis = [list(u) for u in basis]
    if not basis:
        return is_zero_vec(v)
    return rank(basis) == rank(basis + [list(v)])


def signature(s: Mat):
    """Exact signature (positive, negative, zero) of a symmetric matrix.

    Congruence diagonalization with symmetric pivoting; when only an
    off-diagonal pivot is available the classic e_i -> e_i + e_j move makes
    the diagonal entry nonzero.  Everything stays rational.
    """
    m = mat_copy(s)
    n = len(m)
    pos = neg = zero = 0
    for k in range(n):
        if m[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if swap is not None:
                for i in range(n):
                    m[i][k], m[i][swap] = m[i][swap], m[i][k]
                m[k], m[swap] = m[swap], m[k]
            else:
                off = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if off is None:
                    zero += 1
                    continue
                for i in range(n):
                    m[i][k] += m[i][off]
                m[k] = [x + y for x, y in zip(m[k], m[off])]
        pv = m[k][k]
        if pv > 0:
            pos += 1
        else:
            neg += 1
        for j in range(k + 1, n):
            if m[k][j] != 0:
                f = m[k][j] / pv
                for i in range(n):
                    m[i][j] -= f * m[i][k]
                m[j] = [x - f * y for x, y in zip(m[j], m[k])]
    return pos, neg, zero


def sqrt_fraction(q: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None when irrational."""
    q = frac(q)
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# small univariate polynomial helpers (ascending coefficient lists)
# ---------------------------------------------------------------------------

def char_poly_3x3(a: Mat) -> list:
    """Characteristic polynomial det(x I - A) of a 3x3 matrix, ascending."""
    tr = a[0][0] + a[1][1] + a[2][2]
    m2 = (a[0][0] * a[1][1] - a[0][1] * a[1][0]
          + a[0][0] * a[2][2] - a[0][2] * a[2][0]
          + a[1][1] * a[2][2] - a[1][2] * a[2][1])
    return [-det(a), m2, -tr, Fraction(1)]


def poly_degree(p: Sequence) -> int:
    d = len(p) - 1
    while d > 0 and p[d] == 0:
        d -= 1
    return d


def poly_derivative(p: Sequence) -> list:
    return [frac(i * c) for i, c in enumerate(p)][1:] or [Fraction(0)]


def poly_mod(p, q):
    p = [frac(x) for x in p]
    dq = poly_degree(q)
    lead = q[dq]
    while poly_degree(p) >= dq and any(x != 0 for x in p):
        dp = poly_degree(p)
        if p[dp] == 0:
            p = p[:dp]
            continue
        f = p[dp] / lead
        for i in range(dq + 1):
            p[dp - dq + i] -= f * q[i]
        p = p[:dp]
        if not p:
            p = [Fraction(0)]
    return p


def poly_gcd(p, q) -> list:
    """Monic gcd over Q."""
    p = [frac(x) for x in p]
    q = [frac(x) for x in q]
    while any(x != 0 for x in q):
        p, q = q, poly_mod(p, q)
    d = poly_degree(p)
    if p[d] == 0:
        return [Fraction(1)]
    return [x / p[d] for x in p[:d + 1]]


def rational_roots(p: Sequence) -> list:
    """All rational roots with multiplicity, via the rational root theorem."""
    p = [frac(x) for x in p]
    d = poly_degree(p)
    p = p[:d + 1]
    den = math.lcm(*[c.denominator for c in p])
    ip = [int(c * den) for c in p]
    roots = []
    while len(ip) > 1:
        low = next((i for i, c in enumerate(ip) if c != 0), None)
        if low is None:
            break
        if low > 0:
            roots.extend([Fraction(0)] * low)
            ip = ip[low:]
            continue
        a0, an = abs(ip[0]), abs(ip[-1])
        found = None
        for pnum in _divisors(a0):
            for pden in _divisors(an):
                for cand in (Fraction(pnum, pden), Fraction(-pnum, pden)):
                    if _poly_eval_int(ip, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        ip = _deflate_int(ip, found)
    return roots


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _poly_eval_int(ip, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(ip):
        acc = acc * x + c
    return acc


def _deflate_int(ip, root: Fraction):
    coeffs = [Fraction(c) for c in ip]
    out = []
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * root + c
        out.append(acc)
    out = out[:-1][::-1]
    den = math.lcm(*[c.denominator for c in out]) if out else 1
    return [int(c * den) for c in out]
