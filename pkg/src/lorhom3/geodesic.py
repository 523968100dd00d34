"""Body-frame geodesic flow of a left-invariant metric.

The geodesic equation reduces to the quadratic body equation
dv/dt = -Gamma(v, v) on the algebra.  Integration is an embedded
Dormand-Prince 5(4) pair with PI step control; finite-time blowup of the
body velocity is the implemented incompleteness witness.  Group-element
reconstruction is out of scope for the verdicts, so the probe can certify
incompleteness but never completeness; reports state this limitation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

from .exactlin import char_poly_3x3, inverse, mat_mul, poly_degree, poly_derivative, poly_gcd, rank, rational_roots
from .liealg import AlgebraTag, LieAlgebra, killing_form, recognize_algebra3
from .metric import ConnectionCoefficients, InvariantMetric, levi_civita

DEFAULT_RTOL = 1e-9
DEFAULT_ESCAPE_NORM = 1e6
DEFAULT_T_MAX = 100.0
H_MIN = 1e-12
# beyond this the floats themselves are the bottleneck, not the geometry;
# pole-like blowup collapses the step size around 1e10 already
FLOAT_RANGE_GUARD = 1e250


class ToleranceUnachievable(RuntimeError):
    """Step control collapsed without norm growth; reported, never truncated."""


class Verdict(Enum):
    REACHED_HORIZON = "reached_horizon"
    BLOWUP_DETECTED = "blowup_detected"


@dataclass
class GeodesicTrajectory:
    samples: list                    # (t, (v1, v2, v3)) at accepted steps
    energy0: float
    max_energy_drift: float
    verdict: Verdict
    t_low: Optional[float] = None    # bracket of the blowup time
    t_high: Optional[float] = None
    escape_norm: float = DEFAULT_ESCAPE_NORM
    rtol: float = DEFAULT_RTOL
    steps: int = 0

    @property
    def final(self):
        return self.samples[-1]


def euler_arnold_rhs(conn: ConnectionCoefficients, v: Sequence) -> list:
    """-Gamma(v, v) with symmetrized coefficients, exact when v is exact."""
    n = conn.dim
    out = [0] * n
    for k in range(n):
        acc = 0
        for i in range(n):
            for j in range(n):
                c = conn.gamma[i][j][k]
                if c != 0:
                    acc -= c * v[i] * v[j]
        out[k] = acc
    return out


def _float_quadratic(conn: ConnectionCoefficients):
    """Flatten -Gamma into a list of (k, i, j, coeff) with i <= j, floats."""
    n = conn.dim
    terms = []
    for k in range(n):
        for i in range(n):
            for j in range(i, n):
                c = conn.gamma[i][j][k] + (conn.gamma[j][i][k] if j != i else 0)
                if c != 0:
                    terms.append((k, i, j, -float(c)))
    return terms


def make_rhs(conn: ConnectionCoefficients) -> Callable:
    terms = _float_quadratic(conn)
    n = conn.dim

    def rhs(v):
        out = [0.0] * n
        for k, i, j, c in terms:
            out[k] += c * v[i] * v[j]
        return out

    return rhs


# Dormand-Prince 5(4) tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_ERR = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


def _norm2(v):
    return math.sqrt(sum(x * x for x in v))


def integrate_geodesic(algebra: LieAlgebra, metric: InvariantMetric, v0: Sequence,
                       t_max: float = DEFAULT_T_MAX, rtol: float = DEFAULT_RTOL,
                       escape_norm: float = DEFAULT_ESCAPE_NORM,
                       h_min: float = H_MIN, record: bool = True) -> GeodesicTrajectory:
    """Adaptive integration of the body equation up to t_max.

    Stops with ReachedHorizon at t_max, or BlowupDetected when the auxiliary
    euclidean norm of v exceeds escape_norm while the accepted step size
    falls below h_min (pole-like blowup makes the step collapse).  The
    bracket [t_low, t_high] is honest output: t_low is the last accepted
    time with norm below escape_norm, t_high extrapolates the remaining
    time from the quadratic growth rate with a safety factor.
    """
    if rtol <= 0:
        raise ValueError("rtol must be positive")
    if escape_norm <= 1:
        raise ValueError("escape_norm must exceed 1")
    conn = levi_civita(algebra, metric)
    rhs = make_rhs(conn)
    gram = [[float(x) for x in row] for row in metric.gram]
    n = algebra.dim

    def energy(v):
        return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))

    t = 0.0
    v = [float(x) for x in v0]
    e0 = energy(v)
    drift = 0.0
    atol = rtol
    samples = [(t, tuple(v))] if record else [(t, tuple(v))]
    t_low = 0.0
    steps = 0
    k1 = rhs(v)
    h = _initial_step(v, k1, rtol, atol)
    err_prev = 1.0
    while t < t_max:
        h = min(h, t_max - t)
        if h < h_min or t + h == t:
            nv = _norm2(v)
            if nv >= FLOAT_RANGE_GUARD:
                raise ToleranceUnachievable(
                    "body velocity exceeded the floating range at t=%.6g; "
                    "growth cannot be resolved, no verdict" % t)
            if nv > escape_norm:
                return _blowup(samples, e0, drift, t, v, rhs, t_low, escape_norm,
                               rtol, steps, record)
            raise ToleranceUnachievable(
                "step size collapsed to %.3e at t=%.6g without norm growth "
                "(|v| = %.3e)" % (h, t, nv))
        ks = [k1]
        for s in range(1, 7):
            vs = v[:]
            for idx, a in enumerate(_A[s]):
                if a != 0.0:
                    ki = ks[idx]
                    for c in range(n):
                        vs[c] += h * a * ki[c]
            ks.append(rhs(vs))
        v5 = v[:]
        for idx, b in enumerate(_B5):
            if b != 0.0:
                ki = ks[idx]
                for c in range(n):
                    v5[c] += h * b * ki[c]
        err = 0.0
        for c in range(n):
            diff = h * sum(e * ks[idx][c] for idx, e in enumerate(_ERR) if e != 0.0)
            sc = atol + rtol * max(abs(v[c]), abs(v5[c]))
            err += (diff / sc) ** 2
        err = math.sqrt(err / n)
        if err <= 1.0:
            t += h
            v = v5
            k1 = ks[6]  # FSAL: stage 7 sits at the accepted point
            steps += 1
            en = energy(v)
            d = abs(en - e0)
            if d > drift:
                drift = d
            nv = _norm2(v)
            if nv <= escape_norm:
                t_low = t
            if record:
                samples.append((t, tuple(v)))
            else:
                samples[-1] = (t, tuple(v))
            err_prev = max(err, 1e-10)
        # PI controller
        factor = 0.9 * (err + 1e-16) ** -0.14 * err_prev ** 0.08 \
            if err > 0 else 5.0
        factor = min(5.0, max(0.2, factor))
        h *= factor
    return GeodesicTrajectory(samples, e0, drift, Verdict.REACHED_HORIZON,
                              None, None, escape_norm, rtol, steps)


def _initial_step(v, k1, rtol, atol):
    d0 = _norm2(v)
    d1 = _norm2(k1)
    if d0 < 1e-5 or d1 < 1e-5:
        return 1e-6
    return 0.01 * d0 / d1


def _blowup(samples, e0, drift, t, v, rhs, t_low, escape_norm, rtol, steps, record):
    dv = rhs(v)
    nv = _norm2(v)
    ndv = _norm2(dv)
    remaining = nv / ndv if ndv > 0 else 0.0
    t_high = t + 10.0 * remaining + 1e3 * H_MIN * max(1.0, abs(t))
    if not record:
        samples = [samples[-1]]
    return GeodesicTrajectory(samples, e0, drift, Verdict.BLOWUP_DETECTED,
                              t_low, t_high, escape_norm, rtol, steps)


# ---------------------------------------------------------------------------
# completeness probe
# ---------------------------------------------------------------------------

class ProbeVerdict(Enum):
    NO_BLOWUP_FOUND_WITHIN_HORIZON = "no_blowup_found_within_horizon"
    INCOMPLETENESS_WITNESS = "incompleteness_witness"


@dataclass
class SamplerConfig:
    count: int = 64
    seed: int = 7
    t_max: float = DEFAULT_T_MAX
    rtol: float = DEFAULT_RTOL
    escape_norm: float = DEFAULT_ESCAPE_NORM


@dataclass
class ProbeReport:
    verdict: ProbeVerdict
    witness_v0: Optional[tuple]
    witness_bracket: Optional[tuple]
    max_energy_drift: float
    config: SamplerConfig
    per_sample: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    note: str = ("probe runs the body-velocity equation only; it can certify "
                 "incompleteness, never completeness, and does not cover "
                 "group-element reconstruction")


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def sample_directions(count: int, seed: int) -> list:
    """Frame directions followed by a seeded fibonacci sphere sweep."""
    dirs = []
    for i in range(3):
        for s in (1.0, -1.0):
            v = [0.0, 0.0, 0.0]
            v[i] = s
            dirs.append(tuple(v))
    offset = (seed * _GOLDEN) % 1.0
    k = 0
    while len(dirs) < count:
        z = 1.0 - 2.0 * (k + 0.5) / max(count - 6, 1)
        z = max(-1.0, min(1.0, z))
        phi = 2.0 * math.pi * ((k * _GOLDEN + offset) % 1.0)
        r = math.sqrt(max(0.0, 1.0 - z * z))
        dirs.append((r * math.cos(phi), r * math.sin(phi), z))
        k += 1
    return dirs[:count]


def completeness_probe(algebra: LieAlgebra, metric: InvariantMetric,
                       config: Optional[SamplerConfig] = None) -> ProbeReport:
    """Deterministic sweep of initial velocities; first blowup wins."""
    config = config or SamplerConfig()
    dirs = sample_directions(config.count, config.seed)
    max_drift = 0.0
    witness = None
    bracket = None
    per_sample = []
    failures = []
    for idx, v0 in enumerate(dirs):
        try:
            traj = integrate_geodesic(algebra, metric, v0, t_max=config.t_max,
                                      rtol=config.rtol,
                                      escape_norm=config.escape_norm,
                                      record=False)
        except ToleranceUnachievable as exc:
            failures.append((idx, v0, str(exc)))
            continue
        max_drift = max(max_drift, traj.max_energy_drift)
        per_sample.append((idx, v0, traj.verdict.value, traj.steps))
        if traj.verdict == Verdict.BLOWUP_DETECTED and witness is None:
            witness = v0
            bracket = (traj.t_low, traj.t_high)
    if witness is not None:
        return ProbeReport(ProbeVerdict.INCOMPLETENESS_WITNESS, witness, bracket,
                           max_drift, config, per_sample, failures)
    return ProbeReport(ProbeVerdict.NO_BLOWUP_FOUND_WITHIN_HORIZON, None, None,
                       max_drift, config, per_sample, failures)


# ---------------------------------------------------------------------------
# sl(2, R) completeness criterion
# ---------------------------------------------------------------------------

class NotSl2(ValueError):
    pass


class NotSymmetric(RuntimeError):
    """phi must be trace-form symmetric for a symmetric metric; a failure
    here is an internal inconsistency."""


class GlVerdict(Enum):
    COMPLETE = "complete"
    INCONCLUSIVE = "inconclusive"


@dataclass
class PhiEndomorphism:
    """phi with g(u, v) = q(phi u, v), q the trace form of the algebra."""

    phi: list
    q: list

    def symmetry_residual(self):
        bp = mat_mul(self.q, self.phi)
        n = len(bp)
        return [[bp[i][j] - bp[j][i] for j in range(n)] for i in range(n)]


@dataclass
class GlReport:
    verdict: GlVerdict
    phi: PhiEndomorphism
    eigen_multiplicities: list      # (rational eigenvalue, geometric multiplicity)


def gl_criterion(algebra: LieAlgebra, metric: InvariantMetric) -> GlReport:
    """Complete when some real eigenspace of phi = q^{-1} g has dimension >= 2.

    A geometric multiplicity >= 2 forces a repeated characteristic root,
    and a repeated root of a rational cubic is rational, so exact rational
    root extraction plus rank checks decide the criterion.
    """
    ident = recognize_algebra3(algebra)
    if ident.tag != AlgebraTag.SL2:
        raise NotSl2("algebra is %s, not sl2" % ident.tag.value)
    q = killing_form(algebra)
    phi = mat_mul(inverse(q), metric.gram)
    endo = PhiEndomorphism(phi, q)
    if any(x != 0 for row in endo.symmetry_residual() for x in row):
        raise NotSymmetric("phi is not trace-form symmetric")
    p = char_poly_3x3(phi)
    g = poly_gcd(p, poly_derivative(p))
    mults = []
    if poly_degree(g) >= 1:
        for root in set(rational_roots(g)):
            shifted = [[phi[i][j] - (root if i == j else 0) for j in range(3)]
                       for i in range(3)]
            geo = 3 - rank(shifted)
            mults.append((root, geo))
    mults.sort()
    if any(geo >= 2 for _, geo in mults):
        return GlReport(GlVerdict.COMPLETE, endo, mults)
    return GlReport(GlVerdict.INCONCLUSIVE, endo, mults)
