"""Machine-readable report documents.

Identical input, flags and seed must reproduce the document byte for byte:
keys are sorted, rationals are emitted as exact strings, floats via repr,
and no timestamps or environment data enter the payload.
"""

from __future__ import annotations

import json

from . import __version__
from .classify import ClassificationReport
from .geodesic import GeodesicTrajectory, GlReport, ProbeReport
from .inputdoc import format_rational


def provenance(seed=None, tolerances=None) -> dict:
    out = {"tool": "lorhom3", "version": __version__}
    if seed is not None:
        out["seed"] = seed
    if tolerances:
        out["tolerances"] = tolerances
    return out


def _frac(q):
    return None if q is None else format_rational(q)


def _matrix(m):
    return None if m is None else [[format_rational(x) for x in row] for row in m]


def classification_dict(report: ClassificationReport, seed=None) -> dict:
    doc = {
        "algebra": {
            "tag": report.algebra_tag.value,
            "witness_available": report.algebra_witness_available,
        },
        "curvature": {
            "constant_kappa": _frac(report.kappa),
            "scalar": _frac(report.scalar),
            "ricci_square_trace": _frac(report.ricci_square),
            "flat": report.flat,
        },
        "isotropy": {
            "dim": report.isotropy_dim,
            "type": report.isotropy_type.value,
            "cap_reached": report.cap_reached,
        },
        "killing_dim": report.killing_dim,
        "geometry_class": report.geometry_class.value,
        "flat_carrier": report.flat_carrier,
        "maximal_geometry": report.maximal_geometry.value,
        "completeness": report.completeness.value,
        "compact_realization": report.compact_realization,
        "warnings": list(report.warnings),
        "provenance": provenance(seed=seed),
    }
    if report.carrier_basis is not None:
        doc["transverse_subalgebra"] = [[format_rational(x) for x in v]
                                        for v in report.carrier_basis]
    if report.model_compact_realization is not None:
        doc["model_compact_realization"] = report.model_compact_realization
    return doc


def trajectory_dict(traj: GeodesicTrajectory, v0, seed=None,
                    max_samples: int = 2000) -> dict:
    samples = traj.samples
    if len(samples) > max_samples:
        stride = (len(samples) + max_samples - 1) // max_samples
        samples = samples[::stride] + [traj.samples[-1]]
    return {
        "verdict": traj.verdict.value,
        "v0": [repr(float(x)) for x in v0],
        "energy0": repr(traj.energy0),
        "max_energy_drift": repr(traj.max_energy_drift),
        "blowup_bracket": None if traj.t_low is None else
            [repr(traj.t_low), repr(traj.t_high)],
        "accepted_steps": traj.steps,
        "samples": [[repr(t)] + [repr(x) for x in v] for t, v in samples],
        "provenance": provenance(seed=seed, tolerances={
            "rtol": repr(traj.rtol), "escape_norm": repr(traj.escape_norm)}),
    }


def probe_dict(report: ProbeReport) -> dict:
    return {
        "verdict": report.verdict.value,
        "witness_v0": None if report.witness_v0 is None else
            [repr(x) for x in report.witness_v0],
        "witness_bracket": None if report.witness_bracket is None else
            [repr(x) for x in report.witness_bracket],
        "max_energy_drift": repr(report.max_energy_drift),
        "samples": report.config.count,
        "note": report.note,
        "failures": [[idx, [repr(x) for x in v0], msg]
                     for idx, v0, msg in report.failures],
        "provenance": provenance(seed=report.config.seed, tolerances={
            "rtol": repr(report.config.rtol),
            "escape_norm": repr(report.config.escape_norm),
            "t_max": repr(report.config.t_max)}),
    }


def gl_dict(report: GlReport) -> dict:
    return {
        "verdict": report.verdict.value,
        "phi": _matrix(report.phi.phi),
        "eigen_multiplicities": [[format_rational(lam), mult]
                                 for lam, mult in report.eigen_multiplicities],
        "provenance": provenance(),
    }


def to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
