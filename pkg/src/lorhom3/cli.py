"""Command-line front end.

Exit codes are a stable contract: 0 success, 2 unknown name, 3 invalid
input, 4 numerical failure.  All structured output is UTF-8 JSON; the
LORHOM3_SEED environment variable overrides the default seed.
"""

from __future__ import annotations

import argparse
import csv
import os
import re
import sys
from fractions import Fraction

from . import __version__
from .catalog import (
    InvalidParameters, UnknownName, catalog_get, catalog_names, model_get,
    model_names, normalize_heis, normalize_sol, NotHeis, NotSol,
)
from .classify import NotLorentzian, NoTransverseSubalgebra, analyze_left_invariant, analyze_model
from .geodesic import (
    DEFAULT_ESCAPE_NORM, DEFAULT_RTOL, DEFAULT_T_MAX, SamplerConfig,
    ToleranceUnachievable, completeness_probe, integrate_geodesic,
)
from .inputdoc import InputError, format_rational, load_document
from .isotropy import ModelInvariantViolation
from .liealg import AlgebraTag, JacobiViolation
from .metric import DegenerateMetric, levi_civita
from .report import (
    classification_dict, probe_dict, to_json, trajectory_dict,
)
from .verify import run_checks

EXIT_OK = 0
EXIT_UNKNOWN_NAME = 2
EXIT_INVALID_INPUT = 3
EXIT_NUMERICAL = 4

DEFAULT_SEED = 7


def default_seed() -> int:
    env = os.environ.get("LORHOM3_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownName as exc:
        print("unknown name: %s" % exc.args[0], file=sys.stderr)
        return EXIT_UNKNOWN_NAME
    except (InputError, InvalidParameters, JacobiViolation, DegenerateMetric,
            NotLorentzian, ModelInvariantViolation, NoTransverseSubalgebra,
            NotHeis, NotSol) as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return EXIT_INVALID_INPUT
    except ToleranceUnachievable as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorhom3",
        description="local geometry of left-invariant lorentz metrics on "
                    "3-dimensional groups: connection, curvature, isotropy, "
                    "geometry class, completeness diagnostics")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or inspect the geometry catalog")
    csub = p.add_subparsers(dest="subcommand", required=True)
    pl = csub.add_parser("list", help="list the catalog entries")
    pl.add_argument("--format", choices=("text", "json"), default="text")
    pl.set_defaults(func=cmd_catalog_list)
    ps = csub.add_parser("show", help="show one entry with its defining data")
    ps.add_argument("name")
    ps.add_argument("--format", choices=("text", "json"), default="text")
    ps.set_defaults(func=cmd_catalog_show)

    p = sub.add_parser("analyze", help="classify an (algebra, metric) document")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("model", help="inspect or analyze a named 4-dimensional model")
    p.add_argument("name", help="one of %s; unipotent_family takes (c,m,n)"
                   % (", ".join(model_names()),))
    p.add_argument("--params", default=None,
                   help="comma-separated rationals c,m,n for unipotent_family")
    p.add_argument("--analyze", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("geodesic", help="integrate the body equation or probe "
                                        "for blowup")
    p.add_argument("source", help="input document path or catalog entry name")
    p.add_argument("--v0", default=None, help="initial body velocity a,b,c")
    p.add_argument("--t-max", type=float, default=DEFAULT_T_MAX)
    p.add_argument("--rtol", type=float, default=DEFAULT_RTOL)
    p.add_argument("--escape-norm", type=float, default=DEFAULT_ESCAPE_NORM)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--probe", action="store_true",
                   help="sweep sampled initial velocities instead of one v0")
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--csv", default=None, help="write trajectory samples as CSV")
    p.add_argument("--plot", default=None, help="render a figure to this file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("verify-paper", help="run the full regression suite")
    p.add_argument("--quick", action="store_true",
                   help="reduce the dimension-law sweep for a fast smoke run")
    p.set_defaults(func=cmd_verify)
    return parser


# ---------------------------------------------------------------------------

def _emit(args, text_lines, json_doc):
    if args.format == "json":
        sys.stdout.write(to_json(json_doc))
    else:
        for line in text_lines:
            print(line)
    return EXIT_OK


def cmd_catalog_list(args) -> int:
    names = catalog_names()
    doc = {"entries": list(names), "count": len(names)}
    return _emit(args, ["%-24s %s" % (n, catalog_get(n).origin) for n in names], doc)


def cmd_catalog_show(args) -> int:
    entry = catalog_get(args.name)
    lines = ["%s" % entry.name, "  origin: %s" % entry.origin]
    doc = {"name": entry.name, "origin": entry.origin, "stub": entry.stub,
           "notes": list(entry.notes)}
    if entry.stub:
        for note in entry.notes:
            lines.append("  note: %s" % note)
        exp = entry.expected
        lines.append("  expected: curvature sign %+d, compact realization %s"
                     % (exp.kappa_sign, exp.compact_realization))
        doc["expected"] = {"kappa_sign": exp.kappa_sign,
                           "compact_realization": exp.compact_realization}
        return _emit(args, lines, doc)
    names = entry.algebra.basis_names
    lines.append("  basis: %s" % ", ".join(names))
    br = []
    for i in range(3):
        for j in range(i + 1, 3):
            w = entry.algebra.c[i][j]
            if any(x != 0 for x in w):
                terms = " + ".join("%s %s" % (format_rational(w[k]), names[k])
                                   for k in range(3) if w[k] != 0)
                br.append("[%s, %s] = %s" % (names[i], names[j], terms))
    lines.append("  brackets: %s" % ("; ".join(br) if br else "all zero"))
    gram_items = []
    for i in range(3):
        for j in range(i, 3):
            if entry.metric.gram[i][j] != 0:
                gram_items.append("g(%s,%s) = %s" % (names[i], names[j],
                                  format_rational(entry.metric.gram[i][j])))
    lines.append("  metric: %s" % "; ".join(gram_items))
    conn = levi_civita(entry.algebra, entry.metric)
    lines.append("  connection (left-invariant frame):")
    for i in range(3):
        for j in range(3):
            v = conn.gamma[i][j]
            if any(x != 0 for x in v):
                terms = " + ".join("%s %s" % (format_rational(v[k]), names[k])
                                   for k in range(3) if v[k] != 0)
                lines.append("    nabla_%s %s = %s" % (names[i], names[j], terms))
    exp = entry.expected
    lines.append("  expected: isotropy (%s, %s), killing dim %s, class %s, "
                 "maximal %s, %s, compact realization %s"
                 % (exp.isotropy_dim, exp.isotropy_type.value, exp.killing_dim,
                    exp.geometry_class.value, exp.maximal_geometry.value,
                    exp.completeness.value, exp.compact_realization))
    rep = analyze_left_invariant(entry.algebra, entry.metric)
    doc.update({
        "basis": names,
        "brackets": br,
        "metric": gram_items,
        "connection": {"%s,%s" % (names[i], names[j]):
                       [format_rational(x) for x in conn.gamma[i][j]]
                       for i in range(3) for j in range(3)},
        "expected": {
            "isotropy_dim": exp.isotropy_dim,
            "isotropy_type": exp.isotropy_type.value,
            "killing_dim": exp.killing_dim,
            "geometry_class": exp.geometry_class.value,
            "maximal_geometry": exp.maximal_geometry.value,
            "completeness": exp.completeness.value,
            "compact_realization": exp.compact_realization,
        },
        "analysis": classification_dict(rep),
    })
    return _emit(args, lines, doc)


def _analysis_lines(rep) -> list:
    lines = [
        "algebra: %s (witness %s)" % (rep.algebra_tag.value,
                                      "available" if rep.algebra_witness_available
                                      else "not available"),
        "curvature: %s" % ("constant kappa = %s" % format_rational(rep.kappa)
                           if rep.kappa is not None else
                           "non-constant (scalar %s, tr Ric^2 %s)"
                           % (format_rational(rep.scalar),
                              format_rational(rep.ricci_square))),
        "isotropy: dim %d, %s" % (rep.isotropy_dim, rep.isotropy_type.value),
        "killing dimension: %d" % rep.killing_dim,
        "geometry class: %s%s" % (rep.geometry_class.value,
                                  "(%s)" % rep.flat_carrier if rep.flat_carrier else ""),
        "maximal geometry: %s" % rep.maximal_geometry.value,
        "completeness: %s" % rep.completeness.value,
        "compact realization: %s" % rep.compact_realization,
    ]
    for w in rep.warnings:
        lines.append("warning: %s" % w)
    return lines


def cmd_analyze(args) -> int:
    algebra, metric, model = load_document(args.file)
    seed = default_seed()
    if model is not None:
        rep = analyze_model(model)
    else:
        rep = analyze_left_invariant(algebra, metric)
    doc = classification_dict(rep, seed=seed)
    if model is None:
        _attach_normal_form(rep, algebra, metric, doc)
    lines = _analysis_lines(rep)
    if "normal_form" in doc:
        nf = doc["normal_form"]
        lines.append("normal form: %s (scale %s)" % (nf["class"], nf.get("scale")))
    return _emit(args, lines, doc)


def _attach_normal_form(rep, algebra, metric, doc) -> None:
    try:
        if rep.algebra_tag == AlgebraTag.SOL:
            nf = normalize_sol(algebra, metric)
        elif rep.algebra_tag == AlgebraTag.HEIS:
            nf = normalize_heis(algebra, metric)
        else:
            return
    except (NotSol, NotHeis):
        return
    block = {"class": nf.klass.value}
    if nf.scale is not None:
        block["scale"] = format_rational(nf.scale)
    if nf.witness is not None:
        block["witness"] = [[format_rational(x) for x in row] for row in nf.witness]
    if nf.note:
        block["note"] = nf.note
    doc["normal_form"] = block


def _parse_params(raw):
    if raw is None:
        return {}
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 3:
        raise InputError("--params needs exactly c,m,n")
    return {"c": parts[0], "m": parts[1], "n": parts[2]}


_FAMILY_RE = re.compile(r"^(?P<base>[a-z0-9_]+)\((?P<args>[^)]*)\)$")


def _resolve_model(name, params_raw):
    match = _FAMILY_RE.match(name)
    params = _parse_params(params_raw)
    if match:
        name = match.group("base")
        argtext = match.group("args")
        if argtext.strip():
            params = _parse_params(argtext)
    if name == "unipotent_family" and not params:
        raise InvalidParameters("unipotent_family needs parameters c,m,n")
    return model_get(name, **params) if params else model_get(name)


def cmd_model(args) -> int:
    model = _resolve_model(args.name, args.params)
    names = model.algebra.basis_names
    lines = ["%s" % model.name,
             "  basis: %s" % ", ".join(names),
             "  isotropy direction: %s" % names[[list(model.iso_vector) ==
                                                 model.algebra.basis_vector(i)
                                                 for i in range(4)].index(True)]]
    doc = {"name": model.name, "basis": names,
           "parameters": {k: format_rational(v) for k, v in model.parameters.items()},
           "compact_realization": model.compact_realization,
           "notes": list(model.notes)}
    if args.analyze:
        rep = analyze_model(model)
        lines += _analysis_lines(rep)
        doc["analysis"] = classification_dict(rep, seed=default_seed())
    return _emit(args, lines, doc)


def _load_pair(source):
    if os.path.exists(source) or source.endswith(".json"):
        algebra, metric, model = load_document(source)
        if model is not None:
            raise InputError("geodesic integration runs on 3-dimensional pairs")
        return algebra, metric, source
    entry = catalog_get(source)
    if entry.stub:
        raise UnknownName(source)
    return entry.algebra, entry.metric, entry.name


def cmd_geodesic(args) -> int:
    algebra, metric, label = _load_pair(args.source)
    seed = args.seed if args.seed is not None else default_seed()
    if args.probe:
        config = SamplerConfig(count=args.samples, seed=seed, t_max=args.t_max,
                               rtol=args.rtol, escape_norm=args.escape_norm)
        report = completeness_probe(algebra, metric, config)
        doc = probe_dict(report)
        lines = ["probe verdict: %s" % report.verdict.value,
                 "max energy drift: %r" % report.max_energy_drift,
                 "note: %s" % report.note]
        if report.witness_v0 is not None:
            lines.insert(1, "witness v0 = %s, blowup bracket %s"
                         % (report.witness_v0, report.witness_bracket))
        if args.plot:
            from .plotting import render_probe
            render_probe(report, args.plot, title=label)
            lines.append("figure written to %s" % args.plot)
        return _emit(args, lines, doc)
    if args.v0 is None:
        raise InputError("--v0 a,b,c is required unless --probe is given")
    try:
        v0 = tuple(float(Fraction(p.strip())) for p in args.v0.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("--v0: %s" % exc)
    if len(v0) != algebra.dim:
        raise InputError("--v0 needs %d components" % algebra.dim)
    if not any(v0):
        raise InputError("--v0 must be nonzero outside probe mode")
    traj = integrate_geodesic(algebra, metric, v0, t_max=args.t_max,
                              rtol=args.rtol, escape_norm=args.escape_norm)
    doc = trajectory_dict(traj, v0, seed=seed)
    lines = ["verdict: %s" % traj.verdict.value,
             "energy0: %r, max drift: %r" % (traj.energy0, traj.max_energy_drift),
             "accepted steps: %d" % traj.steps]
    if traj.verdict.value == "blowup_detected":
        lines.insert(1, "blowup bracket: [%r, %r]" % (traj.t_low, traj.t_high))
    if args.csv:
        _write_csv(args.csv, algebra.basis_names, traj)
        lines.append("samples written to %s" % args.csv)
    if args.plot:
        from .plotting import render_trajectory
        render_trajectory(traj, metric, algebra.basis_names, args.plot, title=label)
        lines.append("figure written to %s" % args.plot)
    return _emit(args, lines, doc)


def _write_csv(path, names, traj) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + ["v_%s" % n for n in names])
        for t, v in traj.samples:
            writer.writerow([repr(t)] + [repr(x) for x in v])


def cmd_verify(args) -> int:
    results = run_checks(quick=args.quick)
    failed = [r for r in results if not r.ok]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print("%s  %-34s %s" % (status, r.check_id, r.detail))
    if failed:
        print()
        print("%d check(s) failed:" % len(failed))
        for r in failed:
            print("  %s -- violates: %s" % (r.check_id, r.anchor))
        return 1
    print()
    print("all %d checks passed" % len(results))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
