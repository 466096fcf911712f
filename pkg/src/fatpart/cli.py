"""Command-line interface. Output is one JSON record per line unless ``--format human``.

Exit codes: 0 success (every verification passed), 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .dse import dse_partition_function, dse_sample
from .ensembles import EnsembleSpec, closed_form_schur_average, mc_schur_average
from .partitions import (
    CLASS_FILTERS,
    Partition,
    PartitionConstraints,
    classify,
    enumerate_partitions,
    partitions_of,
)
from .ribbon import load_graph, parse_graph_name, validate_graph
from .series import (
    ModelConfig,
    classify_solvability,
    hyp_tau_series,
    load_config,
    mc_partition_function,
    mixed_series,
    zu_mm_series,
)
from .symfun import (
    Specialization,
    charmap_schur,
    mn_character,
    parse_number,
    phi_character,
    schur_at,
    schur_of_matrix,
)
from .verify import CASES, CaseOptions, run_case, to_jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(records, fmt: str, out=None) -> None:
    out = out or sys.stdout
    for rec in records:
        rec = to_jsonable(rec)
        if fmt == "records":
            out.write(json.dumps(rec) + "\n")
        else:
            out.write("  ".join(f"{k}={_human(v)}" for k, v in rec.items()) + "\n")


def _human(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return str(v)


def _parse_matrix(text: str):
    rows = json.loads(text)
    return [[parse_number(str(x)) if not isinstance(x, list) else complex(x[0], x[1]) for x in row] for row in rows]


def _graph_arg(text: str):
    """A builtin graph name or a graph file; returns (graph, assignment or None)."""
    try:
        return parse_graph_name(text), None
    except ValueError:
        return load_graph(text)


def _config_from_args(args) -> ModelConfig:
    if args.config:
        cfg = load_config(args.config)
    else:
        if not args.graph or not args.spec:
            raise UsageError("need --config, or --graph FILE with corners and one --spec per face")
        G, A = _graph_arg(args.graph)
        if A is None:
            raise UsageError("the graph file must carry corners and N")
        cfg = ModelConfig(G, A, list(args.spec))
    if args.cutoff is not None:
        cfg.cutoff = args.cutoff
    return cfg


# --- subcommands -----------------------------------------------------------------------


def cmd_partitions(args):
    hi = args.max_weight
    c = PartitionConstraints((args.min_weight, hi), args.max_length, args.max_part, args.filter)
    recs = []
    for lam in enumerate_partitions(c):
        flags = classify(lam)
        recs.append({"partition": str(lam), "weight": lam.weight, "length": lam.length, **flags})
    return recs, True


def cmd_schur(args):
    lam = Partition.parse(args.partition)
    if args.matrix:
        val = schur_of_matrix(lam, _parse_matrix(args.matrix))
        return [{"lambda": str(lam), "matrix": args.matrix, "value": val}], True
    if not args.spec:
        raise UsageError("need --spec or --matrix")
    s = Specialization.parse(args.spec[0])
    return [{"lambda": str(lam), "spec": str(s), "value": schur_at(lam, s)}], True


def cmd_charmap(args):
    lam = Partition.parse(args.partition)
    recs = [{"lambda": str(lam), "mu": str(mu), "chi": mn_character(lam, mu), "phi": phi_character(lam, mu)}
            for mu in partitions_of(lam.weight)]
    if args.matrix:
        X = _parse_matrix(args.matrix)
        via_map, direct = charmap_schur(lam, X), schur_of_matrix(lam, X)
        recs.append({"lambda": str(lam), "charmap_value": via_map, "direct_value": direct,
                     "equal": via_map == direct})
    return recs, True


def cmd_avg(args):
    e = EnsembleSpec.parse(args.ensemble)
    lam = Partition.parse(args.partition)
    rec = {"ensemble": str(e), "lambda": str(lam)}
    if e.kind != "gin":
        rec["closed_form"] = closed_form_schur_average(e, lam)
    if not args.closed_form:
        rec["mc_estimate"] = mc_schur_average(e, lam, args.samples or 100_000, args.seed, threads=args.threads)
    return [rec], True


def _series_record(kind: str, sv, extra=None):
    rec = {"series": kind, "value": sv.value, "max_weight": sv.max_weight,
           "truncated_exactly": sv.truncated_exactly, "term_count": sv.term_count}
    rec.update(extra or {})
    return rec


def cmd_series(args):
    kind = args.kind
    if kind in ("zu-mm", "mixed"):
        cfg = _config_from_args(args)
        sv = zu_mm_series(cfg) if kind == "zu-mm" else mixed_series(cfg, args.orth_form)
        rec = _series_record(kind, sv, {"faces": [str(s) for s in cfg.face_specs], "N": cfg.N})
        if args.mc:
            rec["mc_estimate"] = mc_partition_function(cfg, args.samples or 100_000, args.seed, args.threads)
        return [rec], True
    cutoff = 8 if args.cutoff is None else args.cutoff
    if not args.spec:
        raise UsageError("need --spec")
    p = Specialization.parse(args.spec[0])
    if kind in ("kp-hyp", "dkp-hyp"):
        extra = Specialization.parse(args.spec[1]) if len(args.spec) > 1 else None
        sv = hyp_tau_series(kind[:-4], args.r, p, args.N, cutoff, extra)
        return [_series_record(kind, sv, {"r": args.r, "spec": [str(s) for s in args.spec], "N": args.N})], True
    if args.N is None:
        raise UsageError("dse needs --N")
    sv = dse_partition_function(p, args.N, cutoff, args.dse_kind, args.p_exp)
    return [_series_record(kind, sv, {"dse_kind": args.dse_kind, "spec": str(p), "N": args.N})], True


def cmd_dse_sample(args):
    if not args.spec:
        raise UsageError("need --spec")
    cutoff = 8 if args.cutoff is None else args.cutoff
    lams = dse_sample(args.spec[0], args.N, cutoff, args.count, args.seed, args.dse_kind, args.p_exp)
    if args.format == "human":
        return [{"partition": str(lam)} for lam in lams], True
    return [{"sample": i, "partition": str(lam)} for i, lam in enumerate(lams)], True


def cmd_classify(args):
    cfg = _config_from_args(args)
    rep = classify_solvability(cfg, permissive=args.permissive)
    return [{"solvable": rep.solvable, "exactly_solvable": rep.exactly_solvable, "reasons": rep.reasons,
             "warnings": rep.warnings}], True


def cmd_graph(args):
    if not args.graph:
        raise UsageError("need --graph")
    G, _ = _graph_arg(args.graph)
    rep = validate_graph(G)
    rec = {"F": G.F, "n": G.n, "V": G.V, "genus": rep.genus, "ok": rep.ok, "violations": rep.violations}
    return [rec], rep.ok


def _case_params(args) -> dict:
    params = {}
    for key in ("k", "N", "L", "l", "p"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    for key in ("a", "x"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = Fraction(v)
    if args.partition:
        params["lambda"] = Partition.parse(args.partition)
    return params


def cmd_verify(args):
    names = list(CASES) if args.case == "all" else [args.case]
    if args.case != "all" and args.case not in CASES:
        raise UsageError(f"unknown case {args.case!r}; known: all, {', '.join(CASES)}")
    opts = CaseOptions(seed=args.seed, samples=args.samples, quick=args.quick, threads=args.threads,
                       cutoff=args.cutoff, params=_case_params(args))
    reports = [run_case(name, opts) for name in names]
    if args.format == "human":
        recs = [{"result": "PASS" if r.passed else "FAIL", "case": r.case_name, "criterion": r.criterion,
                 **({"runtime_ms": r.runtime_ms} if args.timing else {})} for r in reports]
    else:
        recs = [r.record(timing=args.timing) for r in reports]
    return recs, all(r.passed for r in reports)


# --- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int)
    common.add_argument("--cutoff", type=int)
    common.add_argument("--threads", type=int, help="worker cap; overrides FATPART_THREADS")
    common.add_argument("--graph", help="builtin graph name (gamma1, gamma3(2), ...) or graph file")
    common.add_argument("--spec", action="append", help="specialization string; repeat once per face")
    common.add_argument("--format", choices=("records", "human"), default="records")
    common.add_argument("--timing", action="store_true", help="include runtime_ms in verification records")

    parser = argparse.ArgumentParser(prog="fatpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", parents=[common], help="partition enumeration")
    psub = p.add_subparsers(dest="action", required=True)
    pe = psub.add_parser("enum", parents=[common])
    pe.add_argument("--min-weight", type=int, default=0)
    pe.add_argument("--max-weight", type=int, required=True)
    pe.add_argument("--max-length", type=int)
    pe.add_argument("--max-part", type=int)
    pe.add_argument("--filter", choices=CLASS_FILTERS, default="all")
    pe.set_defaults(func=cmd_partitions)

    s = sub.add_parser("schur", parents=[common], help="Schur function evaluation")
    ssub = s.add_subparsers(dest="action", required=True)
    se = ssub.add_parser("eval", parents=[common])
    se.add_argument("--lambda", dest="partition", required=True)
    se.add_argument("--matrix", help='JSON matrix, entries numbers, rational strings or [re, im]')
    se.set_defaults(func=cmd_schur)

    c = sub.add_parser("charmap", parents=[common], help="character-map coefficients")
    c.add_argument("--lambda", dest="partition", required=True)
    c.add_argument("--matrix")
    c.set_defaults(func=cmd_charmap)

    a = sub.add_parser("avg", parents=[common], help="ensemble Schur averages")
    a.add_argument("--ensemble", required=True, help="gin:N=2 | orth:N=3 | sp:k=2 | qgin:N=2,L=1")
    a.add_argument("--lambda", dest="partition", required=True)
    a.add_argument("--closed-form", action="store_true", help="skip Monte Carlo")
    a.set_defaults(func=cmd_avg)

    sr = sub.add_parser("series", parents=[common], help="partition series")
    srsub = sr.add_subparsers(dest="action", required=True)
    sre = srsub.add_parser("eval", parents=[common])
    sre.add_argument("kind", choices=("zu-mm", "mixed", "kp-hyp", "dkp-hyp", "dse"))
    sre.add_argument("--config", help="model config file")
    sre.add_argument("--orth-form", choices=("direct", "dual"), default="direct")
    sre.add_argument("--mc", action="store_true", help="also estimate the matrix integral")
    sre.add_argument("--r", default="1", help="content function, e.g. '1/2*(3+c)'")
    sre.add_argument("--N", type=int)
    sre.add_argument("--dse-kind", choices=("borodin", "star"), default="borodin")
    sre.add_argument("--p-exp", type=int, default=1)
    sre.set_defaults(func=cmd_series)

    d = sub.add_parser("dse", parents=[common], help="discrete symplectic ensemble sampling")
    dsub = d.add_subparsers(dest="action", required=True)
    ds = dsub.add_parser("sample", parents=[common])
    ds.add_argument("--N", type=int, required=True)
    ds.add_argument("--count", type=int, default=10)
    ds.add_argument("--dse-kind", choices=("borodin", "star"), default="borodin")
    ds.add_argument("--p-exp", type=int, default=1)
    ds.set_defaults(func=cmd_dse_sample)

    cl = sub.add_parser("classify", parents=[common], help="solvability classification")
    cl.add_argument("--config")
    cl.add_argument("--permissive", action="store_true")
    cl.set_defaults(func=cmd_classify)

    g = sub.add_parser("graph", parents=[common], help="ribbon graph tools")
    gsub = g.add_subparsers(dest="action", required=True)
    gv = gsub.add_parser("validate", parents=[common])
    gv.set_defaults(func=cmd_graph)

    v = sub.add_parser("verify", parents=[common], help="named verification cases")
    v.add_argument("case", help="case name or 'all'")
    v.add_argument("--quick", action="store_true", help="reduced sample counts")
    v.add_argument("--k", type=int)
    v.add_argument("--N", type=int)
    v.add_argument("--L", type=int)
    v.add_argument("--l", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--a")
    v.add_argument("--x")
    v.add_argument("--lambda", dest="partition")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        recs, ok = args.func(args)
    except (UsageError, ValueError, KeyError, OSError, ZeroDivisionError) as exc:
        sys.stderr.write(f"fatpart: error: {exc}\n")
        return EXIT_USAGE
    _emit(recs, args.format)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
