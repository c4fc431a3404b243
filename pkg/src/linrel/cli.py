"""Command-line front end.

Usage::

    linrel analyze rel.json [--json] [--tol-rank F] [--tol-psd F]
    linrel adjoint rel.json [--json]
    linrel decompose rel.json [--json]
    linrel battery --seed S --dim N --count K [--profile P] [--json] [--out-dir DIR]
    linrel examples NAME [--json]

Exit codes: 0 ok, 1 property failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .analysis import MINTY_NOTE, TYPE_FLAG_NOTE, is_monotone, is_skew, is_symmetric, maximality_report
from .battery import PROFILE_EXPECTATIONS, instance_checks, run_battery
from .certificates import ni_certificate, ni_sampling_check, probe_points, regularization_gap
from .decomposition import recompose_check, skew_part, symmetric_part
from .errors import LinRelError, PreconditionError, RelationFileError
from .examples import EXAMPLE_NAMES, by_name
from .minty import PROFILES
from .relation import LinearRelation, adjoint, at_zero, domain, load_relation, range_of, relation_document
from .subspace import DEFAULT_TOL, Tolerance

SCHEMA = 1
GAP_PROBES = 8
NI_SAMPLES = 200

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit_json(doc):
    print(json.dumps(doc, indent=2, sort_keys=True))


def _vec(v):
    return [float(x) for x in np.asarray(v).ravel()]


def _tolerance(args, base: Tolerance) -> Tolerance:
    rank = base.rel_rank_tol if args.tol_rank is None else args.tol_rank
    psd = base.psd_tol if args.tol_psd is None else args.tol_psd
    if getattr(args, "unchecked_tol", False):
        return Tolerance.unchecked(rank, psd)
    try:
        return Tolerance(rank, psd)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _load(args) -> tuple[LinearRelation, dict]:
    path = Path(args.file)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise RelationFileError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise RelationFileError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None
    A = load_relation(path)
    tol_args = [getattr(args, "tol_rank", None), getattr(args, "tol_psd", None)]
    if any(t is not None for t in tol_args):
        A = load_relation(path, _tolerance(args, A.tol))
    meta = doc.get("meta") if isinstance(doc, dict) else None
    return A, meta if isinstance(meta, dict) else {}


def _dims(A: LinearRelation) -> dict:
    return {
        "n": A.space_dim,
        "graph": A.graph.dim,
        "dom": domain(A).dim,
        "ran": range_of(A).dim,
        "A0": at_zero(A).dim,
        "Astar0": at_zero(adjoint(A)).dim,
    }


def analyze_relation(A: LinearRelation, profile: str | None = None) -> dict:
    """Full analysis document for ``A``; ``profile`` enables profile checks."""
    report = maximality_report(A)
    if report.monotone:
        ni = {
            "certificate": ni_certificate(A),
            "sampling": ni_sampling_check(A, np.random.default_rng(0), NI_SAMPLES),
        }
    else:
        ni = {"certificate": None, "sampling": None}
    gaps = [
        {"z": _vec(z), "zstar": _vec(zs), "gap": regularization_gap(A, z, zs)}
        for z, zs in probe_points(A.space_dim, GAP_PROBES)
    ]
    checks = instance_checks(A, profile)
    failed = [k for k, ok in checks.items() if not ok]
    # sampling may miss a violation, so only a sampled violation of a certified relation fails
    if ni["sampling"] is False and ni["certificate"]:
        failed.append("ni_sampling")
    return {
        "schema": SCHEMA,
        "dims": _dims(A),
        "predicates": {
            "monotone": is_monotone(A),
            "skew": is_skew(A),
            "symmetric": is_symmetric(A),
        },
        "report": report.as_dict(),
        "disagreements": report.disagreements(),
        "ni": ni,
        "gap_samples": gaps,
        "checks": checks,
        "failed": failed,
        "notes": [TYPE_FLAG_NOTE, MINTY_NOTE],
    }


def _print_analysis(doc: dict):
    d = doc["dims"]
    print(f"space dimension n = {d['n']}")
    print(
        f"dims: graph {d['graph']}, dom {d['dom']}, ran {d['ran']}, "
        f"A0 {d['A0']}, A*0 {d['Astar0']}"
    )
    print("predicates:")
    for k, v in doc["predicates"].items():
        print(f"  {k:<28}{v}")
    print("maximality report:")
    for k, v in doc["report"].items():
        print(f"  {k:<28}{v}")
    print(f"NI certificate: {doc['ni']['certificate']}  (sampling: {doc['ni']['sampling']})")
    print("regularization gap at probe points:")
    for g in doc["gap_samples"]:
        print(f"  z={_fmt(g['z'])} z*={_fmt(g['zstar'])}  gap={g['gap']:.6g}")
    print("checks:")
    for k, v in doc["checks"].items():
        print(f"  {k:<28}{'ok' if v else 'FAIL'}")
    if doc["disagreements"]:
        print("criteria disagreeing with adjoint_monotone: " + ", ".join(doc["disagreements"]))
    for note in doc["notes"]:
        print(f"note: {note}")


def _fmt(v):
    return "(" + ", ".join(f"{x:g}" for x in v) + ")"


def cmd_analyze(args) -> int:
    A, meta = _load(args)
    profile = meta.get("profile")
    doc = analyze_relation(A, profile if profile in PROFILE_EXPECTATIONS else None)
    if args.json:
        _emit_json(doc)
    else:
        _print_analysis(doc)
    return EXIT_FAIL if doc["failed"] or not doc["report"]["criteria_agree"] else EXIT_OK


def _print_relation(title: str, A: LinearRelation):
    print(f"{title}: graph dimension {A.graph.dim} in R^{2 * A.space_dim}")
    for row in A.graph.basis:
        n = A.space_dim
        print(f"  x={_fmt(np.round(row[:n], 12) + 0.0)}  x*={_fmt(np.round(row[n:], 12) + 0.0)}")


def cmd_adjoint(args) -> int:
    A, _ = _load(args)
    Astar = adjoint(A)
    if args.json:
        _emit_json({"schema": SCHEMA, "adjoint": relation_document(Astar), "dims": _dims(Astar)})
    else:
        _print_relation("adjoint", Astar)
    return EXIT_OK


def cmd_decompose(args) -> int:
    A, _ = _load(args)
    Ap, Ao = symmetric_part(A), skew_part(A)
    try:
        recomposes = recompose_check(A)
    except PreconditionError:
        recomposes = None
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA,
                "symmetric_part": relation_document(Ap),
                "skew_part": relation_document(Ao),
                "recompose": recomposes,
            }
        )
    else:
        _print_relation("symmetric part", Ap)
        _print_relation("skew part", Ao)
        print(f"A = A_+ + A_o: {'n/a (precondition fails)' if recomposes is None else recomposes}")
    return EXIT_OK if recomposes is not False else EXIT_FAIL


def cmd_battery(args) -> int:
    tol = _tolerance(args, DEFAULT_TOL)
    try:
        summary = run_battery(args.seed, args.dim, args.count, args.profile, tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for doc in summary["counterexamples"]:
            m = doc["meta"]
            path = out / f"counterexample_{m['profile']}_{m['index']}.json"
            path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if args.json:
        _emit_json(summary)
    else:
        print(f"battery seed={summary['seed']} dim={summary['dim']} count={summary['count']}")
        for p, v in summary["profiles"].items():
            line = f"  {p:<22}{v['passed']}/{v['passed'] + v['failed']} passed"
            if v["failures"]:
                line += "  failures: " + ", ".join(f"{k}={c}" for k, c in v["failures"].items())
            print(line)
        for doc in summary["counterexamples"]:
            print("counterexample: " + json.dumps(doc, sort_keys=True))
        print("all invariants pass" if summary["ok"] else "FAILURES")
    return EXIT_OK if summary["ok"] else EXIT_FAIL


def cmd_examples(args) -> int:
    try:
        ex = by_name(args.name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    doc = analyze_relation(ex.relation)
    mismatches = ex.mismatches(maximality_report(ex.relation))
    doc.update(
        {
            "name": ex.name,
            "expected": ex.expected,
            "mismatches": {k: {"expected": e, "got": g} for k, (e, g) in mismatches.items()},
            "divergence": ex.divergence,
            "example_notes": list(ex.notes),
        }
    )
    if args.json:
        _emit_json(doc)
    else:
        print(f"example {ex.name}")
        if ex.divergence:
            print(f"divergence: {ex.divergence}")
        for note in ex.notes:
            print(f"note: {note}")
        _print_analysis(doc)
        for k, (e, g) in mismatches.items():
            print(f"MISMATCH {k}: expected {e}, got {g}")
    failed = mismatches or doc["failed"] or not doc["report"]["criteria_agree"]
    return EXIT_FAIL if failed else EXIT_OK


def _add_tol(p, unchecked=False):
    p.add_argument("--tol-rank", type=float, default=None, help="relative rank tolerance")
    p.add_argument("--tol-psd", type=float, default=None, help="PSD tolerance")
    if unchecked:
        p.add_argument(
            "--unchecked-tol",
            action="store_true",
            help="skip tolerance range validation (fault injection only)",
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="linrel", description="Monotone linear relations on R^n.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full maximality analysis of a relation file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    _add_tol(p)
    p.set_defaults(func=cmd_analyze)

    for name, func, helptext in (
        ("adjoint", cmd_adjoint, "print the adjoint relation"),
        ("decompose", cmd_decompose, "print the symmetric and skew parts"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("battery", help="randomized invariant battery")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--profile", choices=PROFILES, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out-dir", default=None, help="write counterexample relation files here")
    _add_tol(p, unchecked=True)
    p.set_defaults(func=cmd_battery)

    p = sub.add_parser("examples", help="analyze a named example: " + ", ".join(EXAMPLE_NAMES))
    p.add_argument("name")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (RelationFileError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LinRelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
