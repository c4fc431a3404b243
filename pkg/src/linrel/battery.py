"""Randomized invariant battery over the generator profiles.

Each instance runs :func:`instance_checks`, a fixed list of named checks
whose inputs are deterministic functions of the graph basis. A failing
instance is serialized as a relation document carrying its profile, seed
and failed check names, so that ``linrel analyze`` can replay it.
"""

from __future__ import annotations

import numpy as np

from .analysis import is_monotone, is_skew, is_symmetric, maximality_report
from .certificates import ni_certificate, probe_points, regularization_gap, regularization_gap_direct
from .decomposition import (
    convexity_identity_residual,
    qbar_subdifferential_graph,
    recompose_check,
    skew_part,
    symmetric_part,
)
from .minty import PROFILES, random_relation
from .relation import LinearRelation, add, adjoint, domain, relation_document
from .subspace import DEFAULT_TOL, Tolerance

__all__ = [
    "PROFILE_EXPECTATIONS",
    "instance_checks",
    "instance_seed",
    "run_battery",
    "MAX_DIM",
]

MAX_DIM = 32
MAX_EXAMPLES_PER_PROFILE = 3
STRUCTURE_TOL = 1e-8
GAP_TOL = 1e-8
CONVEXITY_RTOL = 1e-9

# report fields each profile pins down
PROFILE_EXPECTATIONS = {
    "maximal": {"monotone": True, "maximal": True},
    "monotone_nonmaximal": {"monotone": True, "maximal": False},
    "skew": {"monotone": True, "maximal": True, "skew": True},
    "symmetric": {"monotone": True, "maximal": True, "symmetric": True},
    "multivalued_maximal": {"monotone": True, "maximal": True},
    "nonmonotone": {"monotone": False, "maximal": False},
}


def instance_seed(seed: int, index: int) -> int:
    """Per-instance generator seed, independent across indices."""
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1)[0])


def _partner(A: LinearRelation) -> LinearRelation:
    """A second maximal relation for the sum rule, fixed by ``A``'s dimension."""
    return random_relation(0, A.space_dim, "maximal", A.tol)


def _domain_pair(A: LinearRelation):
    P = domain(A).basis
    k = P.shape[0]
    if k == 0:
        z = np.zeros(A.space_dim)
        return z, z
    w = np.arange(1, k + 1, dtype=float)
    x = (w / k) @ P
    y = (np.where(np.arange(k) % 2, -1.0, 1.0) * w[::-1]) @ P
    return x, y


def instance_checks(A: LinearRelation, profile: str | None = None) -> dict[str, bool]:
    """Run every applicable invariant check on ``A``.

    ``profile`` adds the report fields that profile is expected to show.
    Returns an insertion-ordered mapping from check name to verdict.
    """
    n = A.space_dim
    out: dict[str, bool] = {}
    report = maximality_report(A)
    if profile is not None:
        got = report.as_dict()
        out["profile"] = all(got[k] == v for k, v in PROFILE_EXPECTATIONS[profile].items())
    out["criteria_agree"] = report.criteria_agree
    out["adjoint_involution"] = adjoint(adjoint(A)).equals(A)
    if report.monotone:
        out["skew_part_criterion"] = report.skew_part_criterion == report.maximal
        x, y = _domain_pair(A)
        out["convexity_identity"] = convexity_identity_residual(A, x, y, 0.3) <= CONVEXITY_RTOL
    probes = probe_points(n, 2 * n)
    gaps = [regularization_gap(A, z, zs) for z, zs in probes]
    if report.monotone:
        # D = R^n characterizes maximality only among monotone relations
        out["gap_zero_iff_maximal"] = all(g <= GAP_TOL for g in gaps) == report.maximal
    z, zs = probes[-1]
    g_closed, g_direct = regularization_gap(A, z, zs), regularization_gap_direct(A, z, zs)
    out["gap_direct"] = abs(g_closed - g_direct) <= GAP_TOL * max(1.0, g_closed)
    if report.maximal:
        out["ni_certificate"] = ni_certificate(A)
        Ap, Ao = symmetric_part(A), skew_part(A)
        out["recompose"] = recompose_check(A)
        out["adjoint_of_parts"] = adjoint(A).graph.distance(add(adjoint(Ap), adjoint(Ao)).graph) <= STRUCTURE_TOL
        B = _partner(A)
        out["adjoint_sum_rule"] = adjoint(add(A, B)).graph.distance(add(adjoint(A), adjoint(B)).graph) <= STRUCTURE_TOL
        out["qbar_subdifferential"] = qbar_subdifferential_graph(A).graph.distance(Ap.graph) <= STRUCTURE_TOL
        out["parts_maximal"] = maximality_report(Ap).maximal and maximality_report(Ao).maximal
        out["symmetric_part_symmetric"] = is_symmetric(Ap)
        out["skew_part_skew"] = is_skew(Ao) and is_monotone(Ao)
    return out


def _check_params(dim: int, count: int, profile: str | None):
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dim must lie in [1, {MAX_DIM}], got {dim}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if profile is not None and profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {', '.join(PROFILES)}")


def run_battery(
    seed: int,
    dim: int,
    count: int,
    profile: str | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> dict:
    """Run ``count`` instances of each selected profile at dimension ``dim``.

    Returns a JSON-ready summary: per-profile pass/fail counts, the number
    of times each check failed, and up to three counterexample relation
    documents per profile. The summary depends only on the arguments.
    """
    _check_params(dim, count, profile)
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    selected = PROFILES if profile is None else (profile,)
    profiles = {}
    counterexamples = []
    for p in selected:
        passed = 0
        failures: dict[str, int] = {}
        shown = 0
        for i in range(count):
            s = instance_seed(seed, i)
            A = random_relation(s, dim, p, tol)
            checks = instance_checks(A, p)
            failed = [k for k, ok in checks.items() if not ok]
            if not failed:
                passed += 1
                continue
            for k in failed:
                failures[k] = failures.get(k, 0) + 1
            if shown < MAX_EXAMPLES_PER_PROFILE:
                shown += 1
                meta = {"profile": p, "seed": s, "index": i, "failed": failed}
                counterexamples.append(relation_document(A, meta))
        profiles[p] = {"passed": passed, "failed": count - passed, "failures": failures}
    return {
        "schema": 1,
        "seed": int(seed),
        "dim": int(dim),
        "count": int(count),
        "tol": {"rank": tol.rel_rank_tol, "psd": tol.psd_tol},
        "profiles": profiles,
        "ok": all(v["failed"] == 0 for v in profiles.values()),
        "counterexamples": counterexamples,
    }
