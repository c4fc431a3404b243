"""Named example relations at desk scale.

Two fixtures are finite truncations of infinite-dimensional operators whose
qualitative behaviour changes under truncation; each carries a
``divergence`` note saying how, so that a verdict here is not read as a
statement about the original operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .relation import LinearRelation, from_graph_span, from_matrix
from .subspace import DEFAULT_TOL, Subspace, Tolerance, span_of

__all__ = [
    "NamedExample",
    "r2_example",
    "truncated_shift",
    "gossez_truncated",
    "normal_cone_subspace",
    "zero_cone",
    "by_name",
    "EXAMPLE_NAMES",
]

EXAMPLE_NAMES = ("r2", "shift:N", "gossez:N", "ncone", "zerocone")


@dataclass(frozen=True, eq=False)
class NamedExample:
    """A fixture relation plus the report fields it is known to have.

    ``expected`` maps :class:`~linrel.analysis.MaximalityReport` field names
    to values; only fields settled by hand analysis are listed.
    """

    name: str
    relation: LinearRelation
    expected: dict
    divergence: str | None = None
    notes: tuple = field(default_factory=tuple)

    def mismatches(self, report) -> dict:
        got = report.as_dict()
        return {k: (v, got[k]) for k, v in self.expected.items() if got[k] != v}


def r2_example(tol: Tolerance = DEFAULT_TOL) -> NamedExample:
    """``gra A = span{e1} x {0}`` in R^2.

    Monotone with a closed domain, its skew part has a monotone adjoint,
    yet it is not maximal: ``A0 = {0}`` while ``A*0 = span{e2}``.
    """
    A = from_graph_span(2, [((1.0, 0.0), (0.0, 0.0))], tol)
    expected = {
        "monotone": True,
        "maximal": False,
        "skew_part_adjoint_monotone": True,
        "skew_part_criterion": False,
        "a0_eq_astar0": False,
        "criteria_agree": True,
    }
    return NamedExample(
        "r2",
        A,
        expected,
        notes=("adjoint of the skew part is monotone; A0 != A*0 is what fails",),
    )


def _check_size(N: int):
    if N < 2:
        raise ValueError(f"truncation size must be >= 2, got {N}")


def shift_matrix(N: int) -> np.ndarray:
    """``(Lx)_n = sum_{i<n} x_i + x_n / 2``."""
    return np.tril(np.ones((N, N)), -1) + 0.5 * np.eye(N)


def truncated_shift(N: int, tol: Tolerance = DEFAULT_TOL) -> NamedExample:
    """Cumulative-sum operator restricted to ``{x : sum(x) = 0}``.

    On that hyperplane ``<x, Ax> = (sum x)^2 / 2 = 0``, so the relation is
    skew. Its graph has dimension ``N - 1``, one short of maximal.
    """
    _check_size(N)
    L = shift_matrix(N)
    I = np.eye(N)
    dom_basis = I[:-1] - I[1:]  # e_i - e_{i+1} spans the zero-sum hyperplane
    A = from_graph_span(N, [np.concatenate([x, L @ x]) for x in dom_basis], tol)
    expected = {"monotone": True, "skew": True, "maximal": False, "criteria_agree": True}
    return NamedExample(
        f"shift:{N}",
        A,
        expected,
        divergence=(
            "on l2 the untruncated operator is maximally monotone; the finite "
            "truncation loses one graph dimension and is not maximal"
        ),
    )


def gossez_matrix(N: int) -> np.ndarray:
    """``(Ax)_n = sum_{i>n} x_i - sum_{i<n} x_i``."""
    return np.triu(np.ones((N, N)), 1) - np.tril(np.ones((N, N)), -1)


def gossez_truncated(N: int, tol: Tolerance = DEFAULT_TOL) -> NamedExample:
    _check_size(N)
    A = from_matrix(gossez_matrix(N), tol)
    expected = {
        "monotone": True,
        "skew": True,
        "maximal": True,
        "adjoint_monotone": True,
        "criteria_agree": True,
    }
    return NamedExample(
        f"gossez:{N}",
        A,
        expected,
        divergence=(
            "on l1 the untruncated operator has a non-monotone adjoint; every "
            "finite truncation is an antisymmetric matrix whose adjoint is its "
            "negative, hence monotone"
        ),
    )


def normal_cone_subspace(C: Subspace, tol: Tolerance | None = None) -> NamedExample:
    """Normal cone of a subspace ``C``: graph ``C x C^perp``."""
    tol = C.tol if tol is None else tol
    n = C.ambient_dim
    perp = C.complement()
    rows = [np.concatenate([c, np.zeros(n)]) for c in C.basis]
    rows += [np.concatenate([np.zeros(n), d]) for d in perp.basis]
    A = from_graph_span(n, rows, tol)
    expected = {"monotone": True, "maximal": True, "symmetric": True, "criteria_agree": True}
    return NamedExample(f"ncone:{C.dim}/{n}", A, expected)


def zero_cone(n: int = 2, tol: Tolerance = DEFAULT_TOL) -> NamedExample:
    """Normal cone of ``{0}``: graph ``{0} x R^n``."""
    ex = normal_cone_subspace(span_of([], tol, ambient_dim=n), tol)
    return NamedExample("zerocone", ex.relation, ex.expected)


def by_name(name: str, tol: Tolerance = DEFAULT_TOL) -> NamedExample:
    """Resolve a CLI example name (``r2``, ``shift:N``, ``gossez:N``,
    ``ncone``, ``zerocone``)."""
    head, _, arg = name.partition(":")
    if head == "r2" and not arg:
        return r2_example(tol)
    if head in ("shift", "gossez"):
        try:
            N = int(arg)
        except ValueError:
            raise ValueError(f"{head} needs an integer size, e.g. {head}:4") from None
        return truncated_shift(N, tol) if head == "shift" else gossez_truncated(N, tol)
    if head == "ncone" and not arg:
        return normal_cone_subspace(span_of([(1.0, 0.0)], tol), tol)
    if head == "zerocone" and not arg:
        return zero_cone(2, tol)
    raise ValueError(f"unknown example {name!r}; expected one of {', '.join(EXAMPLE_NAMES)}")
