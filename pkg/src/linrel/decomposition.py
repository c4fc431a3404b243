"""Symmetric/skew decomposition and the generalized quadratic form.

``A_+ = A/2 + A*/2`` and ``A_o = A/2 - A*/2`` are computed with graph
arithmetic, so their domains are ``dom A`` intersected with ``dom A*``.
The quadratic form ``q_A(x) = <x, Ax>/2`` on ``dom A`` is already lower
semicontinuous here (its domain is a closed subspace), so its closed hull
is ``q_A`` itself.

In finite dimensions the skew part of the adjoint equals the adjoint of
the skew part, ``(A*)_o = (A_o)*``; this follows from the adjoint-sum rule
and is tested, while the conjecture that the identity characterizes finite
dimension is out of reach of a finite-dimensional library.
"""

from __future__ import annotations

import math

import numpy as np

from .analysis import is_monotone, maximality_report, monotonicity_witness
from .errors import PreconditionError
from .relation import (
    AffineSet,
    LinearRelation,
    add,
    adjoint,
    domain,
    from_graph_span,
    image,
    scale,
)

__all__ = [
    "symmetric_part",
    "skew_part",
    "recompose_check",
    "q_eval",
    "convexity_identity_residual",
    "convexity_identity_check",
    "subdiff_qbar",
    "qbar_subdifferential_graph",
]


def symmetric_part(A: LinearRelation) -> LinearRelation:
    return add(scale(A, 0.5), scale(adjoint(A), 0.5))


def skew_part(A: LinearRelation) -> LinearRelation:
    return add(scale(A, 0.5), scale(adjoint(A), -0.5))


def _gate(A: LinearRelation, gate: str, what: str):
    if gate == "maximal":
        if not maximality_report(A).maximal:
            raise PreconditionError(f"{what} requires a maximally monotone relation")
    elif gate == "domain":
        if not is_monotone(A):
            raise PreconditionError(f"{what} requires a monotone relation", monotonicity_witness(A))
        if not domain(adjoint(A)).contains_subspace(domain(A)):
            raise PreconditionError(f"{what} requires dom A to lie inside dom A*")
    else:
        raise ValueError(f"unknown gate {gate!r}; expected 'maximal' or 'domain'")


def recompose_check(A: LinearRelation, gate: str = "maximal") -> bool:
    """Whether ``gra A`` equals ``gra (A_+ + A_o)``.

    ``gate="domain"`` relaxes the precondition to monotone with
    ``dom A`` inside ``dom A*``. That gate does not guarantee equality:
    for ``gra A = span{e1} x {0}`` in R^2 the sum picks up ``A*0`` and
    the check returns False.
    """
    _gate(A, gate, "recompose_check")
    return A.equals(add(symmetric_part(A), skew_part(A)))


def q_eval(A: LinearRelation, x) -> float:
    if not is_monotone(A):
        raise PreconditionError("q_eval requires a monotone relation", monotonicity_witness(A))
    x = np.asarray(x, dtype=float).ravel()
    Ax = image(A, x)
    if Ax.is_empty:
        return math.inf
    # any element of Ax gives the same pairing with x on a monotone relation
    return 0.5 * float(x @ Ax.base)


def convexity_identity_residual(A: LinearRelation, x, y, lam: float) -> float:
    """Relative residual of
    ``lam q(x) + (1-lam) q(y) - q(lam x + (1-lam) y) = lam (1-lam) q(x-y)``.
    """
    if not is_monotone(A):
        raise PreconditionError("convexity identity requires a monotone relation")
    if not 0.0 <= lam <= 1.0:
        raise PreconditionError(f"lambda must lie in [0, 1], got {lam}")
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    dom = domain(A)
    if not (dom.contains(x) and dom.contains(y)):
        raise PreconditionError("x and y must lie in dom A")
    qx, qy = q_eval(A, x), q_eval(A, y)
    qm = q_eval(A, lam * x + (1.0 - lam) * y)
    lhs = lam * qx + (1.0 - lam) * qy - qm
    rhs = lam * (1.0 - lam) * q_eval(A, x - y)
    scale_ = max(1.0, abs(lam * qx) + abs((1.0 - lam) * qy) + abs(qm))
    return abs(lhs - rhs) / scale_


def convexity_identity_check(A: LinearRelation, x, y, lam: float, rtol: float = 1e-9) -> bool:
    return convexity_identity_residual(A, x, y, lam) <= rtol


def subdiff_qbar(A: LinearRelation, x, gate: str = "maximal") -> AffineSet:
    """Subdifferential of the closed quadratic form at ``x``, i.e. ``A_+ x``."""
    _gate(A, gate, "subdiff_qbar")
    return image(symmetric_part(A), x)


def qbar_subdifferential_graph(A: LinearRelation) -> LinearRelation:
    """Graph of the subdifferential of ``q_A``, built without adjoints.

    With ``P`` an orthonormal basis of ``dom A`` and ``x*_j`` any value at
    ``p_j``, ``q_A(P^T a) = a^T K a / 2`` for ``K_ij = <p_i, x*_j>``. The
    subdifferential at ``P^T a`` is ``P^T K_s a + (dom A)^perp`` where
    ``K_s`` is the symmetric part of ``K``.
    """
    if not is_monotone(A):
        raise PreconditionError("the quadratic form is defined for monotone relations only")
    n = A.space_dim
    dom = domain(A)
    P = dom.basis
    rows = []
    if P.shape[0]:
        coeffs, *_ = np.linalg.lstsq(A.x_block.T, P.T, rcond=None)
        values = (A.xstar_block.T @ coeffs).T  # row j is some x*_j in A p_j
        K = P @ values.T
        Ks = 0.5 * (K + K.T)
        grads = Ks @ P  # row j: P^T Ks e_j
        rows += list(np.hstack([P, grads]))
    perp = dom.complement().basis
    rows += list(np.hstack([np.zeros_like(perp), perp]))
    return from_graph_span(n, rows, A.tol)
