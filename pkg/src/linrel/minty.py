"""Cayley/Minty coordinates for monotone graph subspaces.

The change of variables ``s = x + x*``, ``t = x - x*`` maps a monotone
linear graph onto the graph of a linear contraction ``C`` defined on a
subspace ``D = {x + x*}``, with ``<x, x*> = (|s|^2 - |Cs|^2) / 4``. The
graph is maximal exactly when ``D`` is the whole space. None of this uses
adjoints, which makes it a useful cross-check on adjoint-based criteria.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import is_monotone, monotonicity_witness
from .errors import InvalidMintyForm, PreconditionError
from .relation import LinearRelation, from_matrix, from_graph_span
from .subspace import DEFAULT_TOL, Subspace, Tolerance, full_space, span_of

__all__ = [
    "MintyForm",
    "PROFILES",
    "to_minty",
    "from_minty",
    "is_minty_full",
    "maximal_extension",
    "random_relation",
    "random_contraction",
]

PROFILES = (
    "maximal",
    "monotone_nonmaximal",
    "skew",
    "symmetric",
    "multivalued_maximal",
    "nonmonotone",
)


@dataclass(frozen=True, eq=False)
class MintyForm:
    """Contraction ``C`` on ``domain``; row ``i`` of ``images`` is ``C d_i``
    for the ``i``-th orthonormal basis vector ``d_i`` of ``domain``."""

    domain: Subspace
    images: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        """``C`` composed with the orthogonal projection onto ``domain``."""
        return self.images.T @ self.domain.basis

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.images, 2)) if self.images.size else 0.0


def _require_monotone(A: LinearRelation):
    w = monotonicity_witness(A)
    if w is not None:
        n = A.space_dim
        raise PreconditionError(
            f"relation is not monotone: <x, x*> = {float(w[:n] @ w[n:]):.3e} < 0 on the graph",
            witness=w,
        )


def to_minty(A: LinearRelation) -> MintyForm:
    _require_monotone(A)
    n = A.space_dim
    s = A.x_block + A.xstar_block
    t = A.x_block - A.xstar_block
    D = span_of(list(s), A.tol, ambient_dim=n, scale=1.0)
    if D.dim != A.graph.dim:
        raise PreconditionError("s-projection is not injective on the graph")
    if D.dim == 0:
        return MintyForm(D, np.zeros((0, n)))
    R = s @ D.basis.T  # s_i = sum_j R_ij d_j
    images = np.linalg.solve(R, t)
    return MintyForm(D, images)


def from_minty(m: MintyForm, tol: Tolerance | None = None) -> LinearRelation:
    tol = m.domain.tol if tol is None else tol
    if m.norm > 1.0 + tol.psd_tol:
        raise InvalidMintyForm(f"map is not a contraction on its domain: norm {m.norm:.12g}")
    d = m.domain.basis
    n = m.domain.ambient_dim
    rows = np.hstack([(d + m.images) / 2.0, (d - m.images) / 2.0])
    return from_graph_span(n, list(rows), tol)


def is_minty_full(A: LinearRelation) -> bool:
    return to_minty(A).domain.dim == A.space_dim


def maximal_extension(A: LinearRelation) -> LinearRelation:
    """A maximal monotone relation whose graph contains ``gra A``.

    ``C`` is extended by zero on the orthogonal complement of its domain.
    """
    m = to_minty(A)
    n = A.space_dim
    full = MintyForm(full_space(n, A.tol), m.matrix.T)
    B = from_minty(full, A.tol)
    assert B.graph.contains_subspace(A.graph), "extension lost the original graph"
    assert is_monotone(B) and is_minty_full(B), "extension is not maximal monotone"
    return B


def _haar_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    Z = rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * np.sign(np.diag(R))


def random_contraction(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random ``n x n`` matrix with singular values drawn uniformly from [0, 1)."""
    U, V = _haar_orthogonal(rng, n), _haar_orthogonal(rng, n)
    return (U * rng.uniform(0.0, 1.0, n)) @ V.T


def _full_minty(C: np.ndarray, tol: Tolerance) -> LinearRelation:
    n = C.shape[0]
    return from_minty(MintyForm(full_space(n, tol), C.T), tol)


def random_relation(seed: int, n: int, profile: str, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Deterministic random relation on R^n of the requested ``profile``.

    ``profile`` is one of :data:`PROFILES`.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {', '.join(PROFILES)}")
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = np.random.default_rng([int(seed), int(n), PROFILES.index(profile)])

    if profile == "maximal":
        return _full_minty(random_contraction(rng, n), tol)

    if profile == "monotone_nonmaximal":
        base = _full_minty(random_contraction(rng, n), tol)
        k = int(rng.integers(0, n))
        coeffs = rng.standard_normal((k, n))
        return from_graph_span(n, list(coeffs @ base.graph.basis), tol)

    if profile == "skew":
        return _full_minty(_haar_orthogonal(rng, n), tol)

    if profile == "symmetric":
        G = rng.standard_normal((n, n))
        return from_matrix(G @ G.T / n, tol)

    if profile == "multivalued_maximal":
        Q = _haar_orthogonal(rng, n)
        m = int(rng.integers(1, n + 1))
        block = np.zeros((n, n))
        block[:m, :m] = -np.eye(m)
        if m < n:
            block[m:, m:] = random_contraction(rng, n - m)
        return _full_minty(Q @ block @ Q.T, tol)

    # nonmonotone: symmetric part has a strictly negative eigenvalue
    Q = _haar_orthogonal(rng, n)
    lam = rng.uniform(-1.0, 1.0, n)
    lam[0] = -rng.uniform(0.1, 1.0)
    if n > 1:
        lam[1] = rng.uniform(0.1, 1.0)
    sym = (Q * lam) @ Q.T
    K = rng.standard_normal((n, n))
    return from_matrix(sym + 0.5 * (K - K.T), tol)
