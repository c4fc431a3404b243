"""Convex-analytic certificates built on the coupling function.

``F(x, x*) = <x, x*> + indicator_{gra A}(x, x*)`` is convex whenever ``A``
is monotone. Its Fenchel conjugate is a supremum of a concave quadratic
over the graph, so it has a closed form in coefficient space and the
negative-infimum (NI) inequality ``F*(y*, y**) >= <y**, y*>`` reduces to an
eigenvalue test.

Values live in ``]-inf, +inf]`` and are returned as plain floats, with
``math.inf`` as the ``+inf`` marker. Under the Euclidean identification the
duality map of ``1/2 |.|^2`` is the identity, which is why squared norms
appear directly in :func:`regularization_gap`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import coupling_form, is_monotone, monotonicity_witness, psd_floor
from .errors import PreconditionError
from .relation import LinearRelation

__all__ = [
    "CouplingFunction",
    "eval_F",
    "eval_F_translated",
    "conjugate_F",
    "ni_certificate",
    "ni_sampling_check",
    "regularization_gap",
    "regularization_gap_direct",
    "regularization_objective",
    "probe_points",
]

ExtReal = float


@dataclass(frozen=True, eq=False)
class CouplingFunction:
    relation: LinearRelation

    def __call__(self, x, xstar) -> ExtReal:
        return eval_F(self, x, xstar)


def _cf(cf) -> CouplingFunction:
    return cf if isinstance(cf, CouplingFunction) else CouplingFunction(cf)


def eval_F(cf, x, xstar) -> ExtReal:
    A = _cf(cf).relation
    x = np.asarray(x, dtype=float).ravel()
    xstar = np.asarray(xstar, dtype=float).ravel()
    if not A.contains_pair(x, xstar):
        return math.inf
    return float(x @ xstar)


def eval_F_translated(cf, z, zstar, x, xstar) -> ExtReal:
    """``F(z + x, z* + x*) - <z + x, z* + x*> + <x, x*>``."""
    z, zstar, x, xstar = (np.asarray(v, dtype=float).ravel() for v in (z, zstar, x, xstar))
    value = eval_F(cf, z + x, zstar + xstar)
    if value == math.inf:
        return math.inf
    return value - float((z + x) @ (zstar + xstar)) + float(x @ xstar)


def _sup_concave(b: np.ndarray, S: np.ndarray, A: LinearRelation) -> ExtReal:
    """``sup_c  b^T c - c^T S c``."""
    if S.size == 0:
        return 0.0
    w, Q = np.linalg.eigh(S)
    floor = psd_floor(S, A.tol)
    if w[0] < -floor:
        return math.inf
    coords = Q.T @ b
    null = np.abs(w) <= floor
    if np.linalg.norm(coords[null]) > A.tol.rel_rank_tol * max(1.0, np.linalg.norm(b)):
        return math.inf
    live = ~null
    return 0.25 * float(np.sum(coords[live] ** 2 / w[live]))


def conjugate_F(cf, ystar, ystarstar) -> ExtReal:
    """``F*(y*, y**) = sup over the graph of <x, y*> + <x*, y**> - <x, x*>``."""
    A = _cf(cf).relation
    ystar = np.asarray(ystar, dtype=float).ravel()
    ystarstar = np.asarray(ystarstar, dtype=float).ravel()
    form = coupling_form(A)
    b = A.x_block @ ystar + A.xstar_block @ ystarstar
    return _sup_concave(b, form.S, A)


def _require_monotone(A: LinearRelation, what: str):
    if not is_monotone(A):
        raise PreconditionError(f"{what} requires a monotone relation", monotonicity_witness(A))


def _ni_quadratic(A: LinearRelation):
    """Restriction of ``w -> F*(w) - <y**, y*>`` to the region where ``F*``
    is finite, as ``(Z, Q)``: ``w = Z a`` and the gap is ``a^T Q a``."""
    n = A.space_dim
    form = coupling_form(A)
    S = form.S
    B = np.hstack([A.x_block, A.xstar_block])  # b = B w for w = (y*, y**)
    J = np.block([[np.zeros((n, n)), np.eye(n)], [np.eye(n), np.zeros((n, n))]])
    if S.size == 0:
        return np.eye(2 * n), -0.5 * J
    w, Qs = np.linalg.eigh(S)
    floor = psd_floor(S, A.tol)
    null = np.abs(w) <= floor
    live = ~null
    # finite region: components of B w along null directions of S vanish
    N = Qs[:, null].T @ B
    if N.shape[0]:
        _, sv, vh = np.linalg.svd(N, full_matrices=True)
        rank = int(np.sum(sv > A.tol.rel_rank_tol * max(1.0, sv[0] if sv.size else 0.0)))
        Z = vh[rank:].T
    else:
        Z = np.eye(2 * n)
    L = Qs[:, live].T @ B
    Q = 0.25 * L.T @ (L / w[live][:, None]) - 0.5 * J
    return Z, Z.T @ Q @ Z


def ni_certificate(A: LinearRelation) -> bool:
    """Exact global check of ``F*(y*, y**) >= <y**, y*>`` for all pairs."""
    _require_monotone(A, "ni_certificate")
    Z, Q = _ni_quadratic(A)
    if Q.size == 0:
        return True
    lam = np.linalg.eigvalsh(0.5 * (Q + Q.T))[0]
    return bool(lam >= -psd_floor(Q, A.tol))


def ni_sampling_check(A: LinearRelation, rng: np.random.Generator, samples: int = 200) -> bool:
    """Randomized search for an NI violation; True when none is found.

    Samples are drawn from the region where ``F*`` is finite (elsewhere the
    inequality holds trivially) and evaluated through :func:`conjugate_F`.
    """
    _require_monotone(A, "ni_sampling_check")
    n = A.space_dim
    Z, _ = _ni_quadratic(A)
    if Z.shape[1] == 0:
        return True
    cf = CouplingFunction(A)
    for _ in range(samples):
        w = Z @ rng.standard_normal(Z.shape[1])
        ys, yss = w[:n], w[n:]
        lhs = conjugate_F(cf, ys, yss)
        if lhs < float(ys @ yss) - 1e-7 * (1.0 + w @ w):
            return False
    return True


def regularization_objective(A: LinearRelation, z, zstar):
    """``G(x, x*) = F_(z, z*)(x, x*) + |x|^2 / 2 + |x*|^2 / 2`` as a callable."""
    cf = CouplingFunction(A)
    z = np.asarray(z, dtype=float).ravel()
    zstar = np.asarray(zstar, dtype=float).ravel()

    def G(x, xstar):
        x = np.asarray(x, dtype=float)
        xstar = np.asarray(xstar, dtype=float)
        v = eval_F_translated(cf, z, zstar, x, xstar)
        return v + 0.5 * float(x @ x) + 0.5 * float(xstar @ xstar)

    return G


def regularization_gap(A: LinearRelation, z, zstar) -> float:
    """``inf G`` in closed form.

    On the feasible set ``(z + x, z* + x*) in gra A`` the objective
    collapses to ``|x + x*|^2 / 2``, so the infimum is half the squared
    distance from ``z + z*`` to ``D = {a + a* : (a, a*) in gra A}``.
    Monotonicity is not needed.
    """
    z = np.asarray(z, dtype=float).ravel()
    zstar = np.asarray(zstar, dtype=float).ravel()
    s = A.x_block + A.xstar_block
    target = z + zstar
    if s.shape[0] == 0:
        return 0.5 * float(target @ target)
    _, sv, vh = np.linalg.svd(s, full_matrices=False)
    rank = int(np.sum(sv > A.tol.rel_rank_tol * max(1.0, sv[0])))
    P = vh[:rank]
    r = target - P.T @ (P @ target)
    return 0.5 * float(r @ r)


def regularization_gap_direct(A: LinearRelation, z, zstar) -> float:
    """``inf G`` by minimizing the literal objective over graph coefficients.

    The objective is evaluated pointwise through :func:`eval_F_translated`;
    its quadratic model (constant, gradient, Hessian) is recovered exactly
    from finite differences with unit steps, then minimized by least squares.
    """
    n = A.space_dim
    G = regularization_objective(A, z, zstar)
    z = np.asarray(z, dtype=float).ravel()
    zstar = np.asarray(zstar, dtype=float).ravel()
    basis = A.graph.basis
    k = basis.shape[0]

    def g(c):
        v = c @ basis if k else np.zeros(2 * n)
        pair = v - np.concatenate([z, zstar])
        return G(pair[:n], pair[n:])

    g0 = g(np.zeros(k))
    if k == 0:
        return g0
    E = np.eye(k)
    gp = np.array([g(E[i]) for i in range(k)])
    gm = np.array([g(-E[i]) for i in range(k)])
    grad = 0.5 * (gp - gm)
    H = np.empty((k, k))
    for i in range(k):
        H[i, i] = gp[i] + gm[i] - 2.0 * g0
        for j in range(i + 1, k):
            H[i, j] = H[j, i] = g(E[i] + E[j]) - gp[i] - gp[j] + g0
    c, *_ = np.linalg.lstsq(H, -grad, rcond=None)
    return float(g(c))


def probe_points(n: int, count: int = 8):
    """Deterministic probe pairs ``(z, z*)`` in R^n x R^n.

    Walks the unit vectors ``(e_i, 0)``, then ``(0, e_i)``, then the sums
    ``(e_i, e_i)``, stopping after ``count`` pairs.
    """
    I = np.eye(n)
    zero = np.zeros(n)
    seq = [(I[i], zero) for i in range(n)]
    seq += [(zero, I[i]) for i in range(n)]
    seq += [(I[i], I[i]) for i in range(n)]
    return [(z.copy(), zs.copy()) for z, zs in seq[:count]]
