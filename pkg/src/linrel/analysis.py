"""Monotonicity predicates and the maximality battery.

Every predicate works in coefficient space: a graph vector is ``c @ G`` for
the orthonormal graph basis ``G`` and the pairing ``<x, x*>`` is the
quadratic form ``c^T S c`` of the :class:`CouplingForm`.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .relation import LinearRelation, adjoint, at_zero, domain
from .subspace import Tolerance

__all__ = [
    "CouplingForm",
    "MaximalityReport",
    "coupling_form",
    "is_monotone",
    "is_skew",
    "is_symmetric",
    "monotonicity_witness",
    "monotonically_related",
    "maximality_report",
    "psd_floor",
    "nullspace_of_psd",
]


@dataclass(frozen=True, eq=False)
class CouplingForm:
    """Symmetric matrix ``S`` with ``c^T S c = <x, x*>`` for ``(x, x*) = c @ basis``."""

    S: np.ndarray
    basis: np.ndarray

    @property
    def basis_dim(self) -> int:
        return self.S.shape[0]

    def pairing(self, coeffs) -> float:
        c = np.asarray(coeffs, dtype=float)
        return float(c @ self.S @ c)


def coupling_form(A: LinearRelation, basis=None) -> CouplingForm:
    """Coupling form of ``A`` on its orthonormal graph basis, or on ``basis``
    (rows of length ``2n``) when given."""
    G = A.graph.basis if basis is None else np.atleast_2d(np.asarray(basis, dtype=float))
    n = A.space_dim
    U, V = G[:, :n], G[:, n:]
    K = U @ V.T
    return CouplingForm(0.5 * (K + K.T), G)


def psd_floor(S: np.ndarray, tol: Tolerance) -> float:
    """Eigenvalues below ``-psd_floor`` count as genuinely negative."""
    norm = float(np.linalg.norm(S, 2)) if S.size else 0.0
    return tol.psd_tol * (1.0 + norm)


def nullspace_of_psd(S: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Columns spanning the numerical null space of a PSD matrix."""
    if S.size == 0:
        return np.zeros((0, 0))
    w, Q = np.linalg.eigh(S)
    return Q[:, np.abs(w) <= psd_floor(S, tol)]


def _min_eig(S: np.ndarray):
    w, Q = np.linalg.eigh(S)
    return w[0], Q[:, 0]


def is_monotone(A: LinearRelation) -> bool:
    cf = coupling_form(A)
    if cf.basis_dim == 0:
        return True
    lam, _ = _min_eig(cf.S)
    return bool(lam >= -psd_floor(cf.S, A.tol))


def monotonicity_witness(A: LinearRelation) -> np.ndarray | None:
    """A unit graph vector ``(x, x*)`` with the most negative pairing, or
    None when ``A`` is monotone."""
    cf = coupling_form(A)
    if cf.basis_dim == 0:
        return None
    lam, c = _min_eig(cf.S)
    if lam >= -psd_floor(cf.S, A.tol):
        return None
    return c @ cf.basis


def is_skew(A: LinearRelation) -> bool:
    cf = coupling_form(A)
    if cf.basis_dim == 0:
        return True
    return bool(np.linalg.norm(cf.S, 2) <= A.tol.psd_tol)


def is_symmetric(A: LinearRelation) -> bool:
    return adjoint(A).graph.contains_subspace(A.graph)


def related_infimum(A: LinearRelation, z, zstar) -> float:
    """``inf { <z - y, z* - y*> : (y, y*) in gra A }``, possibly ``-inf``."""
    z = np.asarray(z, dtype=float).ravel()
    zstar = np.asarray(zstar, dtype=float).ravel()
    base = float(z @ zstar)
    cf = coupling_form(A)
    if cf.basis_dim == 0:
        return base
    b = A.xstar_block @ z + A.x_block @ zstar
    w, Q = np.linalg.eigh(cf.S)
    floor = psd_floor(cf.S, A.tol)
    if w[0] < -floor:
        return -np.inf
    null = np.abs(w) <= floor
    coords = Q.T @ b
    # a null direction of S is neutral unless it also moves the linear term
    if np.linalg.norm(coords[null]) > A.tol.rel_rank_tol * max(1.0, np.linalg.norm(b)):
        return -np.inf
    live = ~null
    return base - 0.25 * float(np.sum(coords[live] ** 2 / w[live]))


def monotonically_related(A: LinearRelation, z, zstar) -> bool:
    """Whether ``<z - y, z* - y*> >= 0`` for every ``(y, y*)`` in the graph."""
    inf = related_infimum(A, z, zstar)
    scale = 1.0 + float(np.dot(z, z) + np.dot(zstar, zstar))
    return bool(inf >= -A.tol.psd_tol * scale)


TYPE_FLAG_NOTE = (
    "type_D, type_NI and type_FP are not measured separately: in finite "
    "dimensions all three coincide with maximal monotonicity"
)
MINTY_NOTE = "minty_full is an independent oracle (Cayley/Minty parametrization)"


@dataclass(frozen=True)
class MaximalityReport:
    """Verdicts of every maximality criterion for one relation.

    ``maximal`` is ``monotone and adjoint_monotone``. For a monotone
    relation the five criteria ``adjoint_monotone``, ``a0_eq_astar0``,
    ``domperp_eq_a0``, ``ni_certified`` and ``minty_full`` must coincide
    (and ``skew_part_criterion`` with them); ``criteria_agree`` records
    whether they did. ``ni_certified``, ``minty_full`` and the two
    skew-part fields are only evaluated for monotone relations; otherwise
    the first two are False and the skew-part fields are None.
    ``skew_part_criterion`` is ``skew_part_adjoint_monotone and
    a0_eq_astar0``.
    """

    monotone: bool
    skew: bool
    symmetric: bool
    adjoint_monotone: bool
    a0_eq_astar0: bool
    domperp_eq_a0: bool
    ni_certified: bool
    minty_full: bool
    skew_part_adjoint_monotone: bool | None
    skew_part_criterion: bool | None
    maximal: bool
    criteria_agree: bool
    type_D: bool
    type_NI: bool
    type_FP: bool

    def as_dict(self) -> dict:
        return asdict(self)

    def disagreements(self) -> list[str]:
        if not self.monotone:
            return []
        ref = self.adjoint_monotone
        names = ["a0_eq_astar0", "domperp_eq_a0", "ni_certified", "minty_full", "skew_part_criterion"]
        return [k for k in names if getattr(self, k) is not None and getattr(self, k) != ref]


def maximality_report(A: LinearRelation) -> MaximalityReport:
    """Evaluate all maximality criteria without short-circuiting."""
    from .certificates import ni_certificate
    from .decomposition import skew_part
    from .minty import is_minty_full

    Astar = adjoint(A)
    A0 = at_zero(A)
    monotone = is_monotone(A)
    adjoint_monotone = is_monotone(Astar)
    a0_eq = A0.equals(at_zero(Astar))
    domperp_eq = domain(A).complement().equals(A0)
    if monotone:
        ni = ni_certificate(A)
        minty_full = is_minty_full(A)
        skew_adj = is_monotone(adjoint(skew_part(A)))
        skew_crit = skew_adj and a0_eq
    else:
        ni = minty_full = False
        skew_adj = skew_crit = None
    maximal = monotone and adjoint_monotone
    verdicts = [adjoint_monotone, a0_eq, domperp_eq, ni, minty_full]
    if skew_crit is not None:
        verdicts.append(skew_crit)
    agree = (not monotone) or len(set(verdicts)) == 1
    return MaximalityReport(
        monotone=monotone,
        skew=is_skew(A),
        symmetric=is_symmetric(A),
        adjoint_monotone=adjoint_monotone,
        a0_eq_astar0=a0_eq,
        domperp_eq_a0=domperp_eq,
        ni_certified=ni,
        minty_full=minty_full,
        skew_part_adjoint_monotone=skew_adj,
        skew_part_criterion=skew_crit,
        maximal=maximal,
        criteria_agree=agree,
        type_D=maximal,
        type_NI=maximal,
        type_FP=maximal,
    )
