"""Tolerance-aware linear subspaces of Euclidean space.

A :class:`Subspace` is stored as an orthonormal basis (rows of a ``(k, d)``
array). All rank decisions threshold singular values relative to the
largest one, so every predicate built on top is invariant under rescaling
of the spanning vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch

__all__ = [
    "Tolerance",
    "Subspace",
    "span_of",
    "complement",
    "intersect",
    "sum_of",
    "contains",
    "equals",
    "project",
    "zero_subspace",
    "full_space",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared by all predicates.

    Parameters
    ----------
    rel_rank_tol : float
        Relative singular-value cutoff for rank decisions and the membership
        test.
    psd_tol : float
        Relative slack allowed on the smallest eigenvalue in
        positive-semidefiniteness tests.
    """

    rel_rank_tol: float = 1e-9
    psd_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rel_rank_tol", "psd_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3), got {value!r}")

    @classmethod
    def unchecked(cls, rel_rank_tol: float = 1e-9, psd_tol: float = 1e-9) -> "Tolerance":
        """Build a tolerance without range validation.

        Only meant for fault injection (exercising the failure paths of the
        battery); results computed with out-of-range tolerances are not
        trustworthy.
        """
        tol = object.__new__(cls)
        object.__setattr__(tol, "rel_rank_tol", float(rel_rank_tol))
        object.__setattr__(tol, "psd_tol", float(psd_tol))
        return tol

    @property
    def in_range(self) -> bool:
        return 0.0 < self.rel_rank_tol < 1e-3 and 0.0 < self.psd_tol < 1e-3


DEFAULT_TOL = Tolerance()


def _orthonormal_rows(mat: np.ndarray, tol: Tolerance, scale: float = 0.0) -> np.ndarray:
    """Orthonormal basis (as rows) of the row space of ``mat``.

    Singular values are compared against ``max(largest, scale)``; pass
    ``scale=1`` when ``mat`` is a projection of an orthonormal basis.
    """
    d = mat.shape[1]
    if mat.shape[0] == 0:
        return np.zeros((0, d))
    _, s, vh = np.linalg.svd(mat, full_matrices=False)
    ref = max(s[0] if s.size else 0.0, scale)
    if ref == 0.0:
        return np.zeros((0, d))
    rank = int(np.sum(s > tol.rel_rank_tol * ref))
    return vh[:rank].copy()


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of R^d given by an orthonormal basis.

    Equality is span equality (:meth:`equals`); two instances with
    different bases of the same span compare equal under it. The zero
    subspace has an empty ``(0, d)`` basis.
    """

    ambient_dim: int
    basis: np.ndarray
    tol: Tolerance = field(default=DEFAULT_TOL)

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise DimensionMismatch(f"ambient dimension must be >= 1, got {self.ambient_dim}")
        basis = np.asarray(self.basis, dtype=float).reshape(-1, self.ambient_dim)
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def _vec(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float).ravel()
        if v.size != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {v.size} in R^{self.ambient_dim}")
        return v

    @property
    def projector(self) -> np.ndarray:
        return self.basis.T @ self.basis

    def project(self, v) -> np.ndarray:
        v = self._vec(v)
        return self.basis.T @ (self.basis @ v)

    def contains(self, v) -> bool:
        v = self._vec(v)
        resid = np.linalg.norm(v - self.project(v))
        return bool(resid <= self.tol.rel_rank_tol * max(1.0, np.linalg.norm(v)))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def equals(self, other: "Subspace") -> bool:
        self._check(other)
        return (
            self.dim == other.dim
            and self.contains_subspace(other)
            and other.contains_subspace(self)
        )

    def distance(self, other: "Subspace") -> float:
        """Spectral-norm gap ``||P_S - P_T||``; 1.0 when the dimensions differ."""
        self._check(other)
        if self.dim != other.dim:
            return 1.0
        return float(np.linalg.norm(self.projector - other.projector, 2))

    def complement(self) -> "Subspace":
        if self.dim == 0:
            return full_space(self.ambient_dim, self.tol)
        _, _, vh = np.linalg.svd(self.basis, full_matrices=True)
        return Subspace(self.ambient_dim, vh[self.dim:].copy(), self.tol)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(
            self.ambient_dim,
            _orthonormal_rows(np.vstack([self.basis, other.basis]), self.tol),
            self.tol,
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return self.complement().sum(other.complement()).complement()

    def with_tol(self, tol: Tolerance) -> "Subspace":
        return Subspace(self.ambient_dim, self.basis, tol)


def span_of(
    vectors, tol: Tolerance = DEFAULT_TOL, ambient_dim: int | None = None, scale: float = 0.0
) -> Subspace:
    """Orthonormalized span of ``vectors``.

    ``ambient_dim`` is required when ``vectors`` is empty. Directions whose
    singular value falls below ``tol.rel_rank_tol`` times the largest one
    are dropped. ``scale`` sets a floor on that reference value, for
    vectors that are images of unit vectors and may all be tiny.
    """
    rows = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if not rows:
        if ambient_dim is None:
            raise DimensionMismatch("ambient_dim is required for an empty spanning set")
        return zero_subspace(ambient_dim, tol)
    lengths = {r.size for r in rows}
    if len(lengths) != 1:
        raise DimensionMismatch(f"spanning vectors have mixed lengths {sorted(lengths)}")
    d = lengths.pop()
    if ambient_dim is not None and ambient_dim != d:
        raise DimensionMismatch(f"vectors have length {d}, expected {ambient_dim}")
    if d < 1:
        raise DimensionMismatch("vectors must have length >= 1")
    return Subspace(d, _orthonormal_rows(np.vstack(rows), tol, scale), tol)


def zero_subspace(ambient_dim: int, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    return Subspace(ambient_dim, np.zeros((0, ambient_dim)), tol)


def full_space(ambient_dim: int, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    return Subspace(ambient_dim, np.eye(ambient_dim), tol)


def complement(S: Subspace) -> Subspace:
    return S.complement()


def intersect(S: Subspace, T: Subspace) -> Subspace:
    return S.intersect(T)


def sum_of(S: Subspace, T: Subspace) -> Subspace:
    return S.sum(T)


def contains(S: Subspace, v) -> bool:
    return S.contains(v)


def equals(S: Subspace, T: Subspace) -> bool:
    return S.equals(T)


def project(S: Subspace, v) -> np.ndarray:
    return S.project(v)
