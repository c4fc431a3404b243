"""Linear relations on R^n represented by their graphs in R^{2n}.

The dual space is identified with R^n through the standard inner product,
so the bidual collapses onto the space itself and the adjoint of a
relation on R^n is again a relation on R^n. Graph vectors are laid out as
``(x, x*)``: the first ``n`` coordinates are the point, the last ``n`` the
value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, RelationFileError
from .subspace import DEFAULT_TOL, Subspace, Tolerance, span_of, zero_subspace

__all__ = [
    "LinearRelation",
    "AffineSet",
    "from_matrix",
    "from_graph_span",
    "domain",
    "range_of",
    "at_zero",
    "image",
    "adjoint",
    "scale",
    "negate",
    "inverse",
    "add",
    "closure",
    "load_relation",
    "parse_relation",
    "relation_document",
]


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """A relation ``A: R^n => R^n`` whose graph is a linear subspace of R^{2n}.

    Since every subspace of a finite-dimensional space is closed, the graph
    is closed by construction.
    """

    space_dim: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != 2 * self.space_dim:
            raise DimensionMismatch(
                f"graph lives in R^{self.graph.ambient_dim}, expected R^{2 * self.space_dim}"
            )

    @property
    def tol(self) -> Tolerance:
        return self.graph.tol

    @property
    def x_block(self) -> np.ndarray:
        """Point components of the graph basis, shape ``(k, n)``."""
        return self.graph.basis[:, : self.space_dim]

    @property
    def xstar_block(self) -> np.ndarray:
        """Value components of the graph basis, shape ``(k, n)``."""
        return self.graph.basis[:, self.space_dim:]

    def contains_pair(self, x, xstar) -> bool:
        return self.graph.contains(np.concatenate([np.ravel(x), np.ravel(xstar)]))

    def equals(self, other: "LinearRelation") -> bool:
        return self.space_dim == other.space_dim and self.graph.equals(other.graph)

    def __repr__(self):
        return f"LinearRelation(n={self.space_dim}, dim_graph={self.graph.dim})"


@dataclass(frozen=True, eq=False)
class AffineSet:
    """``base + direction``, or the empty set when ``base`` is None."""

    base: np.ndarray | None
    direction: Subspace

    @property
    def is_empty(self) -> bool:
        return self.base is None

    def contains(self, v) -> bool:
        if self.base is None:
            return False
        return self.direction.contains(np.asarray(v, dtype=float) - self.base)

    def equals(self, other: "AffineSet") -> bool:
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self.direction.equals(other.direction) and self.contains(other.base)


def _relation(n: int, rows, tol: Tolerance) -> LinearRelation:
    return LinearRelation(n, span_of(list(rows), tol, ambient_dim=2 * n))


def from_matrix(M, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Graph ``{(x, Mx)}`` of a square matrix."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {M.shape}")
    n = M.shape[0]
    return _relation(n, np.hstack([np.eye(n), M.T]), tol)


def from_graph_span(n: int, pairs, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Relation whose graph is the span of ``pairs`` (each of length ``2n``).

    A pair may also be given as a 2-tuple ``(x, x*)`` of n-vectors.
    """
    rows = []
    for i, p in enumerate(pairs):
        if isinstance(p, tuple) and len(p) == 2 and np.ndim(p[0]) == 1:
            v = np.concatenate([np.ravel(p[0]), np.ravel(p[1])])
        else:
            v = np.ravel(np.asarray(p, dtype=float))
        if v.size != 2 * n:
            raise DimensionMismatch(f"pair {i} has length {v.size}, expected {2 * n}")
        rows.append(v)
    return _relation(n, rows, tol)


def domain(A: LinearRelation) -> Subspace:
    return span_of(list(A.x_block), A.tol, ambient_dim=A.space_dim, scale=1.0)


def range_of(A: LinearRelation) -> Subspace:
    return span_of(list(A.xstar_block), A.tol, ambient_dim=A.space_dim, scale=1.0)


def at_zero(A: LinearRelation) -> Subspace:
    """The multivalued part ``A0 = {x* : (0, x*) in gra A}``."""
    n = A.space_dim
    vertical = Subspace(2 * n, np.hstack([np.zeros((n, n)), np.eye(n)]), A.tol)
    meet = A.graph.intersect(vertical)
    return span_of(list(meet.basis[:, n:]), A.tol, ambient_dim=n, scale=1.0)


def image(A: LinearRelation, x) -> AffineSet:
    """``Ax = x* + A0`` with ``x*`` the least-norm element; empty off the domain."""
    x = np.asarray(x, dtype=float).ravel()
    A0 = at_zero(A)
    if not domain(A).contains(x):
        return AffineSet(None, A0)
    coeffs, *_ = np.linalg.lstsq(A.x_block.T, x, rcond=None)
    xstar = A.xstar_block.T @ coeffs
    return AffineSet(xstar - A0.project(xstar), A0)


def adjoint(A: LinearRelation) -> LinearRelation:
    """``gra A* = {(y, y*) : (y*, -y) in (gra A)^perp}``."""
    n = A.space_dim
    W = A.graph.complement()
    c, d = W.basis[:, :n], W.basis[:, n:]
    rows = np.hstack([-d, c])
    # orthonormality is preserved by the coordinate swap/negation
    adj = LinearRelation(n, Subspace(2 * n, rows, A.tol))
    pairing = A.x_block @ c.T + A.xstar_block @ d.T
    assert np.all(np.abs(pairing) <= 1e-8), "adjoint orthogonality violated"
    return adj


def scale(A: LinearRelation, lam: float) -> LinearRelation:
    n = A.space_dim
    if lam == 0.0:
        dom = domain(A)
        return LinearRelation(n, Subspace(2 * n, np.hstack([dom.basis, np.zeros_like(dom.basis)]), A.tol))
    # (x, x*) -> (x, lam x*) is invertible, so the rank is preserved exactly
    rows = np.hstack([A.x_block, lam * A.xstar_block])
    if rows.shape[0] == 0:
        return A
    _, _, vh = np.linalg.svd(rows, full_matrices=False)
    return LinearRelation(n, Subspace(2 * n, vh, A.tol))


def negate(A: LinearRelation) -> LinearRelation:
    return scale(A, -1.0)


def inverse(A: LinearRelation) -> LinearRelation:
    n = A.space_dim
    return LinearRelation(n, Subspace(2 * n, np.hstack([A.xstar_block, A.x_block]), A.tol))


def add(A: LinearRelation, B: LinearRelation) -> LinearRelation:
    """Graph sum ``{(x, x* + y*) : (x, x*) in gra A, (x, y*) in gra B}``.

    Built in R^{4n} from ``gra A x gra B`` cut by ``x = y`` so that the
    multivalued parts add as a Minkowski sum.
    """
    if A.space_dim != B.space_dim:
        raise DimensionMismatch(f"space dimensions differ: {A.space_dim} vs {B.space_dim}")
    n = A.space_dim
    kA, kB = A.graph.dim, B.graph.dim
    product = np.zeros((kA + kB, 4 * n))
    product[:kA, : 2 * n] = A.graph.basis
    product[kA:, 2 * n:] = B.graph.basis
    prod = Subspace(4 * n, product, A.tol)
    # {x = y} is the complement of span{(e_i, 0, -e_i, 0)}
    eq_normals = np.zeros((n, 4 * n))
    eq_normals[:, :n] = np.eye(n)
    eq_normals[:, 2 * n: 3 * n] = -np.eye(n)
    diagonal = span_of(list(eq_normals), A.tol).complement()
    meet = prod.intersect(diagonal)
    b = meet.basis
    rows = np.hstack([b[:, :n], b[:, n: 2 * n] + b[:, 3 * n:]])
    return LinearRelation(n, span_of(list(rows), A.tol, ambient_dim=2 * n, scale=1.0))


def closure(A: LinearRelation) -> LinearRelation:
    """Graph closure; the identity here because every graph is already closed."""
    return A


def _float(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RelationFileError(f"expected a number, got {value!r}", field)
    return float(value)


def _tolerance_from(doc) -> Tolerance:
    raw = doc.get("tol")
    if raw is None:
        return DEFAULT_TOL
    if not isinstance(raw, dict):
        raise RelationFileError("expected an object", "tol")
    rank = _float(raw.get("rank", DEFAULT_TOL.rel_rank_tol), "tol.rank")
    psd = _float(raw.get("psd", DEFAULT_TOL.psd_tol), "tol.psd")
    if raw.get("unchecked", False):
        return Tolerance.unchecked(rank, psd)
    try:
        return Tolerance(rank, psd)
    except ValueError as exc:
        raise RelationFileError(str(exc), "tol") from None


def parse_relation(doc, tol: Tolerance | None = None) -> LinearRelation:
    """Build a relation from a decoded relation document.

    ``tol`` overrides the document's own ``"tol"`` entry.
    """
    if not isinstance(doc, dict):
        raise RelationFileError("top level must be a JSON object")
    if "dim" not in doc:
        raise RelationFileError("missing required key", "dim")
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise RelationFileError(f"expected a positive integer, got {n!r}", "dim")
    mode = doc.get("mode")
    if mode not in ("matrix", "graph"):
        raise RelationFileError(f"expected 'matrix' or 'graph', got {mode!r}", "mode")
    if tol is None:
        tol = _tolerance_from(doc)
    key, width = ("matrix", n) if mode == "matrix" else ("graph_basis", 2 * n)
    rows = doc.get(key)
    if not isinstance(rows, list):
        raise RelationFileError("missing or not a list", key)
    if mode == "matrix" and len(rows) != n:
        raise RelationFileError(f"expected {n} rows, got {len(rows)}", key)
    parsed = []
    for i, row in enumerate(rows):
        where = f"{key}[{i}]"
        if not isinstance(row, list):
            raise RelationFileError("row must be a list", where)
        if len(row) != width:
            raise RelationFileError(f"row has {len(row)} entries, expected {width}", where)
        parsed.append([_float(v, f"{where}[{j}]") for j, v in enumerate(row)])
    if mode == "matrix":
        return from_matrix(np.array(parsed), tol)
    return from_graph_span(n, [np.array(r) for r in parsed], tol)


def load_relation(path, tol: Tolerance | None = None) -> LinearRelation:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise RelationFileError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None
    except OSError as exc:
        raise RelationFileError(str(exc)) from None
    return parse_relation(doc, tol)


def relation_document(A: LinearRelation, meta: dict | None = None) -> dict:
    """Graph-mode relation document; round-trips through :func:`parse_relation`."""
    doc = {
        "dim": A.space_dim,
        "mode": "graph",
        "graph_basis": [[float(v) for v in row] for row in A.graph.basis],
    }
    tol = A.tol
    if tol != DEFAULT_TOL:
        doc["tol"] = {"rank": tol.rel_rank_tol, "psd": tol.psd_tol}
        if not tol.in_range:
            doc["tol"]["unchecked"] = True
    if meta:
        doc["meta"] = meta
    return doc
