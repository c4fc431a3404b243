"""Monotone linear relations on finite-dimensional Euclidean space."""

from .analysis import (
    CouplingForm,
    MaximalityReport,
    coupling_form,
    is_monotone,
    is_skew,
    is_symmetric,
    maximality_report,
    monotonically_related,
)
from .relation import (
    AffineSet,
    LinearRelation,
    add,
    adjoint,
    at_zero,
    closure,
    domain,
    from_graph_span,
    from_matrix,
    image,
    inverse,
    negate,
    range_of,
    scale,
)
from .subspace import Subspace, Tolerance, span_of

__version__ = "0.1.0"
