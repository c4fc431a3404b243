import json

import numpy as np
import pytest

from linrel import (
    add,
    adjoint,
    at_zero,
    domain,
    from_graph_span,
    from_matrix,
    image,
    inverse,
    negate,
    range_of,
    scale,
)
from linrel.errors import DimensionMismatch, RelationFileError
from linrel.minty import PROFILES, random_relation
from linrel.relation import load_relation, parse_relation, relation_document
from linrel.subspace import Tolerance, full_space, span_of


def r2():
    return from_graph_span(2, [((1.0, 0.0), (0.0, 0.0))])


def test_from_matrix_graph():
    M = np.array([[1.0, 2.0], [3.0, 4.0]])
    A = from_matrix(M)
    assert A.graph.dim == 2
    assert A.contains_pair((1.0, 1.0), (3.0, 7.0))
    assert not A.contains_pair((1.0, 1.0), (3.0, 6.0))


def test_from_matrix_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        from_matrix(np.ones((2, 3)))


def test_from_graph_span_length_check():
    with pytest.raises(DimensionMismatch):
        from_graph_span(2, [(1.0, 0.0, 0.0)])


def test_r2_pieces():
    A = r2()
    assert domain(A).equals(span_of([(1.0, 0.0)]))
    assert range_of(A).dim == 0
    assert at_zero(A).dim == 0
    assert image(A, (0.0, 1.0)).is_empty
    Ax = image(A, (2.0, 0.0))
    assert np.allclose(Ax.base, 0.0) and Ax.direction.dim == 0


def test_r2_adjoint_is_plane_times_e2():
    Astar = adjoint(r2())
    expected = from_graph_span(2, [((1.0, 0.0), (0.0, 0.0)), ((0.0, 1.0), (0.0, 0.0)), ((0.0, 0.0), (0.0, 1.0))])
    assert Astar.equals(expected)
    assert at_zero(Astar).equals(span_of([(0.0, 1.0)]))


def test_image_of_multivalued_relation():
    # gra A = {0} x R^2 + span{(e1, e1)}
    A = from_graph_span(2, [((1.0, 0.0), (1.0, 0.0)), ((0.0, 0.0), (0.0, 1.0))])
    Ax = image(A, (3.0, 0.0))
    assert Ax.contains((3.0, 5.0))
    assert not Ax.contains((2.0, 0.0))
    assert Ax.equals(image(A, (3.0, 0.0)))


def test_adjoint_of_matrix_is_transpose():
    rng = np.random.default_rng(0)
    for _ in range(50):
        M = rng.standard_normal((4, 4))
        assert adjoint(from_matrix(M)).equals(from_matrix(M.T))


@pytest.mark.parametrize("profile", PROFILES)
def test_adjoint_involution(profile):
    for seed in range(15):
        A = random_relation(seed, 5, profile)
        assert adjoint(adjoint(A)).equals(A)


def test_adjoint_defining_orthogonality():
    A = random_relation(1, 4, "monotone_nonmaximal")
    B = adjoint(A)
    n = 4
    # <x, y*> = <x*, y> for (x, x*) in gra A and (y, y*) in gra A*
    lhs = A.x_block @ B.xstar_block.T
    rhs = A.xstar_block @ B.x_block.T
    assert np.abs(lhs - rhs).max() < 1e-12
    assert A.graph.dim + B.graph.dim == 2 * n


def test_scale_and_negate():
    M = np.array([[1.0, 2.0], [0.0, 3.0]])
    A = from_matrix(M)
    assert scale(A, 2.5).equals(from_matrix(2.5 * M))
    assert negate(A).equals(from_matrix(-M))
    zero = scale(A, 0.0)
    assert zero.equals(from_matrix(np.zeros((2, 2))))


def test_scale_zero_keeps_domain_only():
    assert scale(r2(), 0.0).equals(r2())


def test_inverse():
    M = np.array([[2.0, 1.0], [0.0, 1.0]])
    assert inverse(from_matrix(M)).equals(from_matrix(np.linalg.inv(M)))


def test_add_matrices():
    rng = np.random.default_rng(3)
    M, N = rng.standard_normal((2, 3, 3))
    assert add(from_matrix(M), from_matrix(N)).equals(from_matrix(M + N))


def test_add_intersects_domains_and_sums_multivalued_parts():
    A = r2()
    B = from_graph_span(2, [((1.0, 0.0), (0.0, 0.0)), ((0.0, 0.0), (0.0, 1.0))])
    S = add(A, B)
    assert domain(S).equals(span_of([(1.0, 0.0)]))
    assert at_zero(S).equals(span_of([(0.0, 1.0)]))


def test_add_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        add(from_matrix(np.eye(2)), from_matrix(np.eye(3)))


def test_domain_full_for_matrix():
    assert domain(from_matrix(np.zeros((3, 3)))).equals(full_space(3))


def test_parse_matrix_mode():
    A = parse_relation({"dim": 2, "mode": "matrix", "matrix": [[1, 0], [0, 1]]})
    assert A.equals(from_matrix(np.eye(2)))


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"mode": "matrix"}, "dim"),
        ({"dim": 0, "mode": "matrix"}, "dim"),
        ({"dim": 2, "mode": "other"}, "mode"),
        ({"dim": 2, "mode": "graph", "graph_basis": [[1, 0, 0]]}, "graph_basis[0]"),
        ({"dim": 2, "mode": "matrix", "matrix": [[1, 0]]}, "matrix"),
        ({"dim": 2, "mode": "matrix", "matrix": [[1, "a"], [0, 1]]}, "matrix[0][1]"),
        ({"dim": 1, "mode": "graph", "graph_basis": [[1, 0]], "tol": {"psd": 2.0}}, "tol"),
    ],
)
def test_parse_errors_name_the_field(doc, field):
    with pytest.raises(RelationFileError) as exc:
        parse_relation(doc)
    assert exc.value.field == field
    assert str(exc.value).startswith(field)


def test_row_length_message():
    with pytest.raises(RelationFileError, match=r"graph_basis\[0\]: row has 3 entries, expected 4"):
        parse_relation({"dim": 2, "mode": "graph", "graph_basis": [[1, 0, 0]]})


def test_document_round_trip(tmp_path):
    A = random_relation(5, 3, "multivalued_maximal")
    path = tmp_path / "a.json"
    path.write_text(json.dumps(relation_document(A, {"note": "x"})))
    assert load_relation(path).equals(A)


def test_document_round_trip_unchecked_tol(tmp_path):
    A = random_relation(5, 3, "maximal", Tolerance.unchecked(psd_tol=1.0))
    doc = relation_document(A)
    assert doc["tol"]["unchecked"] is True
    assert parse_relation(doc).tol.psd_tol == 1.0


def test_load_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(RelationFileError, match="line 1"):
        load_relation(path)
