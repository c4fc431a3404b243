import math

import numpy as np
import pytest

from linrel import from_graph_span, from_matrix
from linrel.analysis import maximality_report
from linrel.certificates import (
    CouplingFunction,
    conjugate_F,
    eval_F,
    eval_F_translated,
    ni_certificate,
    ni_sampling_check,
    probe_points,
    regularization_gap,
    regularization_gap_direct,
    regularization_objective,
)
from linrel.errors import PreconditionError
from linrel.minty import PROFILES, is_minty_full, random_relation

MONOTONE = [p for p in PROFILES if p != "nonmonotone"]


def r2():
    return from_graph_span(2, [((1.0, 0.0), (0.0, 0.0))])


def test_eval_F():
    cf = CouplingFunction(from_matrix(np.eye(2)))
    assert eval_F(cf, (1.0, 1.0), (1.0, 1.0)) == 2.0
    assert cf((1.0, 1.0), (1.0, 0.0)) == math.inf
    assert eval_F(r2(), (1.0, 0.0), (0.0, 0.0)) == 0.0


def test_eval_F_translated():
    A = r2()
    assert eval_F_translated(A, (0.0, 1.0), (0.0, 0.0), (1.0, -1.0), (0.0, 0.0)) == 0.0
    assert eval_F_translated(A, (1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)) == 0.0
    rng = np.random.default_rng(0)
    B = random_relation(0, 3, "maximal")
    for _ in range(10):
        v = rng.standard_normal(B.graph.dim) @ B.graph.basis
        x, xs = v[:3], v[3:]
        zero = np.zeros(3)
        assert eval_F_translated(B, zero, zero, x, xs) == pytest.approx(eval_F(B, x, xs))


def test_conjugate_identity():
    A = from_matrix(np.eye(2))
    rng = np.random.default_rng(1)
    for _ in range(10):
        ys, yss = rng.standard_normal((2, 2))
        assert conjugate_F(A, ys, yss) == pytest.approx(0.25 * np.sum((ys + yss) ** 2))


def test_conjugate_at_origin_and_r2():
    assert conjugate_F(r2(), (0.0, 0.0), (0.0, 0.0)) == 0.0
    assert conjugate_F(r2(), (0.0, 1.0), (0.0, 0.0)) == 0.0
    assert conjugate_F(r2(), (1.0, 0.0), (0.0, 0.0)) == math.inf


def test_conjugate_never_minus_infinity():
    rng = np.random.default_rng(5)
    for profile in PROFILES:
        A = random_relation(2, 3, profile)
        for _ in range(5):
            assert conjugate_F(A, *rng.standard_normal((2, 3))) >= 0.0


@pytest.mark.parametrize("profile", MONOTONE)
def test_fenchel_young(profile):
    rng = np.random.default_rng(3)
    A = random_relation(8, 4, profile)
    for _ in range(20):
        v = rng.standard_normal(A.graph.dim) @ A.graph.basis
        x, xs = v[:4], v[4:]
        ys, yss = rng.standard_normal((2, 4))
        Fstar = conjugate_F(A, ys, yss)
        if Fstar < math.inf:
            assert eval_F(A, x, xs) + Fstar >= x @ ys + xs @ yss - 1e-9


@pytest.mark.parametrize("profile", MONOTONE)
def test_F_midpoint_convexity(profile):
    rng = np.random.default_rng(4)
    A = random_relation(1, 4, profile)
    for _ in range(20):
        u, w = rng.standard_normal((2, A.graph.dim)) @ A.graph.basis
        m = 0.5 * (u + w)
        lhs = eval_F(A, m[:4], m[4:])
        assert lhs <= 0.5 * eval_F(A, u[:4], u[4:]) + 0.5 * eval_F(A, w[:4], w[4:]) + 1e-9


def test_ni_examples():
    assert ni_certificate(from_matrix(np.eye(3)))
    assert not ni_certificate(r2())
    with pytest.raises(PreconditionError):
        ni_certificate(from_matrix(-np.eye(2)))


@pytest.mark.parametrize("profile", MONOTONE)
def test_ni_iff_maximal(profile):
    rng = np.random.default_rng(0)
    for n in range(1, 7):
        for seed in range(8):
            A = random_relation(seed, n, profile)
            cert = ni_certificate(A)
            assert cert == maximality_report(A).maximal
            if cert:
                assert ni_sampling_check(A, rng, samples=50)


def test_ni_sampling_finds_r2_violation():
    assert not ni_sampling_check(r2(), np.random.default_rng(0), samples=200)


def test_gap_examples():
    A = r2()
    assert regularization_gap(A, (0.0, 1.0), (0.0, 0.0)) == pytest.approx(0.5)
    assert regularization_gap(A, (1.0, 0.0), (0.0, 0.0)) == 0.0
    M = random_relation(3, 4, "maximal")
    for z, zs in probe_points(4, 8):
        assert regularization_gap(M, z, zs) < 1e-12


def test_gap_matches_literal_objective_at_minimizer():
    A = r2()
    G = regularization_objective(A, (0.0, 1.0), (0.0, 0.0))
    # feasible x = (t, -1), x* = 0, where G = (t^2 + 1) / 2
    assert G((0.0, -1.0), (0.0, 0.0)) == pytest.approx(0.5)
    assert G((0.0, 0.0), (0.0, 0.0)) == math.inf


@pytest.mark.parametrize("profile", PROFILES)
def test_gap_closed_form_vs_direct(profile):
    rng = np.random.default_rng(12)
    for seed in range(10):
        A = random_relation(seed, 4, profile)
        z, zs = rng.standard_normal((2, 4))
        g = regularization_gap(A, z, zs)
        assert g >= 0.0
        assert abs(g - regularization_gap_direct(A, z, zs)) <= 1e-8 * max(1.0, g)


@pytest.mark.parametrize("profile", MONOTONE)
def test_gap_zero_iff_minty_full(profile):
    for n in range(1, 7):
        for seed in range(8):
            A = random_relation(seed, n, profile)
            zero = all(regularization_gap(A, z, zs) <= 1e-10 for z, zs in probe_points(n, 2 * n))
            assert zero == is_minty_full(A)


def test_probe_points_order():
    pts = probe_points(2, 8)
    assert len(pts) == 6
    assert np.array_equal(pts[0][0], [1.0, 0.0]) and np.array_equal(pts[2][1], [1.0, 0.0])
    assert np.array_equal(pts[5][0], pts[5][1])
    assert len(probe_points(5, 8)) == 8
