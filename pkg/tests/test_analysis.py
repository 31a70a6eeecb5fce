"""Density-matrix flattening, the 2-component PCA, and the separation score."""

import numpy as np
import pytest

from encoderlab import analysis, datasets, encoders
from encoderlab.analysis import (
    ComparisonPoint,
    comparison_map,
    comparison_to_json,
    fit_pca,
    flatten_density,
    flatten_states,
    separation_score,
)
from encoderlab.core import GateOp, density_matrix, run_circuit, zero_state
from encoderlab.errors import ContractError


def bell_density():
    return density_matrix(run_circuit([GateOp.ry(0, np.pi / 2), GateOp.cnot(0, 1)], 2))


def svd_oracle_variances(cloud: np.ndarray) -> np.ndarray:
    """Top-2 covariance eigenvalues via an independent SVD route."""
    centered = cloud - cloud.mean(axis=0)
    singular = np.linalg.svd(centered, compute_uv=False)
    return (singular**2 / (cloud.shape[0] - 1))[:2]


# --- flattening ------------------------------------------------------------


def test_flatten_zero_state():
    vec = flatten_density(density_matrix(zero_state(2)))
    assert vec.shape == (32,)
    assert vec[0] == 1.0
    assert not vec[1:].any()


def test_flatten_bell_state():
    vec = flatten_density(bell_density())
    hot = {0, 3, 12, 15}
    for i in range(16):
        assert vec[i] == pytest.approx(0.5 if i in hot else 0.0, abs=1e-12)
    assert np.max(np.abs(vec[16:])) < 1e-12


def test_flatten_diagonal_imaginary_slots_are_zero():
    rng = np.random.default_rng(3)
    raw = rng.normal(size=4) + 1j * rng.normal(size=4)
    from encoderlab.core import StateVector

    state = StateVector(2, raw / np.linalg.norm(raw))
    vec = flatten_density(density_matrix(state))
    for d in range(4):
        assert abs(vec[16 + 5 * d]) < 1e-12


def test_flatten_states_matches_per_state_route():
    from encoderlab.core import StateVector

    rng = np.random.default_rng(4)
    raw = rng.normal(size=(6, 4)) + 1j * rng.normal(size=(6, 4))
    states = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    batch = flatten_states(states)
    assert batch.shape == (6, 32)
    for i in range(6):
        single = flatten_density(density_matrix(StateVector(2, states[i])))
        assert np.max(np.abs(batch[i] - single)) < 1e-12


# --- PCA ---------------------------------------------------------------------


def test_fit_pca_identical_vectors_is_degenerate():
    model = fit_pca(np.tile(np.linspace(0, 1, 32), (5, 1)))
    assert model.degenerate
    assert model.explained_variance == (0.0, 0.0)


def test_fit_pca_requires_three_vectors():
    with pytest.raises(ContractError):
        fit_pca(np.zeros((2, 32)))


def test_fit_pca_collinear_cloud():
    rng = np.random.default_rng(8)
    direction = rng.normal(size=32)
    direction /= np.linalg.norm(direction)
    cloud = np.outer(np.linspace(-2, 2, 9), direction)
    model = fit_pca(cloud)
    assert abs(abs(np.dot(model.components[0], direction)) - 1.0) < 1e-10
    assert model.explained_variance[1] < 1e-10
    assert not model.degenerate


def test_fit_pca_matches_svd_oracle():
    rng = np.random.default_rng(15)
    for _ in range(10):
        n = int(rng.integers(5, 60))
        scales = rng.uniform(0.1, 5.0, 32)
        cloud = rng.normal(size=(n, 32)) * scales
        model = fit_pca(cloud)
        oracle = svd_oracle_variances(cloud)
        assert abs(model.explained_variance[0] - oracle[0]) < 1e-8
        assert abs(model.explained_variance[1] - oracle[1]) < 1e-8


def test_fit_pca_components_orthonormal():
    rng = np.random.default_rng(16)
    cloud = rng.normal(size=(40, 32))
    model = fit_pca(cloud)
    c0, c1 = model.components
    assert abs(np.linalg.norm(c0) - 1.0) < 1e-10
    assert abs(np.linalg.norm(c1) - 1.0) < 1e-10
    assert abs(np.dot(c0, c1)) < 1e-9


def test_fit_pca_sign_fix_makes_result_deterministic():
    rng = np.random.default_rng(17)
    cloud = rng.normal(size=(25, 32))
    a = fit_pca(cloud)
    b = fit_pca(cloud.copy())
    assert np.array_equal(a.components, b.components)
    assert a.explained_variance == b.explained_variance
    for component in a.components:
        peak = np.argmax(np.abs(component))
        assert component[peak] > 0


def test_projection_of_mean_is_origin():
    rng = np.random.default_rng(18)
    cloud = rng.normal(size=(30, 32)) + 3.0
    model = fit_pca(cloud)
    projected = model.project(cloud.mean(axis=0)[None, :])
    assert np.max(np.abs(projected)) < 1e-10


def test_variance_capture_bounded_by_total():
    rng = np.random.default_rng(19)
    cloud = rng.normal(size=(50, 32))
    model = fit_pca(cloud)
    total = np.var(cloud - cloud.mean(axis=0), axis=0, ddof=1).sum()
    assert sum(model.explained_variance) <= total + 1e-8

    # rank-2 data: the two components capture everything
    basis = rng.normal(size=(2, 32))
    coords = rng.normal(size=(50, 2)) * [3.0, 1.0]
    flat_cloud = coords @ basis
    model2 = fit_pca(flat_cloud)
    total2 = np.var(flat_cloud - flat_cloud.mean(axis=0), axis=0, ddof=1).sum()
    assert sum(model2.explained_variance) == pytest.approx(total2, abs=1e-8)


# --- comparison map -------------------------------------------------------------


def test_comparison_map_point_count_and_labels():
    grid = datasets.generate("D1-vstripes", 16)
    model, points = comparison_map(encoders.get_encoder("E01"), grid)
    assert len(points) == 256
    for point in points:
        assert point.label in (-1, 1)
        assert point.label == grid.labels[point.row, point.col]


def test_comparison_map_product_state_structure():
    # E01 entangles nothing: every cell's density matrix factors as
    # rho = rho_q0(f0) (x) rho_q1(f1); checked directly on a few cells
    grid = datasets.generate("D2-checkerboard", 8)
    template = encoders.get_encoder("E01")
    f0, f1 = grid.features()
    for cell in (0, 9, 27, 40, 63):
        state = encoders.encode_point(template, (f0[cell], f1[cell]))
        rho = density_matrix(state).entries
        a0 = np.pi * f0[cell]
        a1 = np.pi * f1[cell]
        q0 = np.array([np.cos(a0 / 2), np.sin(a0 / 2)])
        q1 = np.array([np.cos(a1 / 2), np.sin(a1 / 2)])
        expected = np.kron(np.outer(q0, q0), np.outer(q1, q1))
        assert np.max(np.abs(rho - expected)) < 1e-12


def test_comparison_map_same_f0_shares_reduced_state():
    # cells in one column agree in everything the q0 marginal can see
    grid = datasets.generate("D1-vstripes", 8)
    model, points = comparison_map(encoders.get_encoder("E01"), grid)
    template = encoders.get_encoder("E01")
    f0, f1 = grid.features()
    col = 3
    cells = [r * 8 + col for r in range(8)]
    marginals = []
    for cell in cells:
        rho = density_matrix(encoders.encode_point(template, (f0[cell], f1[cell]))).entries
        rho_q0 = rho.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
        marginals.append(rho_q0)
    for m in marginals[1:]:
        assert np.max(np.abs(m - marginals[0])) < 1e-12


def test_comparison_to_json_shape():
    grid = datasets.generate("D3-corner-circle", 4)
    model, points = comparison_map(encoders.get_encoder("E04"), grid)
    doc = comparison_to_json(model, points)
    assert len(doc["points"]) == 16
    first = doc["points"][0]
    assert sorted(first) == ["col", "label", "row", "x", "y"]
    assert sorted(doc["model"]) == ["degenerate", "explained_variance"]


# --- separation score ------------------------------------------------------------


def cluster(center, n, spread, label, rng):
    return [
        ComparisonPoint(center[0] + rng.normal() * spread, center[1] + rng.normal() * spread, label, 0, 0)
        for _ in range(n)
    ]


def test_far_clusters_score_high():
    rng = np.random.default_rng(31)
    points = cluster((0, 0), 20, 0.05, -1, rng) + cluster((10, 10), 20, 0.05, 1, rng)
    assert separation_score(points) > 0.8


def test_same_distribution_scores_near_zero():
    # Monte-Carlo: both classes drawn from one distribution
    for rep in range(100):
        rng = np.random.default_rng(1000 + rep)
        points = cluster((0, 0), 15, 1.0, -1, rng) + cluster((0, 0), 15, 1.0, 1, rng)
        assert abs(separation_score(points)) < 0.2


def test_coincident_classes_score_nonpositive():
    points = [
        ComparisonPoint(0.0, 0.0, -1, 0, 0),
        ComparisonPoint(0.0, 0.0, -1, 0, 1),
        ComparisonPoint(0.0, 0.0, 1, 1, 0),
        ComparisonPoint(0.0, 0.0, 1, 1, 1),
    ]
    assert separation_score(points) <= 0


def test_single_class_rejected():
    rng = np.random.default_rng(32)
    with pytest.raises(ContractError):
        separation_score(cluster((0, 0), 10, 1.0, 1, rng))
    undersized = cluster((0, 0), 1, 1.0, 1, rng) + cluster((5, 5), 10, 1.0, -1, rng)
    with pytest.raises(ContractError):
        separation_score(undersized)


def test_matched_pair_separates_better_than_mismatched():
    e01 = encoders.get_encoder("E01")
    matched = separation_score(comparison_map(e01, datasets.generate("D1-vstripes", 16))[1])
    mismatched = separation_score(comparison_map(e01, datasets.generate("D3-corner-circle", 16))[1])
    assert matched > mismatched
