"""State-space analysis: density-matrix flattening, exact 2-component PCA,
and the labeled State Comparison Map with its silhouette separation score.

A 2-qubit density matrix becomes a real 32-vector (16 real parts row-major,
then 16 imaginary parts). PCA is an exact eigendecomposition of the 32×32
sample covariance, tiny and deterministic. Eigenvectors are canonicalized
by a sign rule (largest-magnitude entry made positive, ties to the lowest
index) so identical inputs always produce bit-identical models.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DensityMatrix
from .datasets import LabeledGrid
from .encoders import EncoderTemplate, encode_batch
from .errors import ContractError

FLAT_DIM = 32

_ZERO_VARIANCE_TOL = 1e-14


def flatten_density(dm: DensityMatrix) -> np.ndarray:
    """Flatten ρ to 32 reals: row-major real parts, then row-major imaginary parts."""
    flat = dm.entries.reshape(-1)
    return np.concatenate([flat.real, flat.imag])


def flatten_states(states: np.ndarray) -> np.ndarray:
    """Flattened density matrices for a (n, 4) statevector batch, shape (n, 32)."""
    rho = states[:, :, None] * states[:, None, :].conj()
    flat = rho.reshape(len(states), 16)
    return np.concatenate([flat.real, flat.imag], axis=1)


@dataclass(frozen=True)
class PcaModel:
    """Mean, top-2 orthonormal components, and their explained variances."""

    mean: np.ndarray = field(repr=False)
    components: np.ndarray = field(repr=False)
    explained_variance: tuple[float, float]
    degenerate: bool = False

    def project(self, vectors: np.ndarray) -> np.ndarray:
        """Project (n, 32) vectors to (n, 2) principal coordinates."""
        centered = np.atleast_2d(np.asarray(vectors, dtype=np.float64)) - self.mean
        return centered @ self.components.T


@dataclass(frozen=True)
class ComparisonPoint:
    """One grid cell in principal coordinates, tagged with its class and origin."""

    x: float
    y: float
    label: int
    row: int
    col: int


def _canonical_sign(components: np.ndarray) -> np.ndarray:
    out = components.copy()
    for i in range(out.shape[0]):
        pivot = np.argmax(np.abs(out[i]))
        if out[i, pivot] < 0:
            out[i] = -out[i]
    return out


def fit_pca(vectors) -> PcaModel:
    """Top-2 PCA via exact covariance eigendecomposition.

    Zero total variance yields a degenerate model whose components are the
    first two canonical basis vectors with zero explained variance.

    Raises:
        ContractError: fewer than 3 vectors.
    """
    data = np.asarray(vectors, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < 3:
        raise ContractError("fit_pca requires at least 3 vectors")
    dim = data.shape[1]
    mean = data.mean(axis=0)
    centered = data - mean
    cov = centered.T @ centered / (data.shape[0] - 1)
    if float(np.trace(cov)) <= _ZERO_VARIANCE_TOL:
        components = np.zeros((2, dim))
        components[0, 0] = 1.0
        components[1, 1] = 1.0
        return PcaModel(mean, components, (0.0, 0.0), degenerate=True)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    top = np.argsort(eigenvalues)[::-1][:2]
    components = _canonical_sign(eigenvectors[:, top].T)
    variance = tuple(max(float(eigenvalues[i]), 0.0) for i in top)
    return PcaModel(mean, components, variance, degenerate=False)


def comparison_map(
    encoder: EncoderTemplate, grid: LabeledGrid
) -> tuple[PcaModel, list[ComparisonPoint]]:
    """The State Comparison Map: every cell's flattened ρ projected to 2D.

    The PCA is fit on this (encoder, grid) pair's own vectors; each projected
    point carries its grid cell's class label and (row, col) back-reference.
    """
    resolution = grid.resolution
    f0, f1 = grid.features()
    states = encode_batch(encoder, f0, f1)
    flat = flatten_states(states)
    model = fit_pca(flat)
    coords = model.project(flat)
    labels = grid.labels.reshape(-1)
    points = [
        ComparisonPoint(
            x=float(coords[i, 0]),
            y=float(coords[i, 1]),
            label=int(labels[i]),
            row=i // resolution,
            col=i % resolution,
        )
        for i in range(len(coords))
    ]
    return model, points


def separation_score(points: list[ComparisonPoint]) -> float:
    """Mean silhouette of the projected points with class labels as clusters.

    Higher means cleaner class separation in state space; coincident classes
    score ≤ 0.

    Raises:
        ContractError: fewer than 2 points in either class.
    """
    labels = np.array([p.label for p in points])
    coords = np.array([[p.x, p.y] for p in points], dtype=np.float64)
    positive = labels == 1
    if positive.sum() < 2 or (~positive).sum() < 2:
        raise ContractError("separation_score needs at least 2 points per class")
    dist = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(axis=2))
    n = len(points)
    silhouettes = np.empty(n)
    for i in range(n):
        same = positive == positive[i]
        a = dist[i, same].sum() / (same.sum() - 1)  # excludes the zero self-distance
        b = dist[i, ~same].mean()
        denom = max(a, b)
        silhouettes[i] = 0.0 if denom == 0 else (b - a) / denom
    return float(np.mean(silhouettes))


def comparison_to_json(model: PcaModel, points: list[ComparisonPoint]) -> dict:
    """Wire format for the comparison map: variance summary plus labeled points."""
    return {
        "model": {
            "explained_variance": [float(v) for v in model.explained_variance],
            "degenerate": model.degenerate,
        },
        "points": [
            {"x": p.x, "y": p.y, "label": p.label, "row": p.row, "col": p.col}
            for p in points
        ],
    }
