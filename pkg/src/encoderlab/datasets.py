"""Deterministic generators for the six labeled 2-feature grid datasets.

Every dataset is a G×G grid of cell-center points: feature 0 at column c is
(c + 0.5)/G, feature 1 at row r is (r + 0.5)/G, so no point sits exactly on
the domain boundary. Labels are +1 or −1. Grids double as training sets and
as the domain every heatmap is evaluated over.

The catalog spans linearly separable, periodic, and radial structure so the
encoder maps and comparison maps have visibly different things to show.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, NotFoundError

DEFAULT_RESOLUTION = 16
MIN_RESOLUTION = 4
MAX_RESOLUTION = 64


def grid_features(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Flat row-major (f0, f1) arrays for a G×G cell-center grid.

    Index i = row·G + col maps to f0 = (col + 0.5)/G, f1 = (row + 0.5)/G.
    """
    centers = (np.arange(resolution) + 0.5) / resolution
    f1, f0 = np.meshgrid(centers, centers, indexing="ij")
    return f0.reshape(-1), f1.reshape(-1)


@dataclass(frozen=True)
class LabeledGrid:
    """A G×G grid of labeled points; labels[row][col] with row = f1 bin, col = f0 bin."""

    id: str
    display_name: str
    resolution: int
    labels: np.ndarray = field(repr=False)

    def features(self) -> tuple[np.ndarray, np.ndarray]:
        """Flat row-major (f0, f1) feature arrays matching labels_flat()."""
        return grid_features(self.resolution)

    def labels_flat(self) -> np.ndarray:
        """Labels as a flat row-major float array of +1.0 / −1.0."""
        return self.labels.reshape(-1).astype(np.float64)

    def class_balance(self) -> float:
        """Fraction of cells labeled +1."""
        return float(np.mean(self.labels == 1))

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "display_name": self.display_name,
            "resolution": self.resolution,
            "labels": [int(v) for v in self.labels.reshape(-1)],
        }


def _vstripes(f0, f1):
    return np.floor(2 * f0) % 2 == 0


def _checkerboard(f0, f1):
    return (np.floor(2 * f0) + np.floor(2 * f1)) % 2 == 0


def _corner_circle(f0, f1):
    return (f0 - 0.625) ** 2 + (f1 - 0.625) ** 2 <= 0.28**2


def _diagonal(f0, f1):
    return f1 > f0


def _ring(f0, f1):
    # band chosen so cell centers land inside it at every legal resolution
    r = np.sqrt((f0 - 0.5) ** 2 + (f1 - 0.5) ** 2)
    return (r >= 0.15) & (r <= 0.4)


def _hstripes(f0, f1):
    return f1 > 0.5


_CATALOG = (
    ("D1-vstripes", "Vertical Stripes", _vstripes, "two vertical bands, +1 on the left half"),
    ("D2-checkerboard", "Checkerboard", _checkerboard, "2×2 XOR parity of the feature halves"),
    ("D3-corner-circle", "Corner Circle", _corner_circle, "+1 disk of radius 0.28 centered at (0.625, 0.625)"),
    ("D4-diagonal", "Diagonal Split", _diagonal, "+1 above the f1 = f0 diagonal"),
    ("D5-ring", "Ring", _ring, "+1 annulus 0.15 ≤ r ≤ 0.4 around the center"),
    ("D6-hstripes", "Horizontal Split", _hstripes, "+1 upper half, f1 > 0.5"),
)

_RULES = {entry[0]: entry for entry in _CATALOG}

DATASET_IDS = tuple(entry[0] for entry in _CATALOG)


def generate(dataset_id: str, resolution: int = DEFAULT_RESOLUTION) -> LabeledGrid:
    """Build a dataset grid at the requested resolution.

    Raises:
        NotFoundError: unknown dataset id.
        ConfigurationError: resolution outside [4, 64].
    """
    if dataset_id not in _RULES:
        raise NotFoundError(f"unknown dataset {dataset_id!r}")
    if not MIN_RESOLUTION <= resolution <= MAX_RESOLUTION:
        raise ConfigurationError(
            f"resolution must be in [{MIN_RESOLUTION}, {MAX_RESOLUTION}], got {resolution}"
        )
    _, display_name, rule, _ = _RULES[dataset_id]
    f0, f1 = grid_features(resolution)
    labels = np.where(rule(f0, f1), 1, -1).astype(np.int8)
    return LabeledGrid(dataset_id, display_name, resolution, labels.reshape(resolution, resolution))


def describe(dataset_id: str) -> str:
    """One-line description of a dataset's labeling rule."""
    if dataset_id not in _RULES:
        raise NotFoundError(f"unknown dataset {dataset_id!r}")
    return _RULES[dataset_id][3]


def list_datasets() -> list[dict]:
    """Catalog summary: id, display name, description, class balance at the default resolution."""
    out = []
    for dataset_id, display_name, _, description in _CATALOG:
        grid = generate(dataset_id, DEFAULT_RESOLUTION)
        out.append(
            {
                "id": dataset_id,
                "display_name": display_name,
                "description": description,
                "class_balance": grid.class_balance(),
            }
        )
    return out
