"""Explicit spherical codes used to sanity-check the Delsarte bound."""
import itertools
import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from src.utils.errors import ParameterRangeError


@dataclass(frozen=True)
class SphericalCode:
    """A finite set of unit vectors, one per row of points."""
    name: str
    points: np.ndarray

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def gram(self) -> np.ndarray:
        return self.points @ self.points.T

    def max_inner_product(self) -> float:
        gram = self.gram()
        upper = gram[np.triu_indices(self.size, k=1)]
        return float(upper.max())

    def inner_product_distribution(self, decimals: int = 9) -> Dict[float, int]:
        """Count of each distinct pairwise inner product, rounded to decimals."""
        gram = self.gram()
        upper = np.round(gram[np.triu_indices(self.size, k=1)], decimals) + 0.0
        values, counts = np.unique(upper, return_counts=True)
        return {float(v): int(c) for v, c in zip(values, counts)}


def _normalize(points: np.ndarray) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def _check_dimension(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise ParameterRangeError(f"Dimension must be an integer >= {minimum}, got {n!r}")
    return n


def regular_simplex(n: int) -> SphericalCode:
    """n + 1 points in R^n with all inner products equal to -1/n."""
    _check_dimension(n)
    centered = np.eye(n + 1) - 1.0 / (n + 1)
    # Rows of vt beyond the first n span the all-ones direction only.
    _, _, vt = np.linalg.svd(centered)
    return SphericalCode(f"simplex-{n}", _normalize(centered @ vt[:n].T))


def cross_polytope(n: int) -> SphericalCode:
    """The 2n points +-e_i; distinct non-antipodal pairs are orthogonal."""
    _check_dimension(n)
    identity = np.eye(n)
    return SphericalCode(f"cross-polytope-{n}", np.vstack([identity, -identity]))


def regular_polygon(size: int) -> SphericalCode:
    """size equally spaced points on the unit circle."""
    _check_dimension(size, 2)
    angles = 2.0 * math.pi * np.arange(size) / size
    return SphericalCode(f"polygon-{size}", np.column_stack([np.cos(angles), np.sin(angles)]))


def icosahedron() -> SphericalCode:
    """The 12 vertices of the icosahedron; maximal inner product 1/sqrt(5)."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    points = []
    for a, b in itertools.product((-1.0, 1.0), repeat=2):
        points.extend([(0.0, a, b * phi), (a, b * phi, 0.0), (b * phi, 0.0, a)])
    return SphericalCode("icosahedron", _normalize(points))


def e8_roots() -> SphericalCode:
    """
    The 240 minimal vectors of the E8 lattice scaled to unit length.

    112 vectors +-e_i +- e_j and 128 vectors (+-1/2)^8 with an even number of
    minus signs; pairwise inner products after scaling lie in {-1, +-1/2, 0}.
    """
    points = []
    for i, j in itertools.combinations(range(8), 2):
        for a, b in itertools.product((-1.0, 1.0), repeat=2):
            vector = np.zeros(8)
            vector[i], vector[j] = a, b
            points.append(vector)
    for signs in itertools.product((-0.5, 0.5), repeat=8):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            points.append(np.array(signs))
    return SphericalCode("e8-roots", _normalize(points))
