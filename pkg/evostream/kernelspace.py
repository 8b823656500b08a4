#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Kernel functions and graph edge weights.

The same :class:`KernelConfig` type describes the predictor kernel and the similarity graph of the
manifold regularizer. Both are Gaussian by default; other radial profiles can be added with
:func:`register_kernel`.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Union

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from .errors import ConfigurationError, InputError

logger = logging.getLogger(__name__)

#: A radial kernel profile: ``profile(squared_distances, bandwidth) -> kernel values``.
KernelProfile = Callable[[np.ndarray, float], np.ndarray]

PointsLike = Union[np.ndarray, Sequence[Sequence[float]]]
VectorLike = Union[np.ndarray, Sequence[float]]


def _gaussian(sqdist: np.ndarray, bandwidth: float) -> np.ndarray:
    return np.exp(-sqdist / (2.0 * bandwidth * bandwidth))


def _laplacian(sqdist: np.ndarray, bandwidth: float) -> np.ndarray:
    return np.exp(-np.sqrt(sqdist) / bandwidth)


KERNELS: Dict[str, KernelProfile] = {
    "gaussian": _gaussian,
    "laplacian": _laplacian,
}


def register_kernel(name: str, profile: KernelProfile) -> None:
    """
    Register a radial kernel profile under ``name``. The profile receives squared Euclidean
    distances and must return values in ``(0, 1]`` with ``profile(0) == 1``.
    """
    KERNELS[name] = profile


@dataclass(frozen=True)
class KernelConfig:
    """
    Kernel bandwidth and profile.
    """

    bandwidth: float
    kind: str = "gaussian"

    def __post_init__(self):
        if not math.isfinite(self.bandwidth) or self.bandwidth <= 0:
            raise ConfigurationError("kernel bandwidth must be > 0, got %r" % (self.bandwidth,))
        if self.kind not in KERNELS:
            raise ConfigurationError(
                "unknown kernel %r: must be one of %s" % (self.kind, ", ".join(sorted(KERNELS)))
            )

    def apply(self, sqdist: np.ndarray) -> np.ndarray:
        """
        :returns: kernel values for an array of squared distances
        """
        return KERNELS[self.kind](sqdist, self.bandwidth)


def as_vector(x: VectorLike, dim: Optional[int] = None) -> np.ndarray:
    """
    :returns: ``x`` as a 1-d float array
    :raises InputError: not a vector, or its length differs from ``dim``
    """
    vec = np.asarray(x, dtype=float)
    if vec.ndim != 1:
        raise InputError("expected a feature vector, got an array of shape %s" % (vec.shape,))
    if dim is not None and vec.shape[0] != dim:
        raise InputError("dimension mismatch: expected %d features, got %d" % (dim, vec.shape[0]))
    return vec


def as_points(points: PointsLike, dim: Optional[int] = None) -> np.ndarray:
    """
    :returns: ``points`` as an ``(n, d)`` float array; an empty sequence becomes ``(0, dim)``
    :raises InputError: ragged input or a dimension different from ``dim``
    """
    try:
        arr = np.asarray(points, dtype=float)
    except ValueError as err:
        raise InputError("points must share one dimension") from err

    if arr.size == 0:
        return np.zeros((0, dim if dim is not None else (arr.shape[-1] if arr.ndim == 2 else 0)))
    if arr.ndim != 2:
        raise InputError("points must share one dimension")
    if dim is not None and arr.shape[1] != dim:
        raise InputError("dimension mismatch: expected %d features, got %d" % (dim, arr.shape[1]))
    return arr


def kernel_eval(cfg: KernelConfig, a: VectorLike, b: VectorLike) -> float:
    """
    :returns: ``K(a, b)``, ``exp(-||a - b||^2 / (2 sigma^2))`` for the Gaussian kernel
    :raises InputError: ``a`` and ``b`` differ in dimension
    """
    va = as_vector(a)
    vb = as_vector(b, va.shape[0])
    diff = va - vb
    return float(cfg.apply(np.asarray(diff @ diff)))


def cross_gram(cfg: KernelConfig, left: PointsLike, right: PointsLike) -> np.ndarray:
    """
    :returns: the ``(len(left), len(right))`` matrix of kernel values
    """
    lhs = as_points(left)
    rhs = as_points(right)
    if lhs.shape[0] == 0 or rhs.shape[0] == 0:
        return np.zeros((lhs.shape[0], rhs.shape[0]))
    if lhs.shape[1] != rhs.shape[1]:
        raise InputError(
            "dimension mismatch: %d features vs %d features" % (lhs.shape[1], rhs.shape[1])
        )
    return cfg.apply(cdist(lhs, rhs, "sqeuclidean"))


def kernel_column(cfg: KernelConfig, points: PointsLike, x: VectorLike) -> np.ndarray:
    """
    :returns: ``K(points[s], x)`` for every point
    """
    pts = as_points(points)
    if pts.shape[0] == 0:
        return np.zeros(0)
    vec = as_vector(x, pts.shape[1])
    diff = pts - vec
    return cfg.apply(np.einsum("ij,ij->i", diff, diff))


def gram_matrix(cfg: KernelConfig, points: PointsLike) -> np.ndarray:
    """
    :returns: the symmetric Gram matrix of ``points`` with unit diagonal
    """
    pts = as_points(points)
    n = pts.shape[0]
    if n == 0:
        return np.zeros((0, 0))
    if n == 1:
        return np.ones((1, 1))
    return cfg.apply(squareform(pdist(pts, "sqeuclidean")))


def median_bandwidth(points: PointsLike, limit: int = 100) -> float:
    """
    Median heuristic: the median pairwise Euclidean distance among the first ``limit`` points.
    Falls back to ``1.0`` when fewer than two distinct points are available.
    """
    pts = as_points(points)[:limit]
    if pts.shape[0] < 2:
        return 1.0

    median = float(np.median(pdist(pts, "euclidean")))
    if not math.isfinite(median) or median <= 0:
        logger.debug("median heuristic degenerate over %d points, using 1.0", pts.shape[0])
        return 1.0
    return median
