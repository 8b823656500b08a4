#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Affine map from the new feature space back to the old one, fit by ridge least squares on the
samples observed in both spaces.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, lstsq

from .errors import ConfigurationError, InputError, NumericalError
from .kernelspace import PointsLike, VectorLike, as_points, as_vector

logger = logging.getLogger(__name__)

#: A ``(new space vector, old space vector)`` pair observed in the same round.
FeaturePair = Tuple[VectorLike, VectorLike]

#: Scale of the default ridge relative to the mean variance of the new-space features.
DEFAULT_RIDGE_SCALE = 1e-6


@dataclass(frozen=True, eq=False)
class LinearMap:
    """
    ``psi(x) = matrix @ x + intercept``, mapping ``d2`` features to ``d1`` features.
    """

    matrix: np.ndarray
    intercept: np.ndarray
    ridge: float = 0.0

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        intercept = np.array(self.intercept, dtype=float).reshape(-1)
        if matrix.ndim != 2 or matrix.shape[0] != intercept.shape[0]:
            raise InputError(
                "matrix of shape %s does not match an intercept of length %d"
                % (matrix.shape, intercept.shape[0])
            )
        matrix.setflags(write=False)
        intercept.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "intercept", intercept)

    @property
    def d1(self) -> int:
        return self.matrix.shape[0]

    @property
    def d2(self) -> int:
        return self.matrix.shape[1]

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls(np.eye(dim), np.zeros(dim))

    def __call__(self, x: VectorLike) -> np.ndarray:
        return apply_mapping(self, x)


def _split_pairs(pairs: Sequence[FeaturePair]) -> Tuple[np.ndarray, np.ndarray]:
    if not len(pairs):
        raise InputError("cannot fit a mapping without any overlapping pairs")
    new = as_points([pair[0] for pair in pairs])
    old = as_points([pair[1] for pair in pairs])
    return new, old


def default_ridge(new_points: PointsLike) -> float:
    """
    :returns: ``1e-6 * trace(Xc^T Xc) / d2`` for the centered new-space points, or ``1e-6`` when
        the points have no spread
    """
    pts = as_points(new_points)
    centered = pts - pts.mean(axis=0)
    spread = float(np.sum(centered * centered)) / pts.shape[1]
    return DEFAULT_RIDGE_SCALE * spread if spread > 0 else DEFAULT_RIDGE_SCALE


def fit_mapping(pairs: Sequence[FeaturePair], ridge: Optional[float] = None) -> LinearMap:
    """
    Fit the affine map minimizing ``sum ||M x2 + c - x1||^2 + ridge ||M||_F^2``. The intercept is
    not penalized.

    :param pairs: ``(x2, x1)`` pairs from the overlapping period
    :param ridge: penalty on ``M``; ``None`` selects :func:`default_ridge`
    :raises InputError: no pairs, or inconsistent dimensions
    :raises NumericalError: ``ridge == 0`` and the pairs do not determine ``M``
    """
    new, old = _split_pairs(pairs)
    d2 = new.shape[1]
    if ridge is None:
        ridge = default_ridge(new)
    elif ridge < 0:
        raise ConfigurationError("mapping ridge must be >= 0, got %r" % (ridge,))

    new_mean = new.mean(axis=0)
    old_mean = old.mean(axis=0)
    lhs = new - new_mean
    rhs = old - old_mean
    if ridge > 0:
        lhs = np.vstack([lhs, np.sqrt(ridge) * np.eye(d2)])
        rhs = np.vstack([rhs, np.zeros((d2, old.shape[1]))])

    try:
        solution, _, rank, _ = lstsq(lhs, rhs)
    except LinAlgError as err:
        raise NumericalError(
            "mapping least squares did not converge", {"pairs": len(pairs)}
        ) from err

    if ridge == 0 and rank < d2:
        raise NumericalError(
            "overlapping pairs do not determine the mapping; set a ridge > 0",
            {"pairs": len(pairs), "rank": int(rank), "d2": d2},
        )

    matrix = solution.T
    result = LinearMap(matrix, old_mean - matrix @ new_mean, ridge)
    logger.debug(
        "fit %dx%d mapping on %d pairs (ridge=%.3g, residual=%.3g)",
        result.d1,
        result.d2,
        len(pairs),
        ridge,
        mapping_residual(result, pairs),
    )
    return result


def apply_mapping(m: LinearMap, x: VectorLike) -> np.ndarray:
    """
    :returns: ``M x + c``
    :raises InputError: ``x`` does not have ``d2`` features
    """
    return m.matrix @ as_vector(x, m.d2) + m.intercept


def apply_mapping_many(m: LinearMap, points: PointsLike) -> np.ndarray:
    """
    :returns: the mapping applied to every row
    """
    return as_points(points, m.d2) @ m.matrix.T + m.intercept


def mapping_residual(m: LinearMap, pairs: Sequence[FeaturePair]) -> float:
    """
    :returns: root mean squared Euclidean error of the mapping over ``pairs``
    """
    new, old = _split_pairs(pairs)
    errors = apply_mapping_many(m, new) - as_points(old, m.d1)
    return float(np.sqrt(np.mean(np.sum(errors * errors, axis=1))))
