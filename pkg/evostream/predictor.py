#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Kernel-expansion predictors, the instantaneous regularized risk and its functional-gradient
updates.

A predictor is ``f(x) = sum_s beta_s K(z_s, x)`` over a set of representers ``z_s``. The risk of
``f`` at round ``t`` combines the supervised loss on the current sample (scaled by the inverse
label probability and only present when the label was revealed), an RKHS-norm penalty and a
manifold term that penalizes prediction differences between the current sample and the samples
held in a buffer, weighted by a Gaussian similarity graph:

.. code-block:: text

    J_t(f) = (T/l) delta_t loss(f(x_t), y_t)
             + lambda1 / 2 ||f||_K^2
             + lambda2 (t - 1) / b sum_{s in B} (f(x_s) - f(x_t))^2 w_st

The update functions take one gradient step ``f - tau grad J_t(f)`` and keep the expansion on the
buffer contents, projecting in the RKHS when a representer has to leave.

The update functions require the trailing representers of ``f`` to be the buffer contents in
slot order. Leading representers, if any, are anchors: they take part in prediction, shrinkage
and projection but not in the similarity graph.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Protocol, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, solve
from scipy.special import expit

from .errors import ConfigurationError, InputError, InternalError, NumericalError
from .kernelspace import (
    KernelConfig,
    PointsLike,
    VectorLike,
    as_points,
    as_vector,
    cross_gram,
    gram_matrix,
    kernel_column,
)

logger = logging.getLogger(__name__)

#: Identifier of the original feature space.
SPACE_OLD = "S1"

#: Identifier of the feature space that replaces it.
SPACE_NEW = "S2"

#: Ridge added to the target Gram matrix when projecting.
PROJECTION_RIDGE = 1e-8


@dataclass(frozen=True, eq=False)
class Sample:
    """
    One observation: a feature vector of a feature space and the label, when it was revealed.
    """

    features: np.ndarray
    space_id: str
    label: Optional[int] = None
    step: int = 1

    def __post_init__(self):
        object.__setattr__(self, "features", as_vector(self.features))
        if self.label is not None:
            if self.label not in (-1, 1):
                raise InputError("label must be -1 or +1, got %r" % (self.label,))
            object.__setattr__(self, "label", int(self.label))
        if self.step < 1:
            raise InputError("step must be >= 1, got %d" % self.step)

    @property
    def labeled(self) -> bool:
        return self.label is not None

    @property
    def dim(self) -> int:
        return self.features.shape[0]


@dataclass(frozen=True, eq=False)
class KernelPredictor:
    """
    An immutable kernel expansion. Updates return new predictors.
    """

    kernel: KernelConfig
    representers: np.ndarray
    coefficients: np.ndarray
    space_id: str
    dim: int

    def __post_init__(self):
        reps = as_points(self.representers, self.dim)
        coef = np.asarray(self.coefficients, dtype=float).reshape(-1)
        if reps.shape[0] != coef.shape[0]:
            raise InputError(
                "%d representers but %d coefficients" % (reps.shape[0], coef.shape[0])
            )
        reps = np.array(reps)
        coef = np.array(coef)
        reps.setflags(write=False)
        coef.setflags(write=False)
        object.__setattr__(self, "representers", reps)
        object.__setattr__(self, "coefficients", coef)

    @classmethod
    def empty(cls, kernel: KernelConfig, space_id: str, dim: int) -> "KernelPredictor":
        """
        :returns: the zero function
        """
        return cls(kernel, np.zeros((0, dim)), np.zeros(0), space_id, dim)

    @property
    def size(self) -> int:
        return self.coefficients.shape[0]

    def evaluate(self, x: VectorLike) -> float:
        vec = as_vector(x, self.dim)
        if self.size == 0:
            return 0.0
        return float(kernel_column(self.kernel, self.representers, vec) @ self.coefficients)

    def evaluate_many(self, points: PointsLike) -> np.ndarray:
        pts = as_points(points, self.dim)
        if self.size == 0 or pts.shape[0] == 0:
            return np.zeros(pts.shape[0])
        return cross_gram(self.kernel, pts, self.representers) @ self.coefficients

    def replace(
        self, representers: Optional[np.ndarray] = None, coefficients: Optional[np.ndarray] = None
    ) -> "KernelPredictor":
        """
        :returns: a copy with new representers and/or coefficients
        """
        return KernelPredictor(
            self.kernel,
            self.representers if representers is None else representers,
            self.coefficients if coefficients is None else coefficients,
            self.space_id,
            self.dim,
        )

    def append(self, point: np.ndarray, coefficient: float) -> "KernelPredictor":
        return self.replace(
            np.vstack([self.representers, point[np.newaxis, :]]),
            np.append(self.coefficients, coefficient),
        )


@dataclass(frozen=True)
class RiskParams:
    """
    Parameters of the instantaneous regularized risk.
    """

    lambda1: float
    lambda2: float
    inv_label_prob: float
    graph_kernel: KernelConfig
    loss: str = "logistic"

    def __post_init__(self):
        if not self.lambda1 >= 0:
            raise ConfigurationError("lambda1 must be >= 0")
        if not self.lambda2 >= 0:
            raise ConfigurationError("lambda2 must be >= 0")
        if not self.inv_label_prob >= 1 or math.isinf(self.inv_label_prob):
            raise ConfigurationError("inverse label probability must be a finite value >= 1")
        if self.loss not in LOSSES:
            raise ConfigurationError(
                "unknown loss %r: must be one of %s" % (self.loss, ", ".join(sorted(LOSSES)))
            )

    def without_manifold(self) -> "RiskParams":
        return RiskParams(self.lambda1, 0.0, self.inv_label_prob, self.graph_kernel, self.loss)


class GraphSupport(Protocol):
    """
    What the risk and update functions need from a buffer.
    """

    @property
    def occupancy(self) -> int: ...  # noqa: E704

    @property
    def is_full(self) -> bool: ...  # noqa: E704

    def points(self) -> np.ndarray: ...  # noqa: E704

    def manifold_scale(self, t: int) -> float: ...  # noqa: E704


def _logistic(score: float, y: int) -> Tuple[float, float]:
    margin = y * score
    return float(np.logaddexp(0.0, -margin)), float(-y * expit(-margin))


def _hinge(score: float, y: int) -> Tuple[float, float]:
    gap = 1.0 - y * score
    if gap > 0:
        return gap, float(-y)
    return 0.0, 0.0


#: Loss functions: ``loss(score, y) -> (value, derivative with respect to score)``.
LOSSES: Dict[str, Callable[[float, int], Tuple[float, float]]] = {
    "logistic": _logistic,
    "hinge": _hinge,
}


def prediction_loss(loss_id: str, score: float, y: int) -> Tuple[float, float]:
    """
    :returns: the loss value and its (sub)derivative with respect to ``score``
    :raises ConfigurationError: unknown loss
    """
    try:
        func = LOSSES[loss_id]
    except KeyError:
        raise ConfigurationError("unknown loss %r" % (loss_id,)) from None
    if y not in (-1, 1):
        raise InputError("label must be -1 or +1, got %r" % (y,))
    return func(float(score), y)


def evaluate(f: KernelPredictor, x: VectorLike) -> float:
    """
    :returns: ``f(x)``, 0 for the empty expansion
    """
    return f.evaluate(x)


def rkhs_norm_sq(f: KernelPredictor) -> float:
    """
    :returns: ``beta^T G beta``, clamped at 0
    """
    if f.size == 0:
        return 0.0
    beta = f.coefficients
    return max(float(beta @ gram_matrix(f.kernel, f.representers) @ beta), 0.0)


def _check_sample(f: KernelPredictor, sample: Sample) -> np.ndarray:
    if sample.dim != f.dim:
        raise InputError(
            "dimension mismatch: predictor on %s has %d features, sample has %d"
            % (f.space_id, f.dim, sample.dim)
        )
    return sample.features


def _risk(
    f: KernelPredictor, sample: Sample, points: np.ndarray, params: RiskParams, scale: float
) -> float:
    x = _check_sample(f, sample)
    total = 0.0
    if sample.labeled:
        value, _ = prediction_loss(params.loss, f.evaluate(x), sample.label)  # type: ignore
        total += params.inv_label_prob * value

    total += 0.5 * params.lambda1 * rkhs_norm_sq(f)

    if params.lambda2 > 0 and scale > 0 and points.shape[0]:
        diff = f.evaluate_many(points) - f.evaluate(x)
        weights = kernel_column(params.graph_kernel, points, x)
        total += params.lambda2 * scale * float(np.sum(diff * diff * weights))
    return total


def buffered_risk(
    f: KernelPredictor, x_t: Sample, buffer: GraphSupport, params: RiskParams, t: int
) -> float:
    """
    Instantaneous regularized risk with the manifold term estimated from the buffer and scaled
    by ``(t - 1) / occupancy``.

    :param t: round index of ``x_t`` in the learner's own stream
    """
    return _risk(f, x_t, buffer.points(), params, buffer.manifold_scale(t))


def full_risk_oracle(
    f: KernelPredictor,
    x_t: Sample,
    history: Union[Sequence[Sample], PointsLike],
    params: RiskParams,
) -> float:
    """
    Instantaneous regularized risk with the manifold term summed over the whole history,
    unscaled.
    """
    return _risk(f, x_t, _history_points(history, f.dim), params, 1.0)


def _history_points(history: Union[Sequence[Sample], PointsLike], dim: int) -> np.ndarray:
    items = list(history) if not isinstance(history, np.ndarray) else history
    if len(items) and isinstance(items[0], Sample):
        return as_points([sample.features for sample in items], dim)
    return as_points(items, dim)


def manifold_term(
    f: KernelPredictor, x_t: Sample, buffer: GraphSupport, params: RiskParams, t: int
) -> float:
    """
    :returns: only the manifold part of :func:`buffered_risk`
    """
    unlabeled = Sample(x_t.features, x_t.space_id, None, x_t.step)
    return buffered_risk(
        f, unlabeled, buffer, RiskParams(0.0, params.lambda2, 1.0, params.graph_kernel), t
    )


def functional_gradient(
    f: KernelPredictor, x_t: Sample, buffer: GraphSupport, params: RiskParams, t: int
) -> KernelPredictor:
    """
    :returns: the gradient of :func:`buffered_risk` in the RKHS as a kernel expansion over
        ``f``'s representers, the buffer points and ``x_t``
    """
    x = _check_sample(f, x_t)
    points = buffer.points()
    scale = buffer.manifold_scale(t)

    graph = np.zeros(points.shape[0])
    x_coef = 0.0
    if params.lambda2 > 0 and scale > 0 and points.shape[0]:
        diff = f.evaluate_many(points) - f.evaluate(x)
        graph = 2.0 * params.lambda2 * scale * diff * kernel_column(params.graph_kernel, points, x)
        x_coef -= float(np.sum(graph))
    if x_t.labeled:
        _, deriv = prediction_loss(params.loss, f.evaluate(x), x_t.label)  # type: ignore
        x_coef += params.inv_label_prob * deriv

    return f.replace(
        np.vstack([f.representers, points, x[np.newaxis, :]]),
        np.concatenate([params.lambda1 * f.coefficients, graph, [x_coef]]),
    )


def _descent(
    f: KernelPredictor,
    x_t: Sample,
    buffer: GraphSupport,
    params: RiskParams,
    tau: float,
    t: int,
) -> Tuple[np.ndarray, float]:
    """
    One gradient step with the graph part folded onto the buffer representers.

    :returns: the new coefficients of ``f``'s representers and the coefficient of ``x_t``
    """
    x = _check_sample(f, x_t)
    points = buffer.points()
    anchors = f.size - points.shape[0]
    if anchors < 0 or not np.array_equal(f.representers[anchors:], points):
        raise InternalError("predictor representers are out of sync with the buffer")

    beta = (1.0 - tau * params.lambda1) * f.coefficients
    x_coef = 0.0
    scale = buffer.manifold_scale(t)
    if params.lambda2 > 0 and scale > 0 and points.shape[0]:
        diff = f.evaluate_many(points) - f.evaluate(x)
        graph = 2.0 * tau * params.lambda2 * scale * diff
        graph *= kernel_column(params.graph_kernel, points, x)
        beta[anchors:] -= graph
        x_coef += float(np.sum(graph))
    if x_t.labeled:
        _, deriv = prediction_loss(params.loss, f.evaluate(x), x_t.label)  # type: ignore
        x_coef -= tau * params.inv_label_prob * deriv

    if not (np.all(np.isfinite(beta)) and math.isfinite(x_coef)):
        raise NumericalError(
            "gradient step produced non-finite coefficients",
            {"space": f.space_id, "step": x_t.step, "tau": tau, "scale": scale},
        )
    return beta, x_coef


def step_direct_append(
    f: KernelPredictor,
    x_t: Sample,
    buffer: GraphSupport,
    params: RiskParams,
    tau: float,
    t: int,
) -> KernelPredictor:
    """
    Gradient step that keeps ``x_t`` as a new representer. Call before the buffer appends
    ``x_t``.
    """
    if buffer.is_full:
        raise InternalError("direct append requested on a full buffer")
    beta, x_coef = _descent(f, x_t, buffer, params, tau, t)
    return f.replace(coefficients=beta).append(x_t.features, x_coef)


def step_with_replacement(
    f: KernelPredictor,
    x_t: Sample,
    buffer: GraphSupport,
    replaced_index: int,
    params: RiskParams,
    tau: float,
    t: int,
    projection: str = "exact",
) -> KernelPredictor:
    """
    Gradient step onto ``b + 1`` representers, then projection onto the buffer after ``x_t``
    takes slot ``replaced_index``. Call before the buffer replaces the slot.
    """
    if not 0 <= replaced_index < buffer.occupancy:
        raise InternalError(
            "replacement index %d out of range for %d slots" % (replaced_index, buffer.occupancy)
        )
    beta, x_coef = _descent(f, x_t, buffer, params, tau, t)
    intermediate = f.replace(coefficients=beta).append(x_t.features, x_coef)

    target = np.array(f.representers)
    target[f.size - buffer.occupancy + replaced_index] = x_t.features
    result = PROJECTIONS[projection](intermediate, target)
    return f.replace(target, result.coefficients)


def step_no_insert(
    f: KernelPredictor,
    x_t: Sample,
    buffer: GraphSupport,
    params: RiskParams,
    tau: float,
    t: int,
    projection: str = "exact",
) -> KernelPredictor:
    """
    Gradient step when ``x_t`` does not enter the buffer. Unlabeled samples only move the
    buffer coefficients; a labeled sample becomes a temporary representer that is projected out
    again so its supervised gradient is kept.
    """
    beta, x_coef = _descent(f, x_t, buffer, params, tau, t)
    if not x_t.labeled:
        return f.replace(coefficients=beta)

    intermediate = f.replace(coefficients=beta).append(x_t.features, x_coef)
    result = PROJECTIONS[projection](intermediate, f.representers)
    return f.replace(coefficients=result.coefficients)


@dataclass(frozen=True, eq=False)
class Projection:
    """
    Result of projecting a kernel expansion onto the span of target points.
    """

    coefficients: np.ndarray
    residual_sq: float
    iterations: int = field(default=0)

    @property
    def residual(self) -> float:
        return math.sqrt(self.residual_sq)


def _projection_system(
    f_prime: KernelPredictor, target_points: PointsLike
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    target = as_points(target_points, f_prime.dim)
    if target.shape[0] == 0:
        raise InputError("projection needs at least one target point")
    gzz = gram_matrix(f_prime.kernel, target)
    gzr = cross_gram(f_prime.kernel, target, f_prime.representers)
    return target, gzz, gzr @ f_prime.coefficients


def _residual_sq(f_prime: KernelPredictor, gzz: np.ndarray, rhs: np.ndarray, beta: np.ndarray):
    total = rkhs_norm_sq(f_prime) - 2.0 * float(beta @ rhs) + float(beta @ gzz @ beta)
    return max(total, 0.0)


def project_onto_span(
    f_prime: KernelPredictor, target_points: PointsLike, ridge: float = PROJECTION_RIDGE
) -> Projection:
    """
    Best approximation of ``f_prime`` in the span of ``K(z, .)`` over the target points, in RKHS
    norm. Solves ``(G_zz + ridge I) beta = G_zr beta'``.

    :raises NumericalError: the regularized system is still singular
    """
    _, gzz, rhs = _projection_system(f_prime, target_points)
    system = gzz + ridge * np.eye(gzz.shape[0])
    try:
        beta = cho_solve(cho_factor(system), rhs)
    except LinAlgError:
        try:
            beta = solve(system, rhs, assume_a="sym")
        except LinAlgError as err:
            raise NumericalError(
                "projection system is singular",
                {"size": gzz.shape[0], "ridge": ridge, "cond": float(np.linalg.cond(system))},
            ) from err

    if not np.all(np.isfinite(beta)):
        raise NumericalError(
            "projection produced non-finite coefficients",
            {"size": gzz.shape[0], "cond": float(np.linalg.cond(system))},
        )
    return Projection(beta, _residual_sq(f_prime, gzz, rhs, beta))


def project_matching_pursuit(
    f_prime: KernelPredictor,
    target_points: PointsLike,
    max_iter: Optional[int] = None,
    tol: float = 1e-12,
) -> Projection:
    """
    Greedy projection: repeatedly pick the target atom most correlated with the residual and
    move its coefficient to the exact line-search optimum. Converges to :func:`project_onto_span`
    without the ridge.

    :param max_iter: iteration cap, 50 times the number of targets by default
    :param tol: stop once the best step is below this size
    """
    _, gzz, rhs = _projection_system(f_prime, target_points)
    n = gzz.shape[0]
    max_iter = max_iter if max_iter is not None else 50 * n

    beta = np.zeros(n)
    corr = rhs.copy()
    iterations = 0
    while iterations < max_iter:
        j = int(np.argmax(np.abs(corr)))
        delta = corr[j] / gzz[j, j]
        if abs(delta) <= tol:
            break
        beta[j] += delta
        corr -= delta * gzz[:, j]
        iterations += 1
    else:
        logger.warning(
            "matching pursuit stopped at %d iterations with residual correlation %.3g",
            max_iter,
            float(np.max(np.abs(corr))),
        )

    return Projection(beta, _residual_sq(f_prime, gzz, rhs, beta), iterations)


#: Projection methods by name.
PROJECTIONS: Dict[str, Callable[[KernelPredictor, PointsLike], Projection]] = {
    "exact": project_onto_span,
    "matching_pursuit": project_matching_pursuit,
}
