#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Exponential weights over the two base predictors.

Weights are kept as log-weights and renormalized with ``logsumexp`` after every update, so long
streams with large cumulative risks cannot underflow both weights to zero. The weight update
expects risks in ``[0, 1]``; :class:`RiskNormalizer` maps raw risks into that range.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from .errors import ConfigurationError, InputError, NumericalError

logger = logging.getLogger(__name__)


def default_eta(t2: int) -> float:
    """
    :returns: ``sqrt(ln 2 / T2)``, the rate for which the ensemble's cumulative risk is within
        ``sqrt(T2 ln 2)`` of the better base model
    """
    if t2 < 1:
        raise ConfigurationError("T2 must be >= 1, got %r" % (t2,))
    return math.sqrt(math.log(2.0) / t2)


def _normalized(log_weights: np.ndarray) -> np.ndarray:
    return log_weights - logsumexp(log_weights)


@dataclass(frozen=True, eq=False)
class EnsembleState:
    """
    Weights of the two base predictors with the running sums of the risks they were updated
    with.
    """

    log_weights: np.ndarray
    cumulative_risks: np.ndarray
    eta: float
    rounds: int = 0

    def __post_init__(self):
        if not self.eta > 0 or math.isinf(self.eta):
            raise ConfigurationError("eta must be a finite value > 0, got %r" % (self.eta,))
        log_weights = np.array(self.log_weights, dtype=float)
        if log_weights.shape != (2,):
            raise InputError("expected two log-weights, got shape %s" % (log_weights.shape,))
        if not np.all(np.isfinite(log_weights)):
            raise NumericalError("ensemble weights underflowed", {"log_weights": log_weights})
        object.__setattr__(self, "log_weights", _normalized(log_weights))
        object.__setattr__(
            self, "cumulative_risks", np.array(self.cumulative_risks, dtype=float).reshape(2)
        )

    @classmethod
    def initial(cls, eta: float) -> "EnsembleState":
        """
        :returns: equal weights ``(1/2, 1/2)``
        """
        return cls(np.log([0.5, 0.5]), np.zeros(2), eta)

    @property
    def weights(self) -> np.ndarray:
        weights = np.exp(self.log_weights)
        return weights / weights.sum()


def combine(state: EnsembleState, p1: float, p2: float) -> float:
    """
    :returns: ``alpha1 p1 + alpha2 p2``
    """
    alpha1, alpha2 = state.weights
    return float(alpha1 * p1 + alpha2 * p2)


def ensemble_risk(state: EnsembleState, j1: float, j2: float) -> float:
    """
    :returns: ``alpha1 j1 + alpha2 j2``
    """
    alpha1, alpha2 = state.weights
    return float(alpha1 * j1 + alpha2 * j2)


def update_weights(state: EnsembleState, j1_clipped: float, j2_clipped: float) -> EnsembleState:
    """
    Multiplicative update ``alpha_i <- alpha_i exp(-eta j_i) / Z``.

    :raises InputError: a risk outside ``[0, 1]``
    """
    risks = np.array([j1_clipped, j2_clipped], dtype=float)
    if not np.all((risks >= 0.0) & (risks <= 1.0)):
        raise InputError(
            "clipped risks must lie in [0, 1], got (%r, %r)" % (j1_clipped, j2_clipped)
        )
    return EnsembleState(
        state.log_weights - state.eta * risks,
        state.cumulative_risks + risks,
        state.eta,
        state.rounds + 1,
    )


def weights_from_cumulative(eta: float, cumulative: Sequence[float]) -> np.ndarray:
    """
    Batch form of the weights: ``alpha_i = exp(-eta J_i) / sum_j exp(-eta J_j)`` for cumulative
    risks ``J_i``, starting from equal weights.
    """
    log_weights = -eta * np.asarray(cumulative, dtype=float)
    return np.exp(_normalized(log_weights))


@dataclass
class RiskNormalizer:
    """
    Maps raw risks into ``[0, 1]`` with ``j -> min(j / cap, 1)``.

    With a fixed ``cap`` the map never changes. Otherwise the cap is the running ``quantile`` of
    both base risks seen so far and freezes after ``warmup`` rounds.

    :param cap: fixed cap, ``None`` to estimate it
    :param warmup: number of rounds the estimate runs for
    :param quantile: quantile of the pooled raw risks used as the cap
    """

    cap: Optional[float] = None
    warmup: int = 50
    quantile: float = 0.95
    _pool: List[float] = field(default_factory=list, init=False, repr=False)
    _frozen: bool = field(default=False, init=False, repr=False)

    def __post_init__(self):
        if self.cap is not None:
            if not self.cap > 0 or math.isinf(self.cap):
                raise ConfigurationError("risk cap must be a finite value > 0, got %r" % self.cap)
            self._frozen = True
        if self.warmup < 1:
            raise ConfigurationError("risk warm-up must be >= 1 round, got %r" % self.warmup)
        if not 0 < self.quantile <= 1:
            raise ConfigurationError("risk quantile must be in (0, 1], got %r" % self.quantile)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def _clip(self, value: float) -> float:
        cap = self.cap if self.cap is not None else 0.0
        if cap <= 0:
            return 0.0 if value <= 0 else 1.0
        return min(max(value, 0.0) / cap, 1.0)

    def __call__(self, j1: float, j2: float) -> Tuple[float, float]:
        """
        Clip one round's raw base risks, updating the cap estimate first while it is not frozen.
        """
        if not self._frozen:
            self._pool.extend((j1, j2))
            self.cap = float(np.quantile(self._pool, self.quantile))
            if len(self._pool) >= 2 * self.warmup:
                self._frozen = True
                logger.debug("risk cap frozen at %.6g after %d rounds", self.cap, self.warmup)
        return self._clip(j1), self._clip(j2)
