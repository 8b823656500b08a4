#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Online kernel learner bound to one feature space.
"""
import copy
import logging
from typing import Optional

from .buffer import DecisionKind, InsertDecision, ReservoirBuffer, RoundDraw, UnboundedHistory
from .errors import InputError
from .kernelspace import KernelConfig
from .predictor import (
    KernelPredictor,
    RiskParams,
    Sample,
    buffered_risk,
    step_direct_append,
    step_no_insert,
    step_with_replacement,
)

logger = logging.getLogger(__name__)


class KernelLearner:
    """
    A kernel predictor together with the buffer that carries its similarity graph.

    The trailing representers of :attr:`predictor` are always the buffer contents in slot
    order. Leading representers are anchors from an earlier phase (see :meth:`start_new_phase`).

    :param space_id: feature space the learner predicts on
    :param dim: feature dimension
    :param kernel: predictor kernel
    :param params: risk parameters
    :param capacity: buffer capacity, ``None`` keeps the whole history
    :param manifold: use the manifold term; plain learners learn from labels only
    :param label_gated: only labeled samples are offered to the buffer and learned from
    :param frozen: never change the coefficients
    :param projection: name of the projection used when a representer leaves
    :param seed_coef: coefficient of the initial representer placed at the first sample the
        learner sees; ``None`` starts from the zero function
    :param trace: record buffer decisions
    """

    def __init__(
        self,
        space_id: str,
        dim: int,
        kernel: KernelConfig,
        params: RiskParams,
        capacity: Optional[int],
        *,
        manifold: bool = True,
        label_gated: bool = False,
        frozen: bool = False,
        projection: str = "exact",
        seed_coef: Optional[float] = None,
        trace: bool = False,
    ):
        self.space_id = space_id
        self.dim = dim
        self.params = params if manifold else params.without_manifold()
        self.label_gated = label_gated
        self.frozen = frozen
        self.projection = projection
        self.trace = trace
        self.predictor = KernelPredictor.empty(kernel, space_id, dim)
        self.buffer = self._new_buffer(capacity)
        self.rounds = 0
        self._seed_coef = seed_coef
        self._seed_sample: Optional[Sample] = None

    def __repr__(self) -> str:
        return "<KernelLearner %s dim=%d size=%d %r>" % (
            self.space_id,
            self.dim,
            self.predictor.size,
            self.buffer,
        )

    def _new_buffer(self, capacity: Optional[int]) -> ReservoirBuffer:
        if capacity is None:
            return UnboundedHistory(self.dim, self.trace)
        return ReservoirBuffer(capacity, self.dim, self.trace)

    @property
    def t(self) -> int:
        """
        Round index of the next sample in the learner's own stream.
        """
        return self.rounds + 1

    @property
    def anchors(self) -> int:
        return self.predictor.size - self.buffer.occupancy

    def _check(self, sample: Sample) -> None:
        if sample.dim != self.dim:
            raise InputError(
                "dimension mismatch: learner on %s has %d features, sample has %d"
                % (self.space_id, self.dim, sample.dim)
            )

    def _materialize_seed(self, sample: Sample) -> None:
        if self._seed_coef is None:
            return
        self.buffer.offer(sample)
        self.predictor = self.predictor.append(sample.features, self._seed_coef)
        self._seed_coef = None
        self._seed_sample = sample

    def score(self, sample: Sample) -> float:
        """
        :returns: the prediction ``f(x)``
        """
        self._check(sample)
        self._materialize_seed(sample)
        return self.predictor.evaluate(sample.features)

    def risk(self, sample: Sample) -> float:
        """
        :returns: the buffered instantaneous risk at the learner's current round
        """
        self._check(sample)
        self._materialize_seed(sample)
        return buffered_risk(self.predictor, sample, self.buffer, self.params, self.t)

    def observe(
        self, sample: Sample, tau: float, draw: Optional[RoundDraw]
    ) -> Optional[InsertDecision]:
        """
        Take one gradient step on ``sample`` and let the buffer decide whether to keep it.

        :param tau: step size
        :param draw: the round's shared reservoir draw
        :returns: the buffer decision, ``None`` when the sample was not offered
        """
        self._check(sample)
        self._materialize_seed(sample)

        if sample is self._seed_sample:
            # the seed representer already holds this sample
            self._seed_sample = None
            if not self.frozen and (sample.labeled or not self.label_gated):
                self.predictor = step_no_insert(
                    self.predictor, sample, self.buffer, self.params, tau, self.t, self.projection
                )
            self.rounds += 1
            return None

        if self.label_gated and not sample.labeled:
            return None

        if self.frozen:
            decision = self.buffer.offer(sample, draw)
            self.rounds += 1
            return decision

        t = self.t
        decision = self.buffer.decide(draw)
        if decision.kind is DecisionKind.APPENDED:
            self.predictor = step_direct_append(
                self.predictor, sample, self.buffer, self.params, tau, t
            )
        elif decision.kind is DecisionKind.REPLACED:
            self.predictor = step_with_replacement(
                self.predictor,
                sample,
                self.buffer,
                decision.index,  # type: ignore
                self.params,
                tau,
                t,
                self.projection,
            )
        else:
            self.predictor = step_no_insert(
                self.predictor, sample, self.buffer, self.params, tau, t, self.projection
            )
        self.buffer.commit(decision, sample)
        self.rounds += 1
        return decision

    def start_new_phase(self, capacity: Optional[int] = None) -> None:
        """
        Turn the current buffer into anchors and start a fresh buffer and round count. The
        anchors keep predicting and shrinking but no longer take part in the similarity graph.

        :param capacity: capacity of the new buffer, the current one by default
        """
        if capacity is None:
            capacity = self.buffer.capacity
        logger.debug(
            "%s learner starts a new phase with %d anchors", self.space_id, self.predictor.size
        )
        self.buffer = self._new_buffer(capacity)
        self.rounds = 0
        self._seed_sample = None

    def clone(self) -> "KernelLearner":
        return copy.deepcopy(self)
