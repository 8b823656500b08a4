#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Comparison methods for the new-space phase.

- ``NOGD``: a fresh learner on the new space.
- ``uROGD``: the old-space learner keeps updating on recovered samples ``psi(x2)``.
- ``fROGD``: the old-space learner predicts on recovered samples without updating.
- ``*_MR``: the same with the manifold term, learning from every round. The plain versions
  learn only from labeled rounds.
- ``FESL_Variant``: the two-model ensemble without the manifold term, updating only on labeled
  rounds.
"""
import enum
import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, List, Optional, Tuple

import numpy as np

from .buffer import InsertDecision
from .mapping import apply_mapping
from .predictor import SPACE_NEW, SPACE_OLD, Sample

if TYPE_CHECKING:  # pragma: no cover
    from .harness import RunContext
    from .learner import KernelLearner

logger = logging.getLogger(__name__)

#: One buffer decision: ``(learner, round in the learner's buffer, decision)``.
TraceRow = Tuple[str, int, InsertDecision]


class BaselineKind(enum.Enum):
    NOGD = "NOGD"
    UROGD = "uROGD"
    FROGD = "fROGD"
    NOGD_MR = "NOGD_MR"
    UROGD_MR = "uROGD_MR"
    FROGD_MR = "fROGD_MR"
    FESL_VARIANT = "FESL_Variant"

    @property
    def manifold(self) -> bool:
        return self.value.endswith("_MR")

    @property
    def uses_mapping(self) -> bool:
        return self not in (BaselineKind.NOGD, BaselineKind.NOGD_MR)

    @property
    def frozen(self) -> bool:
        return self in (BaselineKind.FROGD, BaselineKind.FROGD_MR)


#: Method identifiers accepted by the harness, the ensemble first.
METHODS: Tuple[str, ...] = ("SF2EL",) + tuple(kind.value for kind in BaselineKind)


@dataclass
class MethodTrace:
    """
    Per-round record of one method on one seed over the new-space phase.

    ``clipped``, ``base_risks``, ``base_clipped`` and ``weights`` are only recorded for the
    ensembles.
    """

    method: str
    seed: int
    scores: np.ndarray
    correct: np.ndarray
    risks: np.ndarray
    clipped: Optional[np.ndarray] = None
    base_risks: Optional[np.ndarray] = None
    base_clipped: Optional[np.ndarray] = None
    weights: Optional[np.ndarray] = None
    buffer_trace: List[TraceRow] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return self.scores.shape[0]

    @property
    def accuracy(self) -> float:
        return float(np.mean(self.correct))

    @property
    def avg_cum_risk(self) -> np.ndarray:
        return np.cumsum(self.risks) / np.arange(1, self.rounds + 1)


def predicted_label(score: float) -> int:
    """
    :returns: the sign of ``score``, ``+1`` for 0
    """
    return 1 if score >= 0 else -1


def _recovered(event_sample: Sample, mapping) -> Sample:
    return Sample(
        apply_mapping(mapping, event_sample.features),
        SPACE_OLD,
        event_sample.label,
        event_sample.step,
    )


def _single_learner_phase(
    method: str, ctx: "RunContext", learner: "KernelLearner", mapping=None
) -> MethodTrace:
    new_phase = ctx.stream.new_phase
    scores = np.zeros(len(new_phase))
    correct = np.zeros(len(new_phase), dtype=bool)
    risks = np.zeros(len(new_phase))

    for k, event in enumerate(new_phase):
        sample = event.new_sample()
        if mapping is not None:
            sample = _recovered(sample, mapping)
        scores[k] = learner.score(sample)
        correct[k] = predicted_label(scores[k]) == event.true_label
        risks[k] = learner.risk(sample)
        learner.observe(sample, 1.0 / math.sqrt(k + 1), ctx.draw(event.step))

    return MethodTrace(method, ctx.seed, scores, correct, risks)


def run_baseline(kind: BaselineKind, ctx: "RunContext") -> MethodTrace:
    """
    Run one comparison method over the new-space phase of the context's stream. Methods that
    reuse the old-space learner start from the context's cached first phase, trained with or
    without the manifold term to match the method.

    :raises ConfigurationError: a method that needs the mapping on a stream without overlap
    """
    if kind is BaselineKind.FESL_VARIANT:
        from .harness import sf2el_phase  # pylint: disable=import-outside-toplevel,cyclic-import

        return sf2el_phase(
            ctx, ctx.initial_phase(False), manifold=False, label_gated=True, method=kind.value
        )

    if not kind.uses_mapping:
        learner = ctx.learner(SPACE_NEW, manifold=kind.manifold)
        return _single_learner_phase(kind.value, ctx, learner)

    initial = ctx.initial_phase(kind.manifold)
    learner = initial.learner.clone()
    learner.start_new_phase()
    learner.frozen = kind.frozen
    return _single_learner_phase(kind.value, ctx, learner, initial.mapping)
