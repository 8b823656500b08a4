#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Sample stores that supply the manifold term with past samples.

:class:`ReservoirBuffer` keeps a uniform sample of everything offered to it in ``b`` slots: while
there is room every sample is appended, afterwards the ``t``-th sample is accepted with
probability ``b / t`` and replaces a uniformly chosen slot. After ``t`` offers every offered
sample is in the buffer with probability ``b / t``.

The decision is split from the mutation (:meth:`ReservoirBuffer.decide` then
:meth:`ReservoirBuffer.commit`) because the predictor update must see the buffer as it was
before the new sample arrived.
"""
import enum
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from .errors import ConfigurationError, InputError, InternalError
from .predictor import Sample

logger = logging.getLogger(__name__)


class DecisionKind(enum.Enum):
    APPENDED = "append"
    REPLACED = "replace"
    SKIPPED = "skip"


@dataclass(frozen=True)
class InsertDecision:
    """
    What happened to an offered sample. ``index`` is the replaced slot for
    :attr:`DecisionKind.REPLACED` and ``None`` otherwise.
    """

    kind: DecisionKind
    index: Optional[int] = None

    @classmethod
    def appended(cls) -> "InsertDecision":
        return cls(DecisionKind.APPENDED)

    @classmethod
    def replaced(cls, index: int) -> "InsertDecision":
        return cls(DecisionKind.REPLACED, index)

    @classmethod
    def skipped(cls) -> "InsertDecision":
        return cls(DecisionKind.SKIPPED)

    def __str__(self) -> str:
        if self.kind is DecisionKind.REPLACED:
            return "%s(%d)" % (self.kind.value, self.index)
        return self.kind.value


@dataclass(frozen=True)
class RoundDraw:
    """
    The two uniforms a round spends on reservoir decisions: ``accept`` decides whether a full
    buffer takes the sample and ``victim`` picks the slot. Every buffer offered a sample in the
    same round uses the same draw.
    """

    accept: float
    victim: float

    def __post_init__(self):
        for name in ("accept", "victim"):
            value = getattr(self, name)
            if not 0.0 <= value < 1.0:
                raise InternalError("%s draw must be in [0, 1), got %r" % (name, value))

    @classmethod
    def from_rng(cls, rng: np.random.Generator) -> "RoundDraw":
        accept, victim = rng.random(2)
        return cls(float(accept), float(victim))


class ReservoirBuffer:
    """
    Fixed-capacity reservoir of samples from one feature space.

    :param capacity: number of slots ``b``
    :param dim: feature dimension, inferred from the first sample when omitted
    :param trace: keep a ``(seen_count, decision)`` record of every offer
    """

    def __init__(self, capacity: Optional[int], dim: Optional[int] = None, trace: bool = False):
        if capacity is not None and capacity < 1:
            raise ConfigurationError("buffer capacity must be >= 1, got %r" % (capacity,))
        self.capacity = capacity
        self.dim = dim
        self.seen_count = 0
        self._slots: List[Sample] = []
        self._points: Optional[np.ndarray] = None
        self.trace: Optional[List[Tuple[int, InsertDecision]]] = [] if trace else None

    def __repr__(self) -> str:
        return "%s(capacity=%r, occupancy=%d, seen=%d)" % (
            self.__class__.__name__,
            self.capacity,
            self.occupancy,
            self.seen_count,
        )

    def __len__(self) -> int:
        return len(self._slots)

    @property
    def occupancy(self) -> int:
        return len(self._slots)

    @property
    def is_full(self) -> bool:
        return self.capacity is not None and len(self._slots) >= self.capacity

    def contents(self) -> List[Sample]:
        """
        :returns: the stored samples in slot order
        """
        return list(self._slots)

    def points(self) -> np.ndarray:
        """
        :returns: the stored feature vectors in slot order, ``(occupancy, dim)``
        """
        if self._points is None:
            dim = self.dim if self.dim is not None else 0
            if self._slots:
                self._points = np.vstack([sample.features for sample in self._slots])
            else:
                self._points = np.zeros((0, dim))
            self._points.setflags(write=False)
        return self._points

    def manifold_scale(self, t: int) -> float:
        """
        :returns: ``(t - 1) / occupancy``, the factor that turns the buffered manifold sum into an
            estimate of the sum over all ``t - 1`` earlier samples; 0 for an empty buffer
        """
        if not self._slots:
            return 0.0
        return (t - 1) / len(self._slots)

    def decide(self, draw: Optional[RoundDraw]) -> InsertDecision:
        """
        Count one offer and decide what happens to it, leaving the slots untouched. ``draw`` may
        be ``None`` while the buffer has room.
        """
        self.seen_count += 1
        if not self.is_full:
            decision = InsertDecision.appended()
        elif draw is None:
            raise InternalError("a full buffer needs a round draw to decide")
        elif draw.accept < self.capacity / self.seen_count:  # type: ignore
            capacity: int = self.capacity  # type: ignore
            decision = InsertDecision.replaced(min(int(draw.victim * capacity), capacity - 1))
        else:
            decision = InsertDecision.skipped()

        if self.trace is not None:
            self.trace.append((self.seen_count, decision))
        return decision

    def commit(self, decision: InsertDecision, sample: Sample) -> None:
        """
        Apply a decision returned by :meth:`decide`.
        """
        if self.dim is None:
            self.dim = sample.dim
        elif sample.dim != self.dim:
            raise InputError(
                "dimension mismatch: buffer holds %d features, sample has %d"
                % (self.dim, sample.dim)
            )

        if decision.kind is DecisionKind.APPENDED:
            if self.is_full:
                raise InternalError("cannot append to a full buffer")
            self._slots.append(sample)
        elif decision.kind is DecisionKind.REPLACED:
            if decision.index is None or not 0 <= decision.index < len(self._slots):
                raise InternalError("replacement index %r out of range" % (decision.index,))
            self._slots[decision.index] = sample
        else:
            return
        self._points = None

    def offer(
        self, sample: Sample, draw: Union[RoundDraw, np.random.Generator, None] = None
    ) -> InsertDecision:
        """
        Offer a sample: decide and commit in one call.

        :param draw: the round's draw, or a generator to take a fresh draw from
        """
        if isinstance(draw, np.random.Generator):
            draw = RoundDraw.from_rng(draw)
        decision = self.decide(draw)
        self.commit(decision, sample)
        return decision


class UnboundedHistory(ReservoirBuffer):
    """
    Keeps every offered sample. With it the buffered risk equals the full-history risk.
    """

    def __init__(self, dim: Optional[int] = None, trace: bool = False):
        super().__init__(None, dim, trace)
