#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Feature-evolvable streams.

A stream covers one evolution cycle of ``T1 + T2`` rounds. The first ``T1 - B`` rounds carry the
old feature space only, the next ``B`` rounds (the overlapping period) carry both
representations of the same row and the final ``T2`` rounds carry the new space only. The new
space is a fixed random linear projection of the old one. Each round reveals its label
independently with probability ``p_l``; the true label is always kept for evaluation.
"""
import enum
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union, overload

import numpy as np
import pandas as pd

from .errors import ConfigurationError, InputError
from .kernelspace import as_points
from .predictor import SPACE_NEW, SPACE_OLD, Sample

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence, None]

#: ``name -> (n, d1, d2)`` of the usual evaluation datasets.
KNOWN_DATASETS: Dict[str, Tuple[int, int, int]] = {
    "credit-a": (653, 15, 10),
    "diabetes": (768, 8, 5),
    "svmguide3": (1284, 22, 15),
    "swiss": (2000, 2, 3),
    "rfid": (940, 78, 72),
    "htru_2": (17898, 8, 5),
    "magic04": (19020, 10, 7),
}


class Period(enum.Enum):
    OLD = "S1"
    OVERLAP = "overlap"
    NEW = "S2"


@dataclass(frozen=True)
class StreamSchedule:
    """
    Round layout of one cycle.

    :param t1: rounds that carry the old space
    :param overlap: the last ``overlap`` of those also carry the new space
    :param t2: rounds that carry only the new space
    :param p_l: probability that a round reveals its label
    """

    t1: int
    overlap: int
    t2: int
    p_l: float

    def __post_init__(self):
        if self.t1 < 2:
            raise ConfigurationError("T1 must be >= 2, got %r" % (self.t1,))
        if not 1 <= self.overlap < self.t1:
            raise ConfigurationError(
                "overlap must satisfy 1 <= B < T1, got B=%r, T1=%r" % (self.overlap, self.t1)
            )
        if self.t2 < 1:
            raise ConfigurationError("T2 must be >= 1, got %r" % (self.t2,))
        if not 0 < self.p_l <= 1:
            raise ConfigurationError("label probability must be in (0, 1], got %r" % (self.p_l,))

    @property
    def total(self) -> int:
        return self.t1 + self.t2

    def period(self, step: int) -> Period:
        if not 1 <= step <= self.total:
            raise InputError("step %d outside 1..%d" % (step, self.total))
        if step <= self.t1 - self.overlap:
            return Period.OLD
        if step <= self.t1:
            return Period.OVERLAP
        return Period.NEW


@dataclass(frozen=True, eq=False)
class S1Only:
    x1: np.ndarray


@dataclass(frozen=True, eq=False)
class Overlap:
    x1: np.ndarray
    x2: np.ndarray


@dataclass(frozen=True, eq=False)
class S2Only:
    x2: np.ndarray


Payload = Union[S1Only, Overlap, S2Only]


@dataclass(frozen=True, eq=False)
class StreamEvent:
    """
    One round. ``revealed_label`` is what a learner may see; ``true_label`` is for evaluation.
    """

    step: int
    payload: Payload
    revealed_label: Optional[int]
    true_label: int

    def __post_init__(self):
        if self.revealed_label is not None and self.revealed_label != self.true_label:
            raise InputError("revealed label differs from the true label at step %d" % self.step)

    @property
    def period(self) -> Period:
        if isinstance(self.payload, S1Only):
            return Period.OLD
        if isinstance(self.payload, Overlap):
            return Period.OVERLAP
        return Period.NEW

    @property
    def labeled(self) -> bool:
        return self.revealed_label is not None

    @property
    def x1(self) -> Optional[np.ndarray]:
        return getattr(self.payload, "x1", None)

    @property
    def x2(self) -> Optional[np.ndarray]:
        return getattr(self.payload, "x2", None)

    def old_sample(self) -> Sample:
        if self.x1 is None:
            raise InputError("step %d carries no old-space features" % self.step)
        return Sample(self.x1, SPACE_OLD, self.revealed_label, self.step)

    def new_sample(self) -> Sample:
        if self.x2 is None:
            raise InputError("step %d carries no new-space features" % self.step)
        return Sample(self.x2, SPACE_NEW, self.revealed_label, self.step)


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Labeled rows sharing one feature dimension. Labels are ``-1`` or ``+1``.
    """

    features: np.ndarray
    labels: np.ndarray
    name: str = ""

    def __post_init__(self):
        features = as_points(self.features)
        labels = np.asarray(self.labels).reshape(-1)
        if features.shape[0] != labels.shape[0]:
            raise InputError(
                "%d feature rows but %d labels" % (features.shape[0], labels.shape[0])
            )
        if not np.all(np.isin(labels, (-1, 1))):
            raise InputError("labels must be -1 or +1")
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels.astype(int))

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]


def make_swiss(
    n: int,
    noise_std: float = 0.1,
    seed: SeedLike = None,
    inner_radius: float = 0.5,
    growth: float = 0.5,
    turns: float = 2.0,
) -> Dataset:
    """
    Two interleaved spirals ``r = inner_radius + growth * theta`` with ``theta`` up to
    ``2 pi turns``. Class ``-1`` is class ``+1`` rotated by ``pi``. Angles are stratified over
    the square root of a uniform variable so points are spread evenly along the arc length.

    :param n: total number of points, half per class
    :param noise_std: standard deviation of the isotropic Gaussian noise
    :raises InputError: ``n`` odd or below 2
    """
    if n < 2 or n % 2:
        raise InputError("swiss dataset needs an even number of points >= 2, got %r" % (n,))
    if noise_std < 0:
        raise InputError("noise must be >= 0, got %r" % (noise_std,))

    rng = np.random.default_rng(seed)
    per_class = n // 2
    theta_max = 2.0 * math.pi * turns
    strata = (np.arange(per_class) + rng.random(per_class)) / per_class
    theta = theta_max * np.sqrt(strata)
    radius = inner_radius + growth * theta
    arm = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])

    features = np.vstack([arm, -arm])
    labels = np.concatenate([np.ones(per_class, dtype=int), -np.ones(per_class, dtype=int)])
    if noise_std > 0:
        features = features + noise_std * rng.standard_normal(features.shape)

    order = rng.permutation(n)
    return Dataset(features[order], labels[order], "swiss")


def projection_matrix(d1: int, d2: int, seed: SeedLike = None) -> np.ndarray:
    """
    :returns: a ``(d2, d1)`` matrix of independent standard normal entries
    """
    if d1 < 1 or d2 < 1:
        raise ConfigurationError("projection dimensions must be >= 1, got %r, %r" % (d1, d2))
    return np.random.default_rng(seed).standard_normal((d2, d1))


def random_projection(
    dataset: Dataset, d2: int, seed: SeedLike = None, matrix: Optional[np.ndarray] = None
) -> Dataset:
    """
    Map every row through a random ``(d2, d1)`` matrix, or through ``matrix`` when given.
    """
    if matrix is None:
        matrix = projection_matrix(dataset.dim, d2, seed)
    elif matrix.shape != (d2, dataset.dim):
        raise InputError("projection matrix must have shape %s" % ((d2, dataset.dim),))
    return Dataset(dataset.features @ matrix.T, dataset.labels, dataset.name)


def default_d2(name: str, d1: int) -> int:
    """
    :returns: the new-space dimension used for ``name``, or ``ceil(2 d1 / 3)`` for other data
    """
    if name.lower() in KNOWN_DATASETS:
        return KNOWN_DATASETS[name.lower()][2]
    return max(1, math.ceil(2 * d1 / 3))


class FeatureStream(Sequence[StreamEvent]):
    """
    The events of one cycle with the projection that produced the new space.
    """

    def __init__(
        self,
        events: List[StreamEvent],
        schedule: StreamSchedule,
        matrix: np.ndarray,
        d1: int,
        d2: int,
        name: str = "",
    ):
        self.events = events
        self.schedule = schedule
        self.matrix = matrix
        self.d1 = d1
        self.d2 = d2
        self.name = name

    @overload
    def __getitem__(self, index: int) -> StreamEvent: ...  # noqa: E704

    @overload
    def __getitem__(self, index: slice) -> List[StreamEvent]: ...  # noqa: E704

    def __getitem__(self, index):
        return self.events[index]

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[StreamEvent]:
        return iter(self.events)

    @property
    def old_phase(self) -> List[StreamEvent]:
        return self.events[: self.schedule.t1]

    @property
    def new_phase(self) -> List[StreamEvent]:
        return self.events[self.schedule.t1 :]

    def overlap_pairs(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        """
        :returns: ``(x2, x1)`` for every overlapping round
        """
        return [
            (event.x2, event.x1)  # type: ignore
            for event in self.old_phase
            if event.period is Period.OVERLAP
        ]


def generate_stream(
    base: Dataset,
    schedule: StreamSchedule,
    d2: int,
    seed: SeedLike = None,
    swap_spaces: bool = False,
    matrix: Optional[np.ndarray] = None,
) -> FeatureStream:
    """
    Shuffle ``base`` once, take ``T1 + T2`` rows without replacement and lay them out by the
    schedule. The row order, the projection and the label reveals come from independent
    children of ``seed``.

    :param swap_spaces: use the projected features as the old space and the original features as
        the new one
    :param matrix: projection to use instead of a random one
    :raises InputError: ``base`` has fewer than ``T1 + T2`` rows
    """
    if len(base) < schedule.total:
        raise InputError(
            "stream needs n >= %d rows (T1 + T2) but dataset %r has %d"
            % (schedule.total, base.name, len(base))
        )

    if isinstance(seed, np.random.SeedSequence):
        root = np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key)
    else:
        root = np.random.SeedSequence(seed)
    order_seed, projection_seed, label_seed = root.spawn(3)
    order = np.random.default_rng(order_seed).permutation(len(base))[: schedule.total]
    if matrix is None:
        matrix = projection_matrix(base.dim, d2, projection_seed)
    projected = random_projection(base, d2, matrix=matrix).features

    old, new = base.features, projected
    if swap_spaces:
        old, new = new, old

    revealed = np.random.default_rng(label_seed).random(schedule.total) < schedule.p_l
    events = []
    for index, row in enumerate(order):
        step = index + 1
        period = schedule.period(step)
        if period is Period.OLD:
            payload: Payload = S1Only(old[row])
        elif period is Period.OVERLAP:
            payload = Overlap(old[row], new[row])
        else:
            payload = S2Only(new[row])
        label = int(base.labels[row])
        events.append(StreamEvent(step, payload, label if revealed[index] else None, label))

    logger.debug(
        "generated %d-round stream from %r (d1=%d, d2=%d, %d labeled)",
        schedule.total,
        base.name,
        old.shape[1],
        new.shape[1],
        int(revealed.sum()),
    )
    return FeatureStream(events, schedule, matrix, old.shape[1], new.shape[1], base.name)


def _normalize_labels(raw: np.ndarray, path: str) -> np.ndarray:
    values = sorted(set(raw.tolist()))
    if len(values) > 2:
        raise InputError(
            "%s: labels must be binary, found %d distinct values" % (path, len(values))
        )
    if set(values) <= {-1.0, 1.0}:
        return raw.astype(int)
    if set(values) <= {0.0, 1.0}:
        return np.where(raw > 0, 1, -1)
    if len(values) == 1:
        raise InputError("%s: cannot map the single label %r to -1/+1" % (path, values[0]))
    return np.where(raw == values[1], 1, -1)


def _parse_failure(cells: pd.DataFrame, numeric: pd.DataFrame) -> Optional[Tuple[int, str]]:
    # cells spelling nan parse to NaN as well; the finiteness check reports those
    text = cells.apply(lambda column: column.str.strip())
    failed = numeric.isna() & (text.apply(lambda column: column.str.lower()) != "nan")
    if not failed.to_numpy().any():
        return None
    row, column = np.argwhere(failed.to_numpy())[0]
    return int(row), str(text.iat[row, column])


def load_dataset(
    path: Union[str, Path], has_header: bool = False, name: Optional[str] = None
) -> Dataset:
    """
    Read a comma separated file with numeric features and the label in the last column. Labels
    ``{0, 1}`` become ``{-1, +1}``; any other pair maps the smaller value to ``-1``.

    :param has_header: skip the first row
    :param name: dataset name, the file stem by default
    :raises InputError: unreadable file, a malformed row (reported as ``path:line``) or more than
        two label values
    """
    path = Path(path)
    first_line = 2 if has_header else 1
    try:
        cells = pd.read_csv(
            path,
            header=None,
            skiprows=first_line - 1,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise InputError("%s: no data rows" % path) from None
    except pd.errors.ParserError as err:
        raise InputError("%s: %s" % (path, err)) from err
    except OSError as err:
        raise InputError("%s: %s" % (path, err.strerror or err)) from err
    except UnicodeDecodeError as err:
        raise InputError("%s: not a UTF-8 text file" % path) from err

    lines = cells.index.to_numpy() + first_line
    blank = cells.fillna("").apply(lambda column: column.str.strip()) == ""
    keep = ~blank.all(axis=1).to_numpy()
    cells, lines = cells[keep].reset_index(drop=True), lines[keep]
    if cells.empty:
        raise InputError("%s: no data rows" % path)

    width = cells.shape[1]
    if width < 2:
        raise InputError("%s:%d: expected features and a label" % (path, lines[0]))
    short = cells.isna().any(axis=1).to_numpy()
    if short.any():
        row = int(np.argmax(short))
        raise InputError(
            "%s:%d: expected %d columns, got %d"
            % (path, lines[row], width, int(cells.iloc[row].notna().sum()))
        )

    numeric = cells.apply(lambda column: pd.to_numeric(column.str.strip(), errors="coerce"))
    failure = _parse_failure(cells, numeric)
    if failure is not None:
        row, cell = failure
        raise InputError("%s:%d: could not convert %r to a number" % (path, lines[row], cell))

    data = numeric.to_numpy(dtype=float)
    if not np.all(np.isfinite(data)):
        raise InputError("%s: non-finite values" % path)
    labels = _normalize_labels(data[:, -1], str(path))
    return Dataset(data[:, :-1], labels, name if name is not None else path.stem)


#: ``to_csv`` options shared by every table written, ``%.17g`` round-trips doubles.
CSV_OPTIONS: Dict[str, Any] = {"index": False, "float_format": "%.17g", "lineterminator": "\n"}


def save_dataset(dataset: Dataset, path: Union[str, Path], header: bool = False) -> None:
    """
    Write ``dataset`` in the format :func:`load_dataset` reads.
    """
    frame = pd.DataFrame(dataset.features, columns=["x%d" % i for i in range(dataset.dim)])
    frame["label"] = dataset.labels.astype(int)
    frame.to_csv(path, header=header, **CSV_OPTIONS)
    logger.info("wrote %d rows to %s", len(dataset), path)


def _views(stream: FeatureStream, space: str, dim: int) -> np.ndarray:
    views = np.full((len(stream), dim), np.nan)
    for row, event in enumerate(stream):
        view = event.x1 if space == SPACE_OLD else event.x2
        if view is not None:
            views[row] = view
    return views


def write_stream_trace(
    stream: FeatureStream, path: Union[str, Path], dump_features: bool = False
) -> None:
    """
    Write one row per event: ``step, period, labeled, true_label``, followed by the old and new
    features (empty where a space is absent) with ``dump_features``.
    """
    frame = pd.DataFrame(
        {
            "step": [event.step for event in stream],
            "period": [event.period.value for event in stream],
            "labeled": [int(event.labeled) for event in stream],
            "true_label": [event.true_label for event in stream],
        }
    )
    if dump_features:
        for space, prefix, dim in ((SPACE_OLD, "x1", stream.d1), (SPACE_NEW, "x2", stream.d2)):
            views = _views(stream, space, dim)
            for i in range(dim):
                frame["%s_%d" % (prefix, i)] = views[:, i]

    frame.to_csv(path, **CSV_OPTIONS)
    logger.info("wrote %d-event stream trace to %s", len(stream), path)
