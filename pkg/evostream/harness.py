#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Experiment orchestration.

Every seed builds one stream, one sequence of reservoir draws and one pair of initial
coefficients; every method of that seed consumes the same ones, so methods are compared on
paired runs. The old-space phase is learned once per seed for each regime (with and without
the manifold term) and cloned by the methods that continue from it.
"""
import logging
import math
import os
from dataclasses import asdict, dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .baselines import METHODS, BaselineKind, MethodTrace, TraceRow, predicted_label, run_baseline
from .buffer import ReservoirBuffer, RoundDraw
from .config import Config, copy_config
from .ensemble import (
    EnsembleState,
    RiskNormalizer,
    combine,
    default_eta,
    ensemble_risk,
    update_weights,
)
from .errors import ConfigurationError
from .kernelspace import KernelConfig, median_bandwidth
from .learner import KernelLearner
from .mapping import LinearMap, apply_mapping, fit_mapping
from .predictor import SPACE_NEW, SPACE_OLD, KernelPredictor, RiskParams, Sample
from .stream import (
    Dataset,
    FeatureStream,
    StreamSchedule,
    default_d2,
    generate_stream,
    load_dataset,
    make_swiss,
)

logger = logging.getLogger(__name__)

#: Number of feature vectors per space the median heuristic looks at.
BANDWIDTH_SAMPLE = 100


class InitialPhase(NamedTuple):
    """
    The old-space learner after ``T1`` rounds and the mapping fit on the overlapping period.
    """

    learner: KernelLearner
    mapping: LinearMap

    @property
    def predictor(self) -> KernelPredictor:
        return self.learner.predictor

    @property
    def buffer(self) -> ReservoirBuffer:
        return self.learner.buffer


def schedule_from_config(config: Config) -> StreamSchedule:
    sched = config.schedule
    return StreamSchedule(sched.t1, sched.overlap, sched.t2, sched.p_l)


def load_base_dataset(config: Config, seed: Optional[np.random.SeedSequence] = None) -> Dataset:
    """
    :returns: the configured dataset; the Swiss dataset is drawn with ``seed``
    """
    source = config.dataset.source
    if source == "swiss":
        swiss = config.swiss
        return make_swiss(
            swiss.n, swiss.noise, seed, swiss.inner_radius, swiss.growth, swiss.turns
        )
    return load_dataset(source, config.dataset.has_header, config.dataset.name or None)


@dataclass
class RunContext:
    """
    Everything one seed shares across methods.
    """

    config: Config
    seed: int
    stream: FeatureStream
    kernel_old: KernelConfig
    kernel_new: KernelConfig
    params_old: RiskParams
    params_new: RiskParams
    draws: np.ndarray
    seed_coefs: Tuple[Optional[float], Optional[float]]
    eta: float
    _initial: Dict[bool, InitialPhase] = field(default_factory=dict, repr=False)

    @property
    def schedule(self) -> StreamSchedule:
        return self.stream.schedule

    def draw(self, step: int) -> RoundDraw:
        accept, victim = self.draws[step - 1]
        return RoundDraw(float(accept), float(victim))

    def learner(
        self,
        space_id: str,
        *,
        manifold: bool,
        label_gated: Optional[bool] = None,
        frozen: bool = False,
    ) -> KernelLearner:
        """
        :returns: a fresh learner on ``space_id``; plain learners are label gated by default
        """
        old = space_id == SPACE_OLD
        model = self.config.model
        return KernelLearner(
            space_id,
            self.stream.d1 if old else self.stream.d2,
            self.kernel_old if old else self.kernel_new,
            self.params_old if old else self.params_new,
            model.buffer,
            manifold=manifold,
            label_gated=(not manifold) if label_gated is None else label_gated,
            frozen=frozen,
            projection=model.projection,
            seed_coef=self.seed_coefs[0 if old else 1],
            trace=self.config.run.trace_buffer,
        )

    def initial_phase(self, manifold: bool) -> InitialPhase:
        """
        :returns: a private copy of the first phase learned with or without the manifold term
        """
        if manifold not in self._initial:
            self._initial[manifold] = initialize_phase(self, manifold)
        cached = self._initial[manifold]
        return InitialPhase(cached.learner.clone(), cached.mapping)


def _bandwidths(config: Config, stream: FeatureStream) -> Tuple[float, float]:
    """
    :returns: the kernel bandwidths of the old and new space; without a configured ``sigma``,
        ``sigma_scale`` times the median pairwise distance of each space
    """
    model = config.model
    if model.sigma is not None:
        return model.sigma, model.sigma
    old_views = [event.x1 for event in stream if event.x1 is not None][:BANDWIDTH_SAMPLE]
    new_views = [event.x2 for event in stream if event.x2 is not None][:BANDWIDTH_SAMPLE]
    return (
        model.sigma_scale * median_bandwidth(old_views),
        model.sigma_scale * median_bandwidth(new_views),
    )


def prepare_context(config: Config, seed: int, dataset: Optional[Dataset] = None) -> RunContext:
    """
    Build the stream, kernels, risk parameters, reservoir draws and initial coefficients of one
    seed.

    :param dataset: base dataset; the Swiss dataset is generated per seed when omitted
    """
    data_seed, stream_seed, draw_seed, init_seed = np.random.SeedSequence(seed).spawn(4)
    if dataset is None:
        dataset = load_base_dataset(config, data_seed)

    schedule = schedule_from_config(config)
    d2 = config.schedule.d2 or default_d2(dataset.name, dataset.dim)
    stream = generate_stream(
        dataset, schedule, d2, stream_seed, swap_spaces=config.dataset.swap_spaces
    )

    model = config.model
    sigma_old, sigma_new = _bandwidths(config, stream)
    graph_old = model.graph_sigma or sigma_old
    graph_new = model.graph_sigma or sigma_new
    logger.debug(
        "seed %d: bandwidths old=%.4g new=%.4g, graph old=%.4g new=%.4g",
        seed,
        sigma_old,
        sigma_new,
        graph_old,
        graph_new,
    )

    inv_label_prob = 1.0 / schedule.p_l
    params_old = RiskParams(
        model.lambda1, model.lambda2, inv_label_prob, KernelConfig(graph_old), model.loss
    )
    params_new = RiskParams(
        model.lambda1, model.lambda2, inv_label_prob, KernelConfig(graph_new), model.loss
    )

    draws = np.random.default_rng(draw_seed).random((schedule.total, 2))
    if model.init == "random":
        c1, c2 = np.random.default_rng(init_seed).uniform(-model.init_scale, model.init_scale, 2)
        seed_coefs: Tuple[Optional[float], Optional[float]] = (float(c1), float(c2))
    else:
        seed_coefs = (None, None)

    return RunContext(
        config,
        seed,
        stream,
        KernelConfig(sigma_old),
        KernelConfig(sigma_new),
        params_old,
        params_new,
        draws,
        seed_coefs,
        model.eta or default_eta(schedule.t2),
    )


def initialize_phase(ctx: RunContext, manifold: bool = True) -> InitialPhase:
    """
    Learn the old-space model over rounds ``1..T1`` with step size ``1 / sqrt(t)`` and fit the
    mapping on the overlapping pairs.

    :param manifold: learn from every round with the manifold term; otherwise only labeled
        rounds are used
    :raises ConfigurationError: the stream has no overlapping rounds
    """
    learner = ctx.learner(SPACE_OLD, manifold=manifold)
    for event in ctx.stream.old_phase:
        learner.observe(event.old_sample(), 1.0 / math.sqrt(event.step), ctx.draw(event.step))

    pairs = ctx.stream.overlap_pairs()
    if not pairs:
        raise ConfigurationError("mapping methods need an overlapping period (B >= 1)")
    mapping = fit_mapping(pairs, ctx.config.model.mapping_ridge)
    logger.debug(
        "seed %d: first phase done (manifold=%s, %d representers, %d labeled samples buffered)",
        ctx.seed,
        manifold,
        learner.predictor.size,
        sum(sample.labeled for sample in learner.buffer.contents()),
    )
    return InitialPhase(learner, mapping)


def _buffer_rows(name: str, learner: KernelLearner) -> List[TraceRow]:
    return [(name, seen, decision) for seen, decision in learner.buffer.trace or []]


def sf2el_phase(
    ctx: RunContext,
    initial: InitialPhase,
    *,
    manifold: bool = True,
    label_gated: bool = False,
    method: str = "SF2EL",
) -> MethodTrace:
    """
    Run the two-model ensemble over rounds ``T1 + 1..T1 + T2``. Each round predicts with the
    weighted combination of the old-space learner on ``psi(x2)`` and a new-space learner on
    ``x2``, records both raw risks, updates the weights with the clipped risks and then lets
    both learners take a step of size ``1 / sqrt(t - T1)``.

    :param initial: first phase result; its learner is modified
    :param label_gated: update the weights only on labeled rounds
    """
    f1 = initial.learner
    f1.start_new_phase()
    f2 = ctx.learner(SPACE_NEW, manifold=manifold, label_gated=label_gated)

    model = ctx.config.model
    state = EnsembleState.initial(ctx.eta)
    normalizer = RiskNormalizer(model.risk_cap, model.risk_warmup, model.risk_quantile)

    new_phase = ctx.stream.new_phase
    rounds = len(new_phase)
    scores = np.zeros(rounds)
    correct = np.zeros(rounds, dtype=bool)
    risks = np.zeros(rounds)
    clipped = np.zeros(rounds)
    base_risks = np.zeros((rounds, 2))
    base_clipped = np.zeros((rounds, 2))
    weights = np.zeros((rounds, 2))

    for k, event in enumerate(new_phase):
        x2 = event.new_sample()
        x1 = Sample(apply_mapping(initial.mapping, x2.features), SPACE_OLD, x2.label, x2.step)

        weights[k] = state.weights
        scores[k] = combine(state, f1.score(x1), f2.score(x2))
        correct[k] = predicted_label(scores[k]) == event.true_label

        j1, j2 = f1.risk(x1), f2.risk(x2)
        c1, c2 = normalizer(j1, j2)
        base_risks[k] = (j1, j2)
        base_clipped[k] = (c1, c2)
        risks[k] = ensemble_risk(state, j1, j2)
        clipped[k] = ensemble_risk(state, c1, c2)
        if event.labeled or not label_gated:
            state = update_weights(state, c1, c2)

        tau = 1.0 / math.sqrt(k + 1)
        draw = ctx.draw(event.step)
        f1.observe(x1, tau, draw)
        f2.observe(x2, tau, draw)

    return MethodTrace(
        method,
        ctx.seed,
        scores,
        correct,
        risks,
        clipped,
        base_risks,
        base_clipped,
        weights,
        _buffer_rows("f1", f1) + _buffer_rows("f2", f2),
    )


def run_method(method: str, ctx: RunContext) -> MethodTrace:
    if method == "SF2EL":
        return sf2el_phase(ctx, ctx.initial_phase(True))
    return run_baseline(BaselineKind(method), ctx)


@dataclass
class SummaryRow:
    method: str
    accuracy_mean: float
    accuracy_std: float
    final_cum_risk: float


@dataclass
class RunReport:
    """
    Results of every method over every seed.

    :param slack: ``sqrt(T2 ln 2)``, the ensemble's allowed excess cumulative clipped risk
    """

    methods: List[str]
    seeds: List[int]
    traces: Dict[str, List[MethodTrace]]
    slack: float
    config_json: bytes = b""

    def accuracies(self, method: str) -> np.ndarray:
        return np.array([trace.accuracy for trace in self.traces[method]])

    def summary(self) -> List[SummaryRow]:
        rows = []
        for method in self.methods:
            accuracies = self.accuracies(method)
            final = np.mean([trace.avg_cum_risk[-1] for trace in self.traces[method]])
            rows.append(
                SummaryRow(method, float(accuracies.mean()), float(accuracies.std()), float(final))
            )
        return rows

    def risk_trend(self, method: str) -> Tuple[np.ndarray, np.ndarray]:
        """
        :returns: the seed-averaged raw risk per round and average cumulative risk
        """
        traces = self.traces[method]
        return (
            np.mean([trace.risks for trace in traces], axis=0),
            np.mean([trace.avg_cum_risk for trace in traces], axis=0),
        )

    def weight_trend(self, method: str = "SF2EL") -> np.ndarray:
        return np.mean([trace.weights for trace in self.traces[method]], axis=0)

    def bound_check(self, method: str = "SF2EL") -> Tuple[np.ndarray, np.ndarray]:
        """
        :returns: seed-averaged cumulative clipped ensemble risk and the cumulative clipped risk
            of the better base model, per round
        """
        traces = self.traces[method]
        ensemble = np.mean([np.cumsum(trace.clipped) for trace in traces], axis=0)
        best = np.mean(
            [np.cumsum(trace.base_clipped, axis=0).min(axis=1) for trace in traces], axis=0
        )
        return ensemble, best

    def bound_violations(self, method: str = "SF2EL", tol: float = 1e-9) -> int:
        """
        :returns: number of seeds whose final cumulative clipped ensemble risk exceeds the better
            base model's by more than :attr:`slack`
        """
        count = 0
        for trace in self.traces.get(method, []):
            ensemble = float(np.sum(trace.clipped))
            best = float(np.sum(trace.base_clipped, axis=0).min())
            if ensemble > best + self.slack + tol:
                count += 1
        return count


#: Float format of the report tables.
REPORT_FLOAT_FORMAT = "%.12g"


def _write_csv(path: str, frame: pd.DataFrame) -> None:
    frame.to_csv(path, index=False, float_format=REPORT_FLOAT_FORMAT, lineterminator="\n")
    logger.info("wrote %s", path)


def _numbered(**columns: np.ndarray) -> pd.DataFrame:
    rounds = len(next(iter(columns.values())))
    return pd.DataFrame({"t": np.arange(1, rounds + 1), **columns})


def _trace_frame(rows: Sequence[TraceRow]) -> pd.DataFrame:
    frame = pd.DataFrame(
        [(seen, name, decision.kind.value, decision.index) for name, seen, decision in rows],
        columns=["round", "learner", "decision", "victim"],
    )
    frame["victim"] = frame["victim"].astype("Int64")
    return frame


def write_report(report: RunReport, out_dir: str) -> None:
    """
    Write the summary, risk trends, the ensemble's weights and bound check, the buffer trace
    (when recorded) and the configuration snapshot to ``out_dir``.
    """
    os.makedirs(out_dir, exist_ok=True)
    _write_csv(
        os.path.join(out_dir, "summary.csv"),
        pd.DataFrame([asdict(row) for row in report.summary()]),
    )

    for method in report.methods:
        risk, avg = report.risk_trend(method)
        _write_csv(
            os.path.join(out_dir, "risk_trend_%s.csv" % method),
            _numbered(J_t=risk, avg_cum_risk=avg),
        )

    if "SF2EL" in report.methods:
        alpha = report.weight_trend()
        _write_csv(
            os.path.join(out_dir, "weights.csv"), _numbered(alpha1=alpha[:, 0], alpha2=alpha[:, 1])
        )
        ensemble, best = report.bound_check()
        _write_csv(
            os.path.join(out_dir, "bound_check.csv"),
            _numbered(
                ens_cum_clipped=ensemble, min_base_cum_clipped=best, bound=best + report.slack
            ),
        )
        trace = report.traces["SF2EL"][0].buffer_trace
        if trace:
            _write_csv(os.path.join(out_dir, "buffer_trace.csv"), _trace_frame(trace))

    if report.config_json:
        path = os.path.join(out_dir, "config.json")
        with open(path, "wb") as fp:
            fp.write(report.config_json)
        logger.info("wrote %s", path)


def _check_methods(methods: Sequence[str]) -> List[str]:
    unknown = [method for method in methods if method not in METHODS]
    if unknown:
        raise ConfigurationError(
            "unknown method(s) %s: must be among %s" % (", ".join(unknown), ", ".join(METHODS))
        )
    if not methods:
        raise ConfigurationError("no methods selected")
    return list(methods)


def run_experiment(
    config: Config, write: bool = True, dataset: Optional[Dataset] = None
) -> RunReport:
    """
    Run every configured method over every seed. Seeds are ``base_seed .. base_seed + seeds - 1``.

    :param write: write the report files to ``run.out_dir``
    :param dataset: base dataset overriding ``dataset.source``
    """
    methods = _check_methods(config.run.methods)
    seeds = [config.run.base_seed + index for index in range(config.run.seeds)]
    if dataset is None and config.dataset.source != "swiss":
        dataset = load_base_dataset(config)

    logger.info(
        "running %s on %s over %d seed(s)",
        ", ".join(methods),
        dataset.name if dataset is not None else "swiss",
        len(seeds),
    )
    traces: Dict[str, List[MethodTrace]] = {method: [] for method in methods}
    for seed in seeds:
        ctx = prepare_context(config, seed, dataset)
        for method in methods:
            traces[method].append(run_method(method, ctx))
        logger.info(
            "seed %d: %s",
            seed,
            " ".join("%s=%.3f" % (method, traces[method][-1].accuracy) for method in methods),
        )

    report = RunReport(
        methods,
        seeds,
        traces,
        math.sqrt(config.schedule.t2 * math.log(2.0)),
        config.dumps("json", pretty=True),
    )
    violations = report.bound_violations() if "SF2EL" in methods else 0
    if violations:
        logger.warning(
            "ensemble exceeded its cumulative risk bound on %d of %d seed(s)",
            violations,
            len(seeds),
        )
    for row in report.summary():
        logger.info(
            "%s: accuracy %.3f +- %.3f, final average cumulative risk %.4g",
            row.method,
            row.accuracy_mean,
            row.accuracy_std,
            row.final_cum_risk,
        )
    if write:
        write_report(report, config.run.out_dir)
    return report


@dataclass
class SweepRow:
    value: float
    method: str
    accuracy_mean: float
    accuracy_std: float


def _sweep(
    config: Config, key: str, values: Sequence, column: str, filename: str, write: bool
) -> List[SweepRow]:
    if not values:
        raise ConfigurationError("sweep needs at least one value")

    dataset = None if config.dataset.source == "swiss" else load_base_dataset(config)
    rows = []
    for value in values:
        swept = copy_config(config)
        swept[key] = value
        swept.validate()
        logger.info("sweep %s=%s", key, value)
        report = run_experiment(swept, write=False, dataset=dataset)
        rows.extend(
            SweepRow(value, row.method, row.accuracy_mean, row.accuracy_std)
            for row in report.summary()
        )

    if write:
        os.makedirs(config.run.out_dir, exist_ok=True)
        table = pd.DataFrame([asdict(row) for row in rows]).rename(columns={"value": column})
        _write_csv(os.path.join(config.run.out_dir, filename), table)
    return rows


def sweep_buffer(config: Config, sizes: Sequence[int], write: bool = True) -> List[SweepRow]:
    """
    Run the experiment once per buffer capacity with shared seeds.
    """
    return _sweep(config, "model.buffer", sizes, "buffer", "buffer_sweep.csv", write)


def sweep_label_prob(
    config: Config, probabilities: Sequence[float], write: bool = True
) -> List[SweepRow]:
    """
    Run the experiment once per label probability with shared seeds.
    """
    return _sweep(config, "schedule.p_l", probabilities, "p_l", "label_sweep.csv", write)
