#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
evostream public API
"""
# ruff: noqa: F401
from .baselines import METHODS, BaselineKind, MethodTrace, run_baseline
from .buffer import DecisionKind, InsertDecision, ReservoirBuffer, RoundDraw, UnboundedHistory
from .ensemble import (
    EnsembleState,
    RiskNormalizer,
    combine,
    default_eta,
    ensemble_risk,
    update_weights,
    weights_from_cumulative,
)
from .errors import ConfigurationError, EvoStreamError, InputError, InternalError, NumericalError
from .harness import (
    RunContext,
    RunReport,
    initialize_phase,
    prepare_context,
    run_experiment,
    sf2el_phase,
    sweep_buffer,
    sweep_label_prob,
)
from .kernelspace import KernelConfig, gram_matrix, kernel_eval, median_bandwidth
from .learner import KernelLearner
from .mapping import LinearMap, apply_mapping, fit_mapping, mapping_residual
from .predictor import (
    KernelPredictor,
    RiskParams,
    Sample,
    buffered_risk,
    evaluate,
    full_risk_oracle,
    functional_gradient,
    project_matching_pursuit,
    project_onto_span,
    rkhs_norm_sq,
    step_direct_append,
    step_no_insert,
    step_with_replacement,
)
from .settings import ExperimentConfig, load_settings
from .stream import (
    Dataset,
    FeatureStream,
    StreamEvent,
    StreamSchedule,
    generate_stream,
    load_dataset,
    make_swiss,
    random_projection,
)
from .version import __version__
