#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Experiment configuration schema.

Values resolve in this order, later sources winning: field defaults, ``EVOSTREAM_*``
environment variables, a config file, command line flags.

.. code-block:: ini

    [schedule]
    t1 = 1000
    overlap = 10
    p_l = 0.3

    [model]
    buffer = 40

    [run]
    methods = SF2EL, NOGD_MR
"""
from argparse import Namespace
from typing import Optional

from .baselines import METHODS
from .config import (
    BoolField,
    Config,
    FloatField,
    IntField,
    ListField,
    LogLevelField,
    ProbabilityField,
    Schema,
    StringField,
    VirtualField,
    cmdline_args_override,
    format_for_path,
    make_type,
    validator,
)
from .predictor import LOSSES, PROJECTIONS

schema = Schema(env="EVOSTREAM")

schema.dataset.source = StringField(
    default="swiss",
    required=True,
    transform_strip=True,
    help="dataset: 'swiss' for the built-in spirals or the path to a CSV file",
)
schema.dataset.has_header = BoolField(default=False, help="the CSV file starts with a header row")
schema.dataset.name = StringField(default="", help="dataset name, the file stem by default")
schema.dataset.swap_spaces = BoolField(
    default=False, help="use the projected features as the old space"
)

schema.swiss.n = IntField(default=2000, min=2, help="number of Swiss points")
schema.swiss.noise = FloatField(default=0.1, min=0, help="Swiss noise standard deviation")
schema.swiss.inner_radius = FloatField(default=0.5, min=0, help="spiral radius at angle 0")
schema.swiss.growth = FloatField(
    default=0.5, min=0, exclusive_min=True, help="spiral radius growth per radian"
)
schema.swiss.turns = FloatField(
    default=2.0, min=0, exclusive_min=True, help="number of spiral turns"
)

schema.schedule.t1 = IntField(default=1000, min=2, help="rounds in the old feature space")
schema.schedule.overlap = IntField(default=10, min=1, help="overlapping rounds B")
schema.schedule.t2 = IntField(default=1000, min=1, help="rounds in the new feature space")
schema.schedule.d2 = IntField(default=0, min=0, help="new space dimension, 0 picks a default")
schema.schedule.p_l = ProbabilityField(default=0.3, help="label reveal probability")
schema.schedule.total_rounds = VirtualField(lambda cfg: cfg.t1 + cfg.t2)

schema.model.buffer = IntField(default=60, min=1, help="buffer capacity per learner")
schema.model.lambda1 = FloatField(default=0.01, min=0, help="RKHS norm penalty")
schema.model.lambda2 = FloatField(default=0.1, min=0, help="manifold penalty")
schema.model.loss = StringField(
    default="logistic", choices=sorted(LOSSES), transform_case="lower", help="loss function"
)
schema.model.sigma = FloatField(
    min=0, exclusive_min=True, help="kernel bandwidth, scaled median heuristic when unset"
)
schema.model.sigma_scale = FloatField(
    default=0.08,
    min=0,
    exclusive_min=True,
    help="factor applied to the median heuristic when sigma is unset",
)
schema.model.graph_sigma = FloatField(
    min=0, exclusive_min=True, help="similarity graph bandwidth, the kernel bandwidth when unset"
)
schema.model.eta = FloatField(
    min=0, exclusive_min=True, help="ensemble learning rate, sqrt(ln 2 / T2) when unset"
)
schema.model.init = StringField(
    default="random", choices=["random", "zero"], transform_case="lower", help="initial model"
)
schema.model.init_scale = FloatField(
    default=0.1, min=0, help="initial coefficient drawn from [-scale, scale]"
)
schema.model.mapping_ridge = FloatField(
    min=0, help="ridge of the feature space mapping, scaled to the data when unset"
)
schema.model.projection = StringField(
    default="exact", choices=sorted(PROJECTIONS), help="projection when a representer leaves"
)
schema.model.risk_cap = FloatField(
    min=0, exclusive_min=True, help="fixed risk cap for the weight update"
)
schema.model.risk_warmup = IntField(default=50, min=1, help="rounds the risk cap is estimated on")
schema.model.risk_quantile = ProbabilityField(default=0.95, help="risk cap quantile")

schema.run.seeds = IntField(default=10, min=1, help="number of seeds")
schema.run.base_seed = IntField(default=0, min=0, help="first seed")
schema.run.methods = ListField(
    StringField(choices=list(METHODS)),
    default=lambda: list(METHODS),
    required=True,
    help="methods to run",
)
schema.run.out_dir = StringField(default="results", required=True, help="output directory")
schema.run.log_level = LogLevelField(default="info", help="log level")
schema.run.trace_buffer = BoolField(default=False, help="write the ensemble's buffer decisions")
schema.run.dump_features = BoolField(default=False, help="include features in stream traces")


@validator(schema.schedule)
def _overlap_fits(cfg: Config) -> None:
    if cfg.overlap >= cfg.t1:
        raise ValueError("overlap (%d) must be shorter than t1 (%d)" % (cfg.overlap, cfg.t1))


@validator(schema)
def _swiss_has_rows(cfg: Config) -> None:
    if cfg.dataset.source != "swiss":
        return
    if cfg.swiss.n % 2:
        raise ValueError("swiss.n must be even, got %d" % cfg.swiss.n)
    if cfg.schedule.total_rounds > cfg.swiss.n:
        raise ValueError(
            "t1 + t2 = %d rounds need at least that many Swiss points, swiss.n = %d"
            % (cfg.schedule.total_rounds, cfg.swiss.n)
        )


ExperimentConfig = make_type(schema, "ExperimentConfig")


def load_settings(
    path: Optional[str] = None, args: Optional[Namespace] = None, validate: bool = True
) -> Config:
    """
    Build the experiment configuration.

    :param path: config file, the format is picked by suffix
    :param args: parsed command line flags whose destinations are dotted config keys
    :param validate: run the schema validators
    """
    config = ExperimentConfig()
    if path:
        config.load(path, format_for_path(path))
    if args is not None:
        cmdline_args_override(config, args)
    if validate:
        config.validate()
    return config
