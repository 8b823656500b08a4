#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Command line interface.

.. code-block:: bash

    evostream run --config experiment.ini --seeds 5 --out-dir results
    evostream sweep-buffer --sizes 10,20,40,60
    evostream gen-stream --output trace.csv --dump-features
    evostream make-swiss --output swiss.csv
"""
import logging
import sys
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from typing import Callable, Dict, List, Optional

from .config import Config, add_schema_arguments
from .errors import EvoStreamError, exit_code_for
from .harness import prepare_context, run_experiment, sweep_buffer, sweep_label_prob
from .settings import load_settings, schema
from .stream import make_swiss, save_dataset, write_stream_trace
from .version import __version__

logger = logging.getLogger(__name__)

#: Exit code for unreadable or unwritable files.
EXIT_IO = 3

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _number_list(cast: Callable[[str], float]) -> Callable[[str], List]:
    def parse(value: str) -> List:
        items = [item.strip() for item in value.split(",") if item.strip()]
        if not items:
            raise ArgumentTypeError("expected a comma separated list")
        try:
            return [cast(item) for item in items]
        except ValueError as err:
            raise ArgumentTypeError(str(err)) from err

    return parse


def _common_arguments() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", dest="config_path", metavar="PATH", help="config file")
    common.add_argument("--seed", dest="run.base_seed", type=int, help="first seed")
    common.add_argument("--seeds", dest="run.seeds", type=int, help="number of seeds")
    common.add_argument("--out-dir", dest="run.out_dir", help="output directory")
    common.add_argument("--methods", dest="run.methods", help="comma separated method list")
    common.add_argument("--buffer", dest="model.buffer", type=int, help="buffer capacity")
    common.add_argument("--p-l", dest="schedule.p_l", type=float, help="label probability")
    common.add_argument("--lambda1", dest="model.lambda1", type=float, help="RKHS norm penalty")
    common.add_argument("--lambda2", dest="model.lambda2", type=float, help="manifold penalty")
    common.add_argument("--sigma", dest="model.sigma", type=float, help="kernel bandwidth")
    common.add_argument("--eta", dest="model.eta", type=float, help="ensemble learning rate")
    common.add_argument("--dataset", dest="dataset.source", help="'swiss' or a CSV path")
    common.add_argument(
        "--dump-features",
        dest="run.dump_features",
        action="store_const",
        const=True,
        help="include features in the stream trace",
    )
    common.add_argument(
        "--trace-buffer",
        dest="run.trace_buffer",
        action="store_const",
        const=True,
        help="write the ensemble's buffer decisions",
    )
    common.add_argument("--log-level", dest="run.log_level", help="log level")
    add_schema_arguments(
        common.add_argument_group("config values", "set any configuration value"),
        schema,
        prefix="set-",
    )
    return common


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="evostream",
        description="Online learning on streams whose feature space evolves.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    common = _common_arguments()
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    commands.add_parser("run", parents=[common], help="run the configured experiment")

    sweep = commands.add_parser(
        "sweep-buffer", parents=[common], help="run the experiment per buffer capacity"
    )
    sweep.add_argument("--sizes", type=_number_list(int), required=True, metavar="B1,B2,...")

    sweep = commands.add_parser(
        "sweep-label-prob", parents=[common], help="run the experiment per label probability"
    )
    sweep.add_argument("--probs", type=_number_list(float), required=True, metavar="P1,P2,...")

    trace = commands.add_parser(
        "gen-stream", parents=[common], help="write the stream of the first seed as CSV"
    )
    trace.add_argument("-o", "--output", required=True, help="trace file")

    swiss = commands.add_parser("make-swiss", parents=[common], help="write a Swiss dataset")
    swiss.add_argument("-o", "--output", required=True, help="CSV file")
    return parser


def cmd_run(config: Config, args: Namespace) -> None:
    run_experiment(config)


def cmd_sweep_buffer(config: Config, args: Namespace) -> None:
    sweep_buffer(config, args.sizes)


def cmd_sweep_label_prob(config: Config, args: Namespace) -> None:
    sweep_label_prob(config, args.probs)


def cmd_gen_stream(config: Config, args: Namespace) -> None:
    ctx = prepare_context(config, config.run.base_seed)
    write_stream_trace(ctx.stream, args.output, config.run.dump_features)


def cmd_make_swiss(config: Config, args: Namespace) -> None:
    swiss = config.swiss
    dataset = make_swiss(
        swiss.n,
        swiss.noise,
        config.run.base_seed,
        swiss.inner_radius,
        swiss.growth,
        swiss.turns,
    )
    save_dataset(dataset, args.output, header=config.dataset.has_header)


COMMANDS: Dict[str, Callable[[Config, Namespace], None]] = {
    "run": cmd_run,
    "sweep-buffer": cmd_sweep_buffer,
    "sweep-label-prob": cmd_sweep_label_prob,
    "gen-stream": cmd_gen_stream,
    "make-swiss": cmd_make_swiss,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    :returns: the process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_settings(args.config_path, args)
        logging.basicConfig(level=config.run.log_level.upper(), format=LOG_FORMAT)
        COMMANDS[args.command](config, args)
    except OSError as err:
        filename = " %s" % err.filename if err.filename else ""
        print("error:%s: %s" % (filename, err.strerror or err), file=sys.stderr)
        return EXIT_IO
    except EvoStreamError as err:
        print("error: %s" % err, file=sys.stderr)
        return exit_code_for(err)
    return 0
