#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
import csv
from argparse import ArgumentTypeError
from unittest.mock import patch

import pytest
from evostream.cli import EXIT_IO, _number_list, build_parser, main
from evostream.errors import NumericalError

SMALL = [
    "--set-swiss-n",
    "100",
    "--set-schedule-t1",
    "40",
    "--set-schedule-overlap",
    "5",
    "--set-schedule-t2",
    "30",
]


def _rows(path):
    with open(path, newline="") as fp:
        return list(csv.reader(fp))


class TestParser:
    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["--version"])
        assert exc.value.code == 0
        assert capsys.readouterr().out.startswith("evostream ")

    def test_dotted_destinations(self):
        args = build_parser().parse_args(["run", "--buffer", "20", "--p-l", "0.4", "--seeds", "2"])
        assert getattr(args, "model.buffer") == 20
        assert getattr(args, "schedule.p_l") == 0.4
        assert getattr(args, "run.seeds") == 2
        assert getattr(args, "model.sigma") is None

    def test_sizes(self):
        args = build_parser().parse_args(["sweep-buffer", "--sizes", "10, 20,40"])
        assert args.sizes == [10, 20, 40]

    def test_sizes_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["sweep-buffer"])

    def test_number_list(self):
        assert _number_list(float)("0.1,0.5") == [0.1, 0.5]
        with pytest.raises(ArgumentTypeError):
            _number_list(int)(" , ")
        with pytest.raises(ArgumentTypeError):
            _number_list(int)("1,x")


class TestMain:
    def test_make_swiss(self, tmp_path):
        path = tmp_path / "swiss.csv"
        assert main(["make-swiss", "-o", str(path)] + SMALL) == 0
        assert len(_rows(path)) == 100

    def test_gen_stream(self, tmp_path):
        path = tmp_path / "trace.csv"
        assert main(["gen-stream", "-o", str(path), "--dump-features"] + SMALL) == 0
        rows = _rows(path)
        assert len(rows) == 71
        assert rows[0][:5] == ["step", "period", "labeled", "true_label", "x1_0"]

    def test_run(self, tmp_path):
        out = tmp_path / "out"
        argv = ["run", "--methods", "NOGD,SF2EL", "--seeds", "1", "--out-dir", str(out)]
        assert main(argv + SMALL) == 0
        summary = _rows(out / "summary.csv")
        assert [row[0] for row in summary[1:]] == ["NOGD", "SF2EL"]

    def test_config_file(self, tmp_path):
        config = tmp_path / "experiment.ini"
        config.write_text(
            "[swiss]\nn = 100\n\n[schedule]\nt1 = 40\noverlap = 5\nt2 = 30\n\n"
            "[run]\nmethods = NOGD_MR\nseeds = 1\nout_dir = %s\n" % (tmp_path / "out")
        )
        assert main(["sweep-label-prob", "-c", str(config), "--probs", "0.5,1"]) == 0
        assert len(_rows(tmp_path / "out" / "label_sweep.csv")) == 3

    def test_sweep_buffer(self, tmp_path):
        out = tmp_path / "out"
        argv = ["sweep-buffer", "--sizes", "2,4", "--methods", "NOGD", "--seeds", "1"]
        assert main(argv + ["--out-dir", str(out)] + SMALL) == 0
        assert len(_rows(out / "buffer_sweep.csv")) == 3

    def test_invalid_value(self, capsys):
        assert main(["run", "--p-l", "1.5"]) == 2
        assert capsys.readouterr().err.startswith("error: ")

    def test_invalid_combination(self, capsys):
        assert main(["run", "--set-swiss-n", "100"]) == 2
        assert "t1 + t2" in capsys.readouterr().err

    def test_missing_config(self, tmp_path, capsys):
        assert main(["run", "-c", str(tmp_path / "missing.ini")]) == EXIT_IO
        assert "missing.ini" in capsys.readouterr().err

    def test_malformed_ini(self, tmp_path, capsys):
        config = tmp_path / "experiment.ini"
        config.write_text("seeds = 2\n")
        assert main(["run", "-c", str(config)]) == 2
        assert "invalid INI config" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        config = tmp_path / "experiment.json"
        config.write_text('{"run": {"seeds": 2')
        assert main(["run", "-c", str(config)]) == 2
        assert capsys.readouterr().err.startswith("error: ")

    def test_missing_dataset(self, tmp_path, capsys):
        code = main(["run", "--dataset", str(tmp_path / "missing.csv")] + SMALL)
        assert code == 3
        assert "missing.csv" in capsys.readouterr().err

    def test_numerical_error(self, capsys):
        with patch("evostream.cli.run_experiment", side_effect=NumericalError("diverged")):
            assert main(["run"] + SMALL) == 4
        assert "diverged" in capsys.readouterr().err

    def test_log_level(self):
        with patch("evostream.cli.logging.basicConfig") as basic_config, patch(
            "evostream.cli.run_experiment"
        ) as run:
            assert main(["run", "--log-level", "debug"]) == 0
        assert basic_config.call_args.kwargs["level"] == "DEBUG"
        run.assert_called_once()
