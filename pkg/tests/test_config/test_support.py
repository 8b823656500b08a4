#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
from argparse import ArgumentParser, Namespace

import pytest
from evostream.config import (
    BoolField,
    ConfigType,
    FloatField,
    IntField,
    ListField,
    Schema,
    StringField,
    ValidationError,
    VirtualField,
    add_schema_arguments,
    cmdline_args_override,
    copy_config,
    iter_fields,
    make_type,
    validator,
)


def _schema():
    schema = Schema()
    schema.name = StringField(default="swiss", help="dataset name\n\nlong text")
    schema.model.buffer = IntField(default=60, min=1)
    schema.model.sigma = FloatField()
    schema.run.trace_buffer = BoolField(default=False)
    schema.run.methods = ListField(StringField(), default=lambda: ["SF2EL"])
    schema.run.total = VirtualField(lambda cfg: len(cfg.methods))
    return schema


def _parser(prefix=""):
    parser = ArgumentParser()
    add_schema_arguments(parser, _schema(), prefix=prefix)
    return parser


class TestMakeType:
    def test_type(self):
        schema = _schema()
        ExperimentKind = make_type(schema, "ExperimentKind")
        assert issubclass(ExperimentKind, ConfigType)
        assert ExperimentKind.__name__ == "ExperimentKind"
        assert ExperimentKind.__schema__ is schema
        assert ExperimentKind.__module__ == __name__

    def test_module(self):
        ExperimentKind = make_type(_schema(), "ExperimentKind", module="evostream.settings")
        assert ExperimentKind.__module__ == "evostream.settings"


class TestIterFields:
    def test_paths(self):
        paths = [path for path, _ in iter_fields(_schema())]
        assert paths == [
            "name",
            "model.buffer",
            "model.sigma",
            "run.trace_buffer",
            "run.methods",
            "run.total",
        ]

    def test_field(self):
        schema = _schema()
        fields = dict(iter_fields(schema))
        assert fields["model.buffer"] is schema.model.buffer

    def test_config(self):
        schema = _schema()
        assert list(iter_fields(schema())) == list(iter_fields(schema))


class TestAddSchemaArguments:
    def test_values_are_strings(self):
        args = _parser().parse_args(["--model-buffer", "20", "--run-trace-buffer"])
        assert getattr(args, "model.buffer") == "20"
        assert getattr(args, "run.trace_buffer") is True
        assert getattr(args, "model.sigma") is None

    def test_bool_pair(self):
        parser = _parser()
        assert getattr(parser.parse_args(["--no-run-trace-buffer"]), "run.trace_buffer") is False
        assert getattr(parser.parse_args([]), "run.trace_buffer") is None

    def test_skips_lists_and_virtual(self):
        parser = _parser()
        with pytest.raises(SystemExit):
            parser.parse_args(["--run-methods", "NOGD"])
        with pytest.raises(SystemExit):
            parser.parse_args(["--run-total", "3"])

    def test_prefix(self):
        args = _parser(prefix="set-").parse_args(["--set-name", "moons"])
        assert getattr(args, "name") == "moons"

    def test_short_help(self):
        action = next(a for a in _parser()._actions if a.dest == "name")
        assert action.help == "dataset name"
        assert action.metavar == "NAME"


class TestCmdlineArgsOverride:
    def test_override(self):
        config = _schema()()
        args = Namespace(**{"model.buffer": "20", "model.sigma": None, "command": "run"})
        cmdline_args_override(config, args)
        assert config.model.buffer == 20
        assert config.model.sigma is None

    def test_ignore(self):
        config = _schema()()
        args = Namespace(**{"model.buffer": "20", "name": "moons"})
        cmdline_args_override(config, args, ignore="model.buffer")
        assert config.model.buffer == 60
        assert config.name == "moons"

    def test_parsed_flags(self):
        config = _schema()()
        args = _parser().parse_args(["--model-buffer", "12", "--run-trace-buffer"])
        cmdline_args_override(config, args)
        assert config.model.buffer == 12
        assert config.run.trace_buffer is True
        assert config.model.sigma is None


class TestValidator:
    def test_schema_validator(self):
        schema = _schema()

        @validator(schema.model)
        def check(cfg):
            if cfg.buffer > 100:
                raise ValueError("buffer too large")

        config = schema()
        config.model.buffer = 500
        with pytest.raises(ValidationError, match="model: buffer too large"):
            config.validate()
        assert schema.model._validators == [check]

    def test_field_validator(self):
        schema = _schema()

        @validator(schema.model.buffer)
        def double(cfg, value):
            return value * 2

        config = schema()
        config.model.buffer = 3
        assert config.model.buffer == 6
        assert schema.model.buffer.validator is double


class TestCopyConfig:
    def test_copy(self):
        config = _schema()()
        config.model.buffer = 12
        clone = copy_config(config)
        clone.model.buffer = 30
        assert config.model.buffer == 12
        assert clone.model.buffer == 30
        assert clone.run.methods == ["SF2EL"]

    def test_copy_type(self):
        ExperimentKind = make_type(_schema(), "ExperimentKind")
        config = ExperimentKind()
        config.run.methods = ["NOGD"]
        clone = copy_config(config)
        assert isinstance(clone, ExperimentKind)
        assert clone == config
        assert clone is not config
