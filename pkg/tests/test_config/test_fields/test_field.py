#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
import os
from unittest.mock import MagicMock, patch

import pytest
from evostream.config.core import Field, Schema, ValidationError
from evostream.config.fields import IntField


class MockConfig:
    def __init__(self):
        self._values = {}
        self._path = ""


class TestField:
    def test_name_falls_back_to_key(self):
        field = Field(key="buffer")
        assert field.name == "buffer"
        assert Field(key="buffer", name="Buffer").name == "Buffer"

    def test_default_value(self):
        assert Field(default=60).default == 60

    def test_default_callable(self):
        assert Field(default=lambda: [1]).default == [1]

    def test_required(self):
        with pytest.raises(ValueError, match="value is required"):
            Field(required=True).validate(MockConfig(), None)

    def test_none_not_required(self):
        assert Field().validate(MockConfig(), None) is None

    def test_validator_hook(self):
        hook = MagicMock(return_value=42)
        cfg = MockConfig()
        field = Field(validator=hook)
        assert field.validate(cfg, 1) == 42
        hook.assert_called_once_with(cfg, 1)

    def test_short_help_first_paragraph(self):
        field = Field(help="\n first paragraph\n\nsecond paragraph\n")
        assert field.short_help == "first paragraph"

    def test_short_help_description(self):
        assert Field(description="one line").short_help == "one line"

    def test_initial_is_default(self):
        assert Field(key="buffer", default=60)._initial(MockConfig()) == 60

    def test_write(self):
        cfg = MockConfig()
        Field(key="buffer")._write(cfg, 40)
        assert cfg._values == {"buffer": 40}

    def test_path(self):
        schema = Schema()
        field = schema.model.buffer = IntField()
        assert field.path == "model.buffer"

    def test_from_basic_passthrough(self):
        assert Field().from_basic(MockConfig(), "60") == "60"


class TestFieldEnvironment:
    def test_env_name_from_prefix(self):
        schema = Schema(env="EVOSTREAM")
        field = schema.model.buffer = IntField()
        assert field.env == "EVOSTREAM_MODEL_BUFFER"

    def test_env_disabled(self):
        schema = Schema(env="EVOSTREAM")
        field = schema.model.buffer = IntField(env=False)
        assert field.env is False

    def test_env_explicit_name(self):
        schema = Schema(env="EVOSTREAM")
        field = schema.model.buffer = IntField(env="BUFFER_SIZE")
        assert field.env == "BUFFER_SIZE"

    def test_env_true_without_prefix(self):
        schema = Schema()
        field = schema.buffer = IntField(env=True)
        assert field.env == "BUFFER"

    def test_no_prefix_no_env(self):
        schema = Schema()
        field = schema.buffer = IntField()
        assert field.env is None

    @patch.dict(os.environ, {"EVOSTREAM_MODEL_BUFFER": "25"})
    def test_env_value_used(self):
        schema = Schema(env="EVOSTREAM")
        schema.model.buffer = IntField(default=60)
        assert schema().model.buffer == 25

    @patch.dict(os.environ, {"EVOSTREAM_MODEL_BUFFER": ""})
    def test_empty_env_value_ignored(self):
        schema = Schema(env="EVOSTREAM")
        schema.model.buffer = IntField(default=60)
        assert schema().model.buffer == 60

    @patch.dict(os.environ, {"EVOSTREAM_MODEL_BUFFER": "many"})
    def test_env_value_invalid(self):
        schema = Schema(env="EVOSTREAM")
        schema.model.buffer = IntField(default=60)
        with pytest.raises(ValidationError, match="model.buffer"):
            schema()
