#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#

import pytest
from evostream.config.fields import LogLevelField, StringField


class MockConfig:
    def __init__(self):
        self._values = {}


class TestStringField:
    def test_valid(self):
        field = StringField()
        assert field.validate(MockConfig(), "swiss") == "swiss"

    def test_not_a_string(self):
        field = StringField()
        with pytest.raises(ValueError, match="expected a string"):
            field.validate(MockConfig(), 100)

    def test_min_len(self):
        field = StringField(min_len=3)
        with pytest.raises(ValueError, match="at least 3"):
            field.validate(MockConfig(), "ab")

    def test_max_len(self):
        field = StringField(max_len=3)
        with pytest.raises(ValueError, match="at most 3"):
            field.validate(MockConfig(), "abcd")

    def test_regex(self):
        field = StringField(regex=r"^[a-z]+$")
        assert field.validate(MockConfig(), "abc") == "abc"
        with pytest.raises(ValueError, match="does not match"):
            field.validate(MockConfig(), "ab1")

    def test_choice_valid(self):
        field = StringField(choices=["exact", "matching_pursuit"])
        assert field.validate(MockConfig(), "exact") == "exact"

    def test_choice_invalid(self):
        field = StringField(choices=["exact", "matching_pursuit"])
        with pytest.raises(ValueError, match="is not one of: exact, matching_pursuit"):
            field.validate(MockConfig(), "greedy")

    def test_choice_many_no_listing(self):
        field = StringField(choices=[str(i) for i in range(10)])
        with pytest.raises(ValueError) as exc:
            field.validate(MockConfig(), "x")
        assert "not an accepted value" in str(exc.value)

    def test_transform_case_lower(self):
        field = StringField(transform_case="lower")
        assert field.validate(MockConfig(), "LogIstic") == "logistic"

    def test_transform_case_upper(self):
        field = StringField(transform_case="upper")
        assert field.validate(MockConfig(), "nogd") == "NOGD"

    def test_transform_case_invalid(self):
        with pytest.raises(TypeError):
            StringField(transform_case="title")

    def test_transform_strip(self):
        field = StringField(transform_strip=True)
        assert field.validate(MockConfig(), "  swiss \t") == "swiss"

    def test_transform_strip_chars(self):
        field = StringField(transform_strip="/")
        assert field.validate(MockConfig(), "/results/") == "results"

    def test_required_empty(self):
        field = StringField(required=True)
        with pytest.raises(ValueError, match="required"):
            field.validate(MockConfig(), "")


class TestLogLevelField:
    def test_default_levels(self):
        field = LogLevelField()
        assert field.levels == ["debug", "info", "warning", "error", "critical"]

    def test_normalized(self):
        field = LogLevelField()
        assert field.validate(MockConfig(), " DEBUG ") == "debug"

    def test_invalid(self):
        field = LogLevelField()
        with pytest.raises(ValueError):
            field.validate(MockConfig(), "verbose")

    def test_custom_levels(self):
        field = LogLevelField(levels=["quiet", "loud"])
        assert field.validate(MockConfig(), "LOUD") == "loud"
