#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#

from typing import List

import pytest
from evostream.config.core import Config, Schema
from evostream.config.fields import IntField, ListField, StringField


class MockConfig:
    def __init__(self):
        self._values = {}
        self._path = ""


class TestListField:
    def test_list(self):
        field = ListField()
        assert field.validate(MockConfig(), [1, "a"]) == [1, "a"]

    def test_tuple(self):
        field = ListField()
        assert field.validate(MockConfig(), (1, 2)) == [1, 2]

    def test_comma_string(self):
        field = ListField(StringField())
        assert field.validate(MockConfig(), "SF2EL, NOGD_MR,,") == ["SF2EL", "NOGD_MR"]

    def test_item_conversion(self):
        field = ListField(IntField())
        assert field.validate(MockConfig(), ["10", 20, "40"]) == [10, 20, 40]

    def test_item_error_index(self):
        field = ListField(IntField(min=1))
        with pytest.raises(ValueError, match="item 1: value must be >= 1"):
            field.validate(MockConfig(), [10, 0])

    def test_not_a_list(self):
        field = ListField()
        with pytest.raises(ValueError, match="not a list"):
            field.validate(MockConfig(), 100)

    def test_required_empty(self):
        field = ListField(required=True)
        with pytest.raises(ValueError, match="required"):
            field.validate(MockConfig(), [])

    def test_storage_type(self):
        field = ListField(IntField())
        assert field.storage_type == List[int]

    def test_default_validated(self):
        field = ListField(IntField(), key="sizes", default=lambda: ["1", "2"])
        assert field._initial(MockConfig()) == [1, 2]

    def test_to_basic(self):
        field = ListField(IntField())
        assert field.to_basic(MockConfig(), [1, 2]) == [1, 2]

    def test_to_basic_none(self):
        field = ListField(IntField())
        assert field.to_basic(MockConfig(), None) is None

    def test_default_is_copied(self):
        schema = Schema()
        schema.methods = ListField(StringField(), default=lambda: ["SF2EL"])
        first = schema()
        second = schema()
        first.methods.append("NOGD")
        assert second.methods == ["SF2EL"]
        assert isinstance(first, Config)
