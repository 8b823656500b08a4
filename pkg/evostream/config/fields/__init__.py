#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Configuration fields.
"""
# ruff: noqa: F401

from .bool_field import BoolField
from .list_field import ListField
from .number_field import FloatField, IntField, NumberField, ProbabilityField
from .string_field import LogLevelField, StringField
from .virtual_field import VirtualField

__all__ = (
    "BoolField",
    "FloatField",
    "IntField",
    "ListField",
    "LogLevelField",
    "NumberField",
    "ProbabilityField",
    "StringField",
    "VirtualField",
)
