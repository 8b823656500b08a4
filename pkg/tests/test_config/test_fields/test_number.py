#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
import numpy as np
import pytest
from evostream.config.fields import FloatField, IntField, ProbabilityField

CFG = None


class TestIntField:
    @pytest.mark.parametrize("value,expected", [("100", 100), (" 7 ", 7), (60.0, 60), (3, 3)])
    def test_converts(self, value, expected):
        assert IntField().validate(CFG, value) == expected

    def test_numpy_integer(self):
        assert IntField().validate(CFG, np.int64(12)) == 12

    @pytest.mark.parametrize("value", ["many", "1.5", 60.5, True, [], b"3"])
    def test_rejects(self, value):
        with pytest.raises(ValueError):
            IntField().validate(CFG, value)

    def test_bounds_inclusive(self):
        field = IntField(min=5, max=10)
        assert field.validate(CFG, "5") == 5
        assert field.validate(CFG, 10) == 10

    def test_below_min(self):
        with pytest.raises(ValueError, match="value must be >= 5"):
            IntField(min=5).validate(CFG, 4)

    def test_above_max(self):
        with pytest.raises(ValueError, match="value must be <= 10"):
            IntField(max=10).validate(CFG, "11")

    def test_whole_number_message(self):
        with pytest.raises(ValueError, match="not a whole number"):
            IntField().validate(CFG, 2.5)


class TestFloatField:
    def test_converts(self):
        assert FloatField().validate(CFG, " 0.25 ") == 0.25
        assert FloatField().validate(CFG, 2) == 2.0

    def test_not_a_number(self):
        with pytest.raises(ValueError, match="not a valid float"):
            FloatField().validate(CFG, "wide")

    def test_nan(self):
        with pytest.raises(ValueError, match="NaN"):
            FloatField().validate(CFG, "nan")

    def test_exclusive_min(self):
        field = FloatField(min=0, exclusive_min=True)
        with pytest.raises(ValueError, match="> 0"):
            field.validate(CFG, 0.0)
        assert field.validate(CFG, 1e-9) == 1e-9

    def test_none_not_required(self):
        assert FloatField(min=0, exclusive_min=True).validate(CFG, None) is None

    def test_none_required(self):
        with pytest.raises(ValueError, match="required"):
            FloatField(required=True).validate(CFG, None)


class TestProbabilityField:
    @pytest.mark.parametrize("value", [1e-6, 0.3, "0.5", 1])
    def test_valid(self, value):
        assert ProbabilityField().validate(CFG, value) == float(value)

    @pytest.mark.parametrize("value", [0, -0.1, 1.01, "2"])
    def test_invalid(self, value):
        with pytest.raises(ValueError):
            ProbabilityField().validate(CFG, value)
