#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Number fields.
"""
import math
from numbers import Real
from typing import Any, Optional, Union

from ..core import Config, Field

Number = Union[int, float]


class NumberField(Field):
    """
    Numeric value converted with ``type_cls`` and checked against optional bounds. Booleans and
    NaN are rejected.
    """

    def __init__(
        self,
        type_cls: type,
        *,
        min: Optional[Number] = None,
        max: Optional[Number] = None,
        exclusive_min: bool = False,
        **kwargs: Any
    ):
        """
        :param type_cls: ``int`` or ``float``
        :param min: lower bound, inclusive unless *exclusive_min*
        :param max: inclusive upper bound
        """
        super().__init__(**kwargs)
        self.type_cls = type_cls
        self.storage_type = type_cls
        self.min = min
        self.max = max
        self.exclusive_min = exclusive_min

    def _parse(self, value: Any) -> Number:
        if isinstance(value, bool) or not isinstance(value, (str, Real)):
            raise ValueError("expected a number, got %s" % type(value).__name__)
        try:
            return self.type_cls(value.strip() if isinstance(value, str) else value)
        except (TypeError, ValueError) as err:
            raise ValueError("%r is not a valid %s" % (value, self.type_cls.__name__)) from err

    def _convert(self, cfg: Config, value: Any) -> Number:
        number = self._parse(value)
        if math.isnan(number):
            raise ValueError("value must be a number, not NaN")

        low, high = self.min, self.max
        if low is not None and self.exclusive_min and number <= low:
            raise ValueError("value must be > %s" % low)
        if low is not None and number < low:
            raise ValueError("value must be >= %s" % low)
        if high is not None and number > high:
            raise ValueError("value must be <= %s" % high)
        return number


class IntField(NumberField):
    """
    Whole number. ``60.0`` is accepted, ``60.5`` is rejected rather than truncated.
    """

    storage_type = int

    def __init__(self, **kwargs: Any):
        super().__init__(int, **kwargs)

    def _parse(self, value: Any) -> Number:
        if isinstance(value, float) and not value.is_integer():
            raise ValueError("%r is not a whole number" % value)
        return super()._parse(value)


class FloatField(NumberField):
    storage_type = float

    def __init__(self, **kwargs: Any):
        super().__init__(float, **kwargs)


class ProbabilityField(FloatField):
    """
    A probability in ``(0, 1]``, such as the label reveal probability.
    """

    def __init__(self, **kwargs: Any):
        kwargs.setdefault("min", 0.0)
        kwargs.setdefault("max", 1.0)
        kwargs.setdefault("exclusive_min", True)
        super().__init__(**kwargs)
