#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
String fields.
"""
import re
from typing import Any, Callable, List, Optional, Sequence, Union

from ..core import Config, Field

_CASES = {"lower": str.lower, "upper": str.upper}

#: Log level names accepted by default.
LOG_LEVELS = ("debug", "info", "warning", "error", "critical")

#: Choices are listed in the error message up to this many.
MAX_LISTED_CHOICES = 8


class StringField(Field):
    """
    Text value. Normalization runs first (strip, then case), then the checks: emptiness of a
    required value, length, pattern and choices.
    """

    storage_type = str

    def __init__(
        self,
        *,
        min_len: Optional[int] = None,
        max_len: Optional[int] = None,
        regex: Optional[str] = None,
        choices: Optional[Sequence[str]] = None,
        transform_case: Optional[str] = None,
        transform_strip: Optional[Union[bool, str]] = None,
        **kwargs: Any
    ):
        """
        :param regex: the value must match this pattern from its start
        :param choices: the only accepted values, compared after normalization
        :param transform_case: ``"lower"`` or ``"upper"``
        :param transform_strip: ``True`` strips whitespace, a string strips those characters
        """
        super().__init__(**kwargs)
        self.min_len = min_len
        self.max_len = max_len
        self.regex = re.compile(regex) if regex else None
        self.choices = list(choices) if choices else None
        self.transform_strip = transform_strip
        self._recase: Optional[Callable[[str], str]] = None
        if transform_case:
            self._recase = _CASES.get(transform_case.lower())
            if self._recase is None:
                raise TypeError("transform_case must be one of: %s" % ", ".join(_CASES))

    def _normalize(self, value: str) -> str:
        if self.transform_strip:
            chars = self.transform_strip if isinstance(self.transform_strip, str) else None
            value = value.strip(chars)
        return self._recase(value) if self._recase else value

    def _convert(self, cfg: Config, value: Any) -> str:
        if not isinstance(value, str):
            raise ValueError("expected a string, got %s" % type(value).__name__)

        value = self._normalize(value)
        if not value and self.required:
            raise ValueError("value is required")

        size = len(value)
        if self.min_len is not None and size < self.min_len:
            raise ValueError("needs at least %d characters, got %d" % (self.min_len, size))
        if self.max_len is not None and size > self.max_len:
            raise ValueError("allows at most %d characters, got %d" % (self.max_len, size))
        if self.regex is not None and self.regex.match(value) is None:
            raise ValueError("%r does not match %s" % (value, self.regex.pattern))
        if self.choices is not None and value not in self.choices:
            if len(self.choices) > MAX_LISTED_CHOICES:
                raise ValueError("%r is not an accepted value" % value)
            raise ValueError("%r is not one of: %s" % (value, ", ".join(self.choices)))
        return value


class LogLevelField(StringField):
    """
    Name of a :mod:`logging` level, stored in lower case. ``config.run.log_level.upper()`` is
    what :func:`logging.basicConfig` takes.
    """

    def __init__(self, levels: Optional[List[str]] = None, **kwargs: Any):
        """
        :param levels: accepted names, the standard levels by default
        """
        self.levels = list(levels or LOG_LEVELS)
        kwargs.setdefault("transform_case", "lower")
        kwargs.setdefault("transform_strip", True)
        super().__init__(choices=self.levels, **kwargs)
