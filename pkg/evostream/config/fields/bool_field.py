#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Boolean field.
"""
from typing import Any

from ..core import Config, Field


class BoolField(Field):
    """
    On/off switch. Besides booleans it takes numbers (zero is false) and the spellings below, in
    any case, so ``EVOSTREAM_RUN_TRACE_BUFFER=yes`` works.
    """

    storage_type = bool

    TRUE_VALUES = ("t", "true", "1", "on", "yes", "y")
    FALSE_VALUES = ("f", "false", "0", "off", "no", "n")

    def _convert(self, cfg: Config, value: Any) -> bool:
        if isinstance(value, (bool, int, float)):
            return bool(value)
        word = value.strip().lower() if isinstance(value, str) else None
        if word in self.TRUE_VALUES:
            return True
        if word in self.FALSE_VALUES:
            return False
        raise ValueError("expected a boolean such as true/false or yes/no, got %r" % (value,))
