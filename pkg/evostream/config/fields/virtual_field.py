#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Computed field.
"""
from typing import Any, Callable, Optional

from ..core import Config, Field


class VirtualField(Field):
    """
    A value derived from the other values of its section on every read, such as
    ``schedule.total_rounds``. Nothing is stored, loaded or saved for it; assigning calls
    ``setter`` and fails when there is none.
    """

    _stored = False

    def __init__(
        self,
        getter: Callable[[Config], Any],
        setter: Optional[Callable[[Config, Any], Any]] = None,
        **kwargs: Any
    ):
        if "default" in kwargs:
            raise TypeError("a computed field has no default")
        super().__init__(**kwargs)
        self.getter = getter
        self.setter = setter

    def _read(self, cfg: Config) -> Any:
        return self.getter(cfg)

    def _write(self, cfg: Config, value: Any) -> None:
        if self.setter is None:
            raise TypeError("%s is computed and cannot be assigned" % self.path)
        self.setter(cfg, value)
