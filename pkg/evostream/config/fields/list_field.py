#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
List field.
"""
from typing import Any, List, Optional, Sequence

from ..core import Config, Field


def _split(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


class ListField(Field):
    """
    A list of ``field`` values. A comma-separated string also works, so INI files, environment
    variables and ``--set-`` flags can carry lists: ``methods = SF2EL, NOGD_MR``. A required list
    must not be empty.
    """

    storage_type = List

    def __init__(self, field: Optional[Field] = None, **kwargs: Any):
        """
        :param field: validates each item, items are kept as given without it
        """
        super().__init__(**kwargs)
        self.field = field
        if field is not None:
            self.storage_type = List[field.storage_type]  # type: ignore

    def _initial(self, cfg: Config) -> Any:
        value = super()._initial(cfg)
        return self._convert(cfg, value) if isinstance(value, (list, tuple)) else value

    def _item(self, cfg: Config, index: int, item: Any) -> Any:
        if self.field is None:
            return item
        try:
            return self.field.validate(cfg, item)
        except ValueError as err:
            raise ValueError("item %d: %s" % (index, err)) from err

    def _convert(self, cfg: Config, value: Any) -> list:
        items: Sequence = _split(value) if isinstance(value, str) else value
        if not isinstance(items, (list, tuple)):
            raise ValueError("value is not a list")
        if not items and self.required:
            raise ValueError("value is required")
        return [self._item(cfg, index, item) for index, item in enumerate(items)]

    def to_basic(self, cfg: Config, value: Optional[list]) -> Optional[list]:
        if value is None or self.field is None:
            return None if value is None else list(value)
        field = self.field
        return [field.to_basic(cfg, item) for item in value]

    def from_basic(self, cfg: Config, value: Any) -> Any:
        if self.field is not None and isinstance(value, (list, tuple)):
            field = self.field
            return [field.from_basic(cfg, item) for item in value]
        return value
