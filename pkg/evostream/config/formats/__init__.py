#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Built-in config file formats.
"""
import os
from typing import List, Tuple, Type

from ...errors import ConfigurationError
from ..core import ConfigFormat
from .ini import IniConfigFormat
from .json import JsonConfigFormat
from .yaml import IS_AVAILABLE as YAML_IS_AVAILABLE
from .yaml import YamlConfigFormat

#: Built-in config file formats.
FORMATS: List[Tuple[str, Type[ConfigFormat]]] = [
    ("json", JsonConfigFormat),
    ("ini", IniConfigFormat),
]

if YAML_IS_AVAILABLE:
    FORMATS.append(("yaml", YamlConfigFormat))

#: File suffix to format name.
SUFFIXES = {
    ".json": "json",
    ".ini": "ini",
    ".cfg": "ini",
    ".conf": "ini",
    ".yml": "yaml",
    ".yaml": "yaml",
}


def format_for_path(path: str) -> str:
    """
    :returns: the format name for a config file, chosen by suffix
    :raises ConfigurationError: unknown suffix
    """
    suffix = os.path.splitext(path)[1].lower()
    try:
        return SUFFIXES[suffix]
    except KeyError:
        raise ConfigurationError(
            "cannot infer config format of %s: expected one of %s"
            % (path, ", ".join(sorted(SUFFIXES)))
        ) from None
