#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
INI config file format.
"""
import configparser
import io
from typing import Any, Dict

from ..core import Config, ConfigFormat


class IniConfigFormat(ConfigFormat):
    """
    ``key = value`` sections, one section per nested schema. Section names are dotted schema
    paths and values stay strings until the fields convert them:

    .. code-block:: ini

        [schedule]
        t1 = 1000
        p_l = 0.3

        [model]
        buffer = 60
        loss = logistic

        [run]
        methods = SF2EL, NOGD_MR

    Keys in the ``DEFAULT`` section belong to the top level. Lists are written comma-separated
    and unset values are omitted.
    """

    def dumps(self, config: Config, tree: dict) -> bytes:
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str  # type: ignore[assignment]
        self._flatten(parser, "", tree)

        out = io.StringIO()
        parser.write(out)
        return out.getvalue().encode()

    def _flatten(self, parser: configparser.ConfigParser, section: str, tree: dict) -> None:
        scalars: Dict[str, str] = {}
        for key, value in tree.items():
            if isinstance(value, dict):
                self._flatten(parser, section + "." + key if section else key, value)
            elif value is not None:
                scalars[key] = self._format_value(value)

        if not scalars:
            return
        if not section:
            parser["DEFAULT"].update(scalars)
            return
        if not parser.has_section(section):
            parser.add_section(section)
        parser[section].update(scalars)

    @staticmethod
    def _format_value(value: Any) -> str:
        if isinstance(value, (list, tuple)):
            return ", ".join(str(item) for item in value)
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    def loads(self, config: Config, content: bytes) -> dict:
        parser = configparser.ConfigParser(interpolation=None, default_section="DEFAULT")
        parser.optionxform = str  # type: ignore[assignment]
        try:
            parser.read_string(content.decode())
        except configparser.Error as err:
            raise ValueError("invalid INI config: %s" % err) from err

        tree: Dict[str, Any] = dict(parser.defaults())
        defaults = set(parser.defaults())
        for section in parser.sections():
            node = tree
            for part in section.split("."):
                node = node.setdefault(part, {})
            for key, value in parser.items(section):
                if key not in defaults:
                    node[key] = value
        return tree
