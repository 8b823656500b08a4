#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
JSON config file format.
"""
import json

from ..core import Config, ConfigFormat


class JsonConfigFormat(ConfigFormat):
    """
    JSON configuration file format, also used for the ``config.json`` snapshot written next to
    every experiment's results.

    .. code-block:: python

        config.save("experiment.json", format="json")
        config.load("experiment.json", format="json")
    """

    def __init__(self, pretty: bool = True):
        """
        :param pretty: indent the document and sort keys
        """
        self.pretty = pretty

    def dumps(self, config: Config, tree: dict) -> bytes:
        if self.pretty:
            return json.dumps(tree, indent=2, sort_keys=True).encode()
        return json.dumps(tree).encode()

    def loads(self, config: Config, content: bytes) -> dict:
        tree = json.loads(content.decode())
        if not isinstance(tree, dict):
            raise ValueError("JSON config must be an object")
        return tree
