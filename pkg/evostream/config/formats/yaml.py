#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
YAML config file format, registered only when PyYAML is installed (``poetry install --with
yaml``).

.. code-block:: yaml

    schedule:
      t1: 1000
      p_l: 0.3
    run:
      methods: [SF2EL, NOGD_MR]
"""
from typing import Any, Optional

try:
    import yaml
except ImportError:  # pragma: no cover
    IS_AVAILABLE = False
else:
    IS_AVAILABLE = True

from ..core import Config, ConfigFormat


class YamlConfigFormat(ConfigFormat):
    """
    Reads and writes the value tree with ``yaml.safe_load`` / ``yaml.safe_dump``.
    """

    def __init__(self, root_key: Optional[str] = None):
        """
        :param root_key: nest the whole tree under this top-level key, so one YAML file can hold
            other documents next to the experiment settings
        """
        if not IS_AVAILABLE:
            raise TypeError("the yaml config format needs PyYAML installed")
        self.root_key = root_key

    def dumps(self, config: Config, tree: dict) -> bytes:
        document: Any = {self.root_key: tree} if self.root_key else tree
        return yaml.safe_dump(document, default_flow_style=False).encode()

    def loads(self, config: Config, content: bytes) -> dict:
        document = yaml.safe_load(content.decode()) or {}
        if not isinstance(document, dict):
            raise ValueError("YAML config must be a mapping")
        if self.root_key:
            return document.get(self.root_key, document)
        return document
