#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
from unittest.mock import MagicMock

import pytest
from evostream.config.formats.json import JsonConfigFormat


class TestJsonConfigFormat:
    def test_dumps_pretty(self):
        fmt = JsonConfigFormat()
        content = fmt.dumps(MagicMock(), {"model": {"buffer": 60}, "b": 1})
        assert content == b'{\n  "b": 1,\n  "model": {\n    "buffer": 60\n  }\n}'

    def test_dumps_compact(self):
        fmt = JsonConfigFormat(pretty=False)
        assert fmt.dumps(MagicMock(), {"model": {"buffer": 60}}) == b'{"model": {"buffer": 60}}'

    def test_loads(self):
        fmt = JsonConfigFormat()
        assert fmt.loads(MagicMock(), b'{"schedule": {"p_l": 0.3}}') == {"schedule": {"p_l": 0.3}}

    def test_loads_not_object(self):
        fmt = JsonConfigFormat()
        with pytest.raises(ValueError, match="must be an object"):
            fmt.loads(MagicMock(), b"[1, 2]")
