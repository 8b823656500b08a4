#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Declarative, validated configuration: schemas, fields, config objects and file formats.
"""
# ruff: noqa: F401
from .core import (
    Config,
    ConfigFormat,
    ConfigType,
    Field,
    Schema,
    ValidationError,
)
from .fields import *  # noqa: F403
from .formats import format_for_path
from .support import (
    add_schema_arguments,
    cmdline_args_override,
    copy_config,
    iter_fields,
    make_type,
    validator,
)
