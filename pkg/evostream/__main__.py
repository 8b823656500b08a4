#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
import sys

from .cli import main

sys.exit(main())
