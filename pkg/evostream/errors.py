#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Exception hierarchy. Every error raised by evostream derives from :class:`EvoStreamError` and
carries the process exit code the command line interface reports for it.
"""
from typing import Any, Dict, Optional


class EvoStreamError(Exception):
    """
    Base class for all evostream errors.
    """

    #: exit code reported by the command line interface
    exit_code: int = 1


class ConfigurationError(EvoStreamError, ValueError):
    """
    An invalid parameter or an inconsistent combination of parameters.
    """

    exit_code = 2


class InputError(EvoStreamError, ValueError):
    """
    Malformed or inconsistent input data: dimension mismatches, unparsable files, too few rows.
    """

    exit_code = 3


class NumericalError(EvoStreamError, ArithmeticError):
    """
    A numerical failure that regularization could not prevent.
    """

    exit_code = 4

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        """
        :param message: error message
        :param diagnostics: values that help to reproduce the failure (condition numbers,
            offending inputs)
        """
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})

    def __str__(self):
        msg = super().__str__()
        if self.diagnostics:
            details = ", ".join("%s=%s" % item for item in sorted(self.diagnostics.items()))
            msg += " [%s]" % details
        return msg


class InternalError(EvoStreamError, RuntimeError):
    """
    A broken internal invariant. This indicates a bug rather than bad input.
    """


def exit_code_for(exc: BaseException) -> int:
    """
    :returns: the exit code for an exception, ``1`` for anything that is not an evostream error
    """
    if isinstance(exc, EvoStreamError):
        return exc.exit_code
    return 1
