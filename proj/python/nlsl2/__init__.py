"""Finite-dimensional representations of the non-linear sl(2) algebra."""

from ._core import *  # noqa: F401,F403
from ._core import CharFunc, Error, run_cli  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
