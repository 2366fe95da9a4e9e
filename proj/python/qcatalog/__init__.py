"""Finite-dimensional quantum prediction engine (Python bindings)."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, PRNG  # noqa: F401
