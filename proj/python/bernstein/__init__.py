"""Smooth majorants of weights, zero perturbation of entire functions and
criterion sums for weighted polynomial approximation."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
