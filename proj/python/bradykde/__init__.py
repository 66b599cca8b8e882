"""Kernel density estimation and conformal prediction sets for bradycardia
onset detection.  All functionality lives in the compiled core module."""

from ._core import *  # noqa: F401,F403
