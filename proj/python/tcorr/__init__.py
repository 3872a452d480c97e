# Copyright 2026 The tcorr Authors
# SPDX-License-Identifier: Apache-2.0

"""Ancilla-assisted n-time correlation functions, linear response and NMR
pulse compilation (C++ core)."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
