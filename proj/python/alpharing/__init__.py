# Copyright 2026 The alpharing Authors
# SPDX-License-Identifier: Apache-2.0
"""Lagrangian vortex-ring solver for the axisymmetric Euler-alpha equations."""

from ._core import (
    ParticleCloud,
    VortexRing,
    advance,
    cli,
    gradient,
    initial_cloud,
    kernel,
    set_worker_count,
    swirl,
    velocity,
    worker_count,
)

__all__ = [
    "ParticleCloud",
    "VortexRing",
    "advance",
    "cli",
    "gradient",
    "initial_cloud",
    "kernel",
    "set_worker_count",
    "swirl",
    "velocity",
    "worker_count",
]
