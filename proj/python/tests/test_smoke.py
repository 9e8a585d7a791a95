# Copyright 2026 The alpharing Authors
# SPDX-License-Identifier: Apache-2.0
import math
import os
import pathlib

import numpy as np
import pytest

import alpharing

SOURCE = pathlib.Path(os.environ.get("ALPHARING_SOURCE_DIR", pathlib.Path(__file__).parents[2]))


def test_kernel_origin_values():
    assert alpharing.kernel.f(0.0) == pytest.approx(-1 / (8 * math.pi), rel=1e-15)
    assert alpharing.kernel.f_prime(0.0) == pytest.approx(1 / (12 * math.pi), rel=1e-15)
    z = 3.0
    assert alpharing.kernel.f(z) == pytest.approx(((1 + z) * math.exp(-z) - 1) / (4 * math.pi * z * z), rel=1e-14)


def test_kernel_rejects_bad_input():
    with pytest.raises(ValueError):
        alpharing.kernel.f(-1.0)
    with pytest.raises(ValueError):
        alpharing.kernel.f_alpha(1.0, 0.0)


def test_bound_scan_keys():
    c = alpharing.kernel.bound_scan()
    assert c["m0"] == pytest.approx(1 / (8 * math.pi), rel=1e-12)
    assert c["argmax_m1"] > 0


def test_single_ring_axis_velocity_matches_classical():
    w, radius, alpha = 0.7, 1.0, 0.01
    cloud = alpharing.ParticleCloud([alpharing.VortexRing(radius, 0.0, w, 1.0, 32)], alpha)
    s = 2.0
    u = alpharing.velocity(cloud, np.array([[0.0, 0.0, s]]))
    dist = math.hypot(radius, s)
    assert u.shape == (1, 3)
    assert abs(u[0, 0]) < 1e-15 and abs(u[0, 1]) < 1e-15
    assert u[0, 2] == pytest.approx(-w * radius**2 / (4 * math.pi * dist**3), rel=1e-10)


def test_gradient_is_trace_free():
    rings = [alpharing.VortexRing(1.0 + 0.1 * j, 0.05 * j, 1.0 - 0.3 * j, 1e-3, 16) for j in range(4)]
    cloud = alpharing.ParticleCloud(rings, 0.1)
    g = alpharing.gradient(cloud, np.array([0.9, 0.2, 0.1]))
    assert g.shape == (3, 3)
    assert abs(np.trace(g)) <= 1e-12 * np.linalg.norm(g)


def test_advance_keeps_weights():
    cloud = alpharing.initial_cloud(str(SOURCE / "configs" / "thin_ring.json"))
    end = alpharing.advance(cloud, 0.02, 0.01)
    assert end.time == pytest.approx(0.02)
    assert [r.weight for r in end.rings] == [r.weight for r in cloud.rings]
    assert end.positions().shape == (len(cloud), 2)


def test_cli_unknown_subcommand():
    code, _, _ = alpharing.cli(["frobnicate"])
    assert code == 2


def test_cli_kernel_verify():
    code, out, _ = alpharing.cli(["kernel-verify"])
    assert code == 0
    assert out
