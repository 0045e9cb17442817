"""Compiled and pure-python kernels must agree to roundoff."""

import os
import subprocess
import sys

import numpy as np
import pytest

from tauzak import _core_py, kernels
from tauzak.groups import FiniteAbelianGroup, Subgroup

compiled = pytest.importorskip("tauzak._core",
                               reason="compiled extension not built")


def _case():
    group = FiniteAbelianGroup((2, 8))
    lat = Subgroup(group, [(0, 2)])
    rng = np.random.default_rng(17)
    values = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
    return group, lat, values


def test_backend_is_listed():
    assert kernels.BACKEND in kernels.available_backends()
    assert "python" in kernels.available_backends()
    assert "compiled" in kernels.available_backends()


def test_dft_pair():
    group, _, values = _case()
    P = group.pairing_matrix
    a = compiled.dft_direct(values, P)
    b = _core_py.dft_direct(values, P)
    assert np.max(np.abs(a - b)) < 1e-12
    ia = compiled.idft_direct(values, P)
    ib = _core_py.idft_direct(values, P)
    assert np.max(np.abs(ia - ib)) < 1e-12


def test_gather_sum():
    _, lat, values = _case()
    idx = lat.zak_gather_indices
    a = compiled.gather_sum(values, idx)
    b = _core_py.gather_sum(values, idx)
    assert np.max(np.abs(a - b)) < 1e-12


def test_gather_phase_sum():
    _, lat, values = _case()
    idx = lat.zak_gather_indices
    phases = lat.zak_phases
    a = compiled.gather_phase_sum(values, idx, phases)
    b = _core_py.gather_phase_sum(values, idx, phases)
    assert np.max(np.abs(a - b)) < 1e-12


def test_unzak():
    group, lat, values = _case()
    idx = lat.zak_gather_indices
    phases = lat.zak_phases
    table = _core_py.gather_phase_sum(values, idx, phases)
    a = compiled.unzak(table, idx, phases, group.order)
    b = _core_py.unzak(table, idx, phases, group.order)
    assert np.max(np.abs(a - b)) < 1e-12
    assert np.max(np.abs(b - values)) < 1e-12


def test_phase_matmul():
    rng = np.random.default_rng(19)
    a = (rng.standard_normal((7, 11)) + 1j * rng.standard_normal((7, 11)))
    b = (rng.standard_normal((11, 5)) + 1j * rng.standard_normal((11, 5)))
    x = compiled.phase_matmul(np.ascontiguousarray(a), np.ascontiguousarray(b))
    y = _core_py.phase_matmul(a, b)
    assert np.max(np.abs(x - y)) < 1e-12


def test_env_override_selects_python_backend():
    env = dict(os.environ, TAUZAK_KERNELS="python")
    out = subprocess.run(
        [sys.executable, "-c", "from tauzak import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_env_override_rejects_unknown_backend():
    env = dict(os.environ, TAUZAK_KERNELS="fortran")
    out = subprocess.run(
        [sys.executable, "-c", "import tauzak.kernels"],
        capture_output=True, text=True, env=env)
    assert out.returncode != 0
    assert "TAUZAK_KERNELS" in out.stderr or "fortran" in out.stderr
