"""Numpy implementations of the hot kernels.

Fallback backend; tauzak._core (Cython) carries the same signatures.  Each
function is pure and deterministic for fixed inputs.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def dft_direct(values, phases):
    """out[w] = sum_k values[k] * conj(phases[k, w])   (direct summation)."""
    return values @ np.conj(phases)


def idft_direct(values, phases):
    """out[k] = (1/N) * sum_w values[w] * phases[k, w]."""
    return (phases @ values) / phases.shape[1]


def gather_sum(values, idx):
    """out[r] = sum_j values[idx[r, j]]   (periodization)."""
    return values[idx].sum(axis=1)


def gather_phase_sum(values, idx, phases):
    """out[r, c] = sum_j values[idx[r, j]] * phases[j, c]   (Zak gather)."""
    return values[idx] @ phases


def unzak(zak_values, idx, phases, out_size):
    """Inverse of gather_phase_sum when idx enumerates each output index once:

    out[idx[r, j]] = (1/C) * sum_c zak_values[r, c] * conj(phases[j, c]).
    """
    contrib = zak_values @ np.conj(phases).T / phases.shape[1]
    out = np.empty(out_size, dtype=np.complex128)
    out[idx.ravel()] = contrib.ravel()
    return out


def phase_matmul(a, b):
    """Plain complex matrix product (plane-model quadrature)."""
    return a @ b
