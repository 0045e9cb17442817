"""Kernel backend selection.

The compiled extension (tauzak._core) is preferred when importable; the numpy
fallback (tauzak._core_py) is always available.  Set TAUZAK_KERNELS=python to
force the fallback or TAUZAK_KERNELS=compiled to require the extension.  Both
backends are deterministic; they may differ by floating-point roundoff only
(the test suite bounds the difference at 1e-12).
"""

from __future__ import annotations

import os

from tauzak import _core_py

_requested = os.environ.get("TAUZAK_KERNELS", "auto").strip().lower()

if _requested in ("auto", ""):
    try:
        from tauzak import _core as _impl
    except ImportError:
        _impl = _core_py
elif _requested in ("compiled", "c"):
    from tauzak import _core as _impl
elif _requested in ("python", "py"):
    _impl = _core_py
else:
    raise ImportError(f"unknown TAUZAK_KERNELS value {_requested!r}")

BACKEND = _impl.BACKEND_NAME

dft_direct = _impl.dft_direct
idft_direct = _impl.idft_direct
gather_sum = _impl.gather_sum
gather_phase_sum = _impl.gather_phase_sum
unzak = _impl.unzak
phase_matmul = _impl.phase_matmul


def available_backends():
    """Names of the importable backends (for tests and the benchmark)."""
    names = [_core_py.BACKEND_NAME]
    try:
        from tauzak import _core

        names.insert(0, _core.BACKEND_NAME)
    except ImportError:
        pass
    return names
