"""Pick the main-loop implementation at import time.

The compiled ``_ckernel`` is preferred; set ``EULERSTREAM_PURE=1`` to force
the pure-Python fallback.
"""
import os

from . import _pykernel

KERNELS = {"python": _pykernel.advance}

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None
else:
    KERNELS["cython"] = _ckernel.advance

if os.environ.get("EULERSTREAM_PURE", "") not in ("", "0") or "cython" not in KERNELS:
    DEFAULT_KERNEL = "python"
else:
    DEFAULT_KERNEL = "cython"


def get_kernel(name=None):
    name = name or DEFAULT_KERNEL
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel {name!r} unavailable; have {sorted(KERNELS)}") from None
