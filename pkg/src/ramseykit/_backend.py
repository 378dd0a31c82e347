"""Kernel backend selection.

The compiled extension is preferred when importable; set
RAMSEYKIT_KERNELS=pure to force the pure-Python fallback, or
RAMSEYKIT_KERNELS=c to require the extension (ImportError if missing).
Both backends expose identical APIs and identical observable behaviour.
"""

from __future__ import annotations

import os


def _select():
    choice = os.environ.get("RAMSEYKIT_KERNELS", "").strip().lower()
    if choice == "pure":
        from . import _kernels_py
        return _kernels_py
    if choice == "c":
        from . import _kernels_c
        return _kernels_c
    if choice:
        raise RuntimeError(f"RAMSEYKIT_KERNELS must be 'pure' or 'c', got {choice!r}")
    try:
        from . import _kernels_c
        return _kernels_c
    except ImportError:
        from . import _kernels_py
        return _kernels_py


kernels = _select()
BACKEND = kernels.BACKEND_NAME
