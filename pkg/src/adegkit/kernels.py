"""Kernel dispatch: the compiled ``_kernels`` extension when importable, else Python.

Set ``ADEGKIT_PURE=1`` to force the Python fallback.  Both modules expose the
same functions and return identical results for identical inputs.
"""

from __future__ import annotations

import os

from . import _kernels_py as python

compiled = None
if os.environ.get("ADEGKIT_PURE") != "1":
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled = None

_active = compiled if compiled is not None else python

BACKEND: str = _active.BACKEND
gf2_rank = _active.gf2_rank
xor_cover = _active.xor_cover
char_sum = _active.char_sum
os_final_bits = _active.os_final_bits
classical_mc = _active.classical_mc

__all__ = [
    "BACKEND",
    "char_sum",
    "classical_mc",
    "compiled",
    "gf2_rank",
    "os_final_bits",
    "python",
    "xor_cover",
]
