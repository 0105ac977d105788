"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``JETSCHEME_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("JETSCHEME_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

rank_mod_p = _impl.rank_mod_p
series_mul_mod_p = _impl.series_mul_mod_p

__all__ = ["BACKEND", "rank_mod_p", "series_mul_mod_p"]
