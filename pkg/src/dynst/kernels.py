"""Hot numeric kernels, compiled when available.

The compiled module is preferred; set DYNST_PURE_PYTHON=1 to force the
pure-Python fallback.
"""
import os

from dynst import _pykernels

if os.environ.get("DYNST_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from dynst import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

dijkstra = _impl.dijkstra
dreyfus_wagner = _impl.dreyfus_wagner
