"""Select the elimination backend: the compiled extension when importable, else pure Python.

Set ``AKC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("AKC_PURE_PYTHON", "0") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
rref_int = _impl.rref_int
matmul_int = _impl.matmul_int
python_backend = _kernels_py
