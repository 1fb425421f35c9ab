"""Select the elimination kernel backend at import time.

The compiled ``_ckernels`` extension is used when it was built; otherwise
(or when ``MACINV_PURE_PYTHON`` is set) the pure-Python module is used.
"""

import os

BACKEND = "python"

if not os.environ.get("MACINV_PURE_PYTHON"):
    try:
        from macinv._ckernels import combine, insert_vector, reduce_vector
        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from macinv._pykernels import combine, insert_vector, reduce_vector

__all__ = ["BACKEND", "combine", "insert_vector", "reduce_vector"]
