"""Select the compiled kernels when available, else the pure-Python ones.

Set ``ZDEEP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

kernels = _fallback
if not os.environ.get("ZDEEP_PURE_PYTHON"):
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        kernels = _fallback

BACKEND = kernels.BACKEND
