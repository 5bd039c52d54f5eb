"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels``. Setting ``BUNKBED_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("BUNKBED_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

_active = compiled_backend or python_backend

BACKEND = _active.BACKEND
count_connections = _active.count_connections
connection_indicators = _active.connection_indicators
mc_counts = _active.mc_counts
draw_word = _active.draw_word


def available_backends():
    """Mapping of backend name to module, for tests and benchmarks."""
    found = {"python": python_backend}
    if compiled_backend is not None:
        found["cython"] = compiled_backend
    return found
