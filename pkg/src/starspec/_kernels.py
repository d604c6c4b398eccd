"""Backend selection for the canonical labelling kernel.

The compiled extension is used when it imports; ``STARSPEC_PURE=1`` forces
the pure-Python fallback.  Both expose ``refine`` and ``canonical_labelling``.
"""

import os

from . import _canon as _py

BACKEND = "python"
_ext = None
if os.environ.get("STARSPEC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _canon_ext as _ext
        BACKEND = "compiled"
    except ImportError:  # extension not built
        _ext = None


def refine(rows, cells):
    if _ext is not None and len(rows) <= 64:
        return _ext.refine(rows, cells)
    return _py.refine(rows, cells)


def canonical_labelling(rows, cells=None):
    if _ext is not None and len(rows) <= 64:
        return _ext.canonical_labelling(rows, cells)
    return _py.canonical_labelling(rows, cells)
