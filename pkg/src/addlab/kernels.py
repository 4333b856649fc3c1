"""Kernel backend selection.

The compiled extension (``addlab._kernels``) is preferred; the pure-Python
mirror is used when it is missing or when ``ADDLAB_PURE=1`` is set.  Both
expose the same names with identical outputs and step counts.
"""

from __future__ import annotations

import os

if os.environ.get("ADDLAB_PURE", "") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
nontrivial_relation_flags = _impl.nontrivial_relation_flags
four_cycle_oracle = _impl.four_cycle_oracle
DenseStepper = _impl.DenseStepper
SparseHashStepper = _impl.SparseHashStepper
SparseRadixStepper = _impl.SparseRadixStepper


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` ('cython', 'python', or None)."""
    if name in (None, "", BACKEND):
        return _impl
    if name == "python":
        from . import _kernels_py

        return _kernels_py
    if name == "cython":
        from . import _kernels  # raises ImportError if not built

        return _kernels
    raise ValueError(f"unknown backend {name!r}")
