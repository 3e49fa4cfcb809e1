"""Table-driven sweep kernel with a compiled fast path.

Importing this package picks the compiled extension when it built, and the
pure-Python twin otherwise.  Both expose the same functions over the same
flat index encoding, and both must produce bit-identical results; the
selection only changes speed.

``backend()`` reports which implementation is active.  ``implementations()``
returns every available one keyed by name, so tests and benchmarks can pin
a specific backend regardless of what the import chose.
"""

from __future__ import annotations

from . import _core_py
from .tables import TABLE_DIM_LIMIT, TABLE_SIZE_LIMIT, LocalRingTables, supports, tables_for

try:
    from . import _core

    _active = _core
except ImportError:
    _core = None
    _active = _core_py


def backend():
    """Name of the implementation picked at import time."""
    return _active.BACKEND


def implementations():
    """All importable kernel implementations, keyed by backend name."""
    impls = {_core_py.BACKEND: _core_py}
    if _core is not None:
        impls[_core.BACKEND] = _core
    return impls


splitmix_values = _active.splitmix_values
decompose_one = _active.decompose_one
check_clean = _active.check_clean
sweep_decompose = _active.sweep_decompose
pireg_one = _active.pireg_one
check_pireg = _active.check_pireg
sweep_pireg = _active.sweep_pireg

__all__ = [
    "TABLE_DIM_LIMIT",
    "TABLE_SIZE_LIMIT",
    "LocalRingTables",
    "backend",
    "check_clean",
    "check_pireg",
    "decompose_one",
    "implementations",
    "pireg_one",
    "splitmix_values",
    "supports",
    "sweep_decompose",
    "sweep_pireg",
    "tables_for",
]
