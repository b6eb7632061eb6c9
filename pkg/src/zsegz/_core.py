"""Compute-core selection: compiled extension when available, else pure Python.

Set ``ZSEGZ_PURE_CORE=1`` to force the pure-Python core (used by the parity
tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _core_py

if os.environ.get("ZSEGZ_PURE_CORE"):
    _impl = _core_py
else:
    try:
        from . import _core_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _core_py

IMPL = _impl.IMPL

SEARCH_EXHAUSTED = 0
SEARCH_LIMIT = 1
SEARCH_BUDGET = 2

count_mod_table = _impl.count_mod_table
count_mod_identity_batch = _impl.count_mod_identity_batch
sweep_residues = _impl.sweep_residues
search_absent = _impl.search_absent
