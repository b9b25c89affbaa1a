"""Kernel backend selection: compiled extension when available, numpy fallback.

Set WEIL_MASS_BACKEND=python to force the fallback (used by the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("WEIL_MASS_BACKEND", "").lower() in ("py", "python", "numpy"):
    from . import _sp4kernel_py as impl
else:
    try:
        from . import _sp4kernel as impl  # type: ignore[no-redef]
    except ImportError:
        from . import _sp4kernel_py as impl  # type: ignore[no-redef]

BACKEND: str = impl.BACKEND

bfs_closure = impl.bfs_closure
charpoly_histogram = impl.charpoly_histogram
count_in_fiber = impl.count_in_fiber
find_in_fiber = impl.find_in_fiber
count_commuting = impl.count_commuting
width_for = impl.width_for
