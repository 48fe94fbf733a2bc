"""Search-kernel backend selection.

The compiled extension is preferred when it was built; the pure-Python
fallback implements the identical algorithm.  Set the environment variable
``PERTURBED_RAMSEY_BACKEND=python`` to force the fallback (used by the
benchmark to compare both).
"""

from __future__ import annotations

import os

from . import _pykernels

UNSAT = _pykernels.UNSAT
SAT = _pykernels.SAT
BUDGET = _pykernels.BUDGET
RED = _pykernels.RED
BLUE = _pykernels.BLUE

if os.environ.get("PERTURBED_RAMSEY_BACKEND", "").strip().lower() == "python":
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

solve_two_sided = _impl.solve_two_sided
BACKEND: str = _impl.BACKEND
