"""Kernel selection: compiled extension when importable, NumPy otherwise.

Set ``WITNESSLP_PURE=1`` to force the NumPy path (the benchmark uses this to
compare both implementations in one process).
"""

import os

if os.environ.get("WITNESSLP_PURE", "0") not in ("", "0"):
    from . import _seesaw_py as kernel

    COMPILED = False
else:
    try:
        from . import _seesaw as kernel  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from . import _seesaw_py as kernel  # type: ignore[no-redef]

        COMPILED = False


def backend_name() -> str:
    return "compiled" if COMPILED else "numpy"
