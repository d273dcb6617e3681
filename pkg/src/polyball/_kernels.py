"""Kernel backend selection: compiled extension when available, NumPy otherwise.

Set POLYBALL_BACKEND=python to force the fallback or POLYBALL_BACKEND=compiled
to require the extension (an ImportError then propagates).
"""

import os

_requested = os.environ.get("POLYBALL_BACKEND", "auto").strip().lower()

if _requested in ("auto", "", "compiled", "c"):
    try:
        from . import _kernels_c as _impl

        BACKEND = "compiled"
    except ImportError:
        if _requested in ("compiled", "c"):
            raise
        from . import _kernels_py as _impl

        BACKEND = "python"
elif _requested in ("python", "py", "numpy"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    raise ValueError(
        f"unrecognized POLYBALL_BACKEND value {_requested!r}; "
        "use 'auto', 'compiled' or 'python'"
    )

weighted_kernel_sum = _impl.weighted_kernel_sum


def backend_name():
    """Which kernel implementation this process is using."""
    return BACKEND
