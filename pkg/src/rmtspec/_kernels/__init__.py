"""Hot-kernel backend selection.

Prefers the compiled Cython extension; falls back to the NumPy
implementation when the extension is missing or ``RMTSPEC_PURE_PYTHON=1``
is set. Both expose the same functions with matching semantics.
"""

import os

if os.environ.get("RMTSPEC_PURE_PYTHON") == "1":
    from . import _pure as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pure as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND
quartic_roots_batch = _impl.quartic_roots_batch
kde_eval = _impl.kde_eval

__all__ = ["BACKEND", "quartic_roots_batch", "kde_eval"]
