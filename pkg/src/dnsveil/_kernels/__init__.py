"""Kernel backend selection.

The compiled extension (`_ck`, built from Cython) and the numpy fallback
(`pyk`) implement the same two kernels with identical semantics:

    byte_entropy(data) -> float
    build_tree(X, y, n_classes, max_features, seed) -> node arrays

The compiled backend is preferred when importable.  Set the environment
variable DNSVEIL_PURE_PYTHON=1 to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("DNSVEIL_PURE_PYTHON", "") not in ("", "0"):
    from . import pyk as _impl
else:
    try:
        from . import _ck as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pyk as _impl

BACKEND = _impl.BACKEND
byte_entropy = _impl.byte_entropy
build_tree = _impl.build_tree
