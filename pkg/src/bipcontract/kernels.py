"""Backend selection for the enumeration kernels.

The compiled extension is used when it was built; otherwise the pure-Python
twin is imported. Setting ``BIPCONTRACT_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("BIPCONTRACT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
mono_component_count = _impl.mono_component_count
min_coloring_cost = _impl.min_coloring_cost
min_contraction_subset = _impl.min_contraction_subset
min_deletion_subset = _impl.min_deletion_subset
connected_sets = _impl.connected_sets


def available_backends():
    """Mapping of backend name to kernel module, for benchmarks and tests."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
