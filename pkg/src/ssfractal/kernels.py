"""Backend selection for the hot kernels.

The compiled Cython module is preferred; the NumPy module is used when the
extension was not built or when ``SSFRACTAL_PURE_PYTHON`` is set to a truthy
value before import.
"""

import os

if os.environ.get("SSFRACTAL_PURE_PYTHON", "").lower() in ("1", "true", "yes"):
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        from . import _pykernels as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

cyclic_subset_counts = _impl.cyclic_subset_counts
signed_zero_coefficient = _impl.signed_zero_coefficient
subset_sums = _impl.subset_sums
subset_sum_histogram = _impl.subset_sum_histogram
weak_partition_vectors = _impl.weak_partition_vectors


def backends():
    """Return ``{name: module}`` for every importable backend."""
    from . import _pykernels

    found = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        found["cython"] = _ckernels
    return found
