"""Select the compiled kernels when available, else the pure-Python ones.

Set ``SPIDERSQ_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("SPIDERSQ_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # pragma: no cover - depends on the build
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
sat_many = _impl.sat_many
multiset_rank = _impl.multiset_rank
interpretation_ranks = _impl.interpretation_ranks
