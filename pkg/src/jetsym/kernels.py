"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``JETSYM_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
import os

if os.environ.get("JETSYM_PURE_PYTHON"):
    from . import _pykernels as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
mono_mul = _impl.mono_mul
mono_div = _impl.mono_div
poly_add = _impl.poly_add
poly_mul = _impl.poly_mul
poly_mul_term = _impl.poly_mul_term
poly_divexact = _impl.poly_divexact
echelon = _impl.echelon
nullspace = _impl.nullspace
