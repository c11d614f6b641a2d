"""Selects the evaluation backend at import time.

The compiled extension is preferred when it imports cleanly; otherwise the
numpy fallback is used. STRICHCERT_BACKEND forces the choice:

* ``cython``  require the compiled extension (ImportError if missing)
* ``python``  force the numpy fallback
* ``auto``    the default behavior
"""

import os

_choice = os.environ.get("STRICHCERT_BACKEND", "auto").lower()

if _choice not in ("auto", "cython", "python"):
    raise ValueError(f"STRICHCERT_BACKEND must be auto, cython or python, got {_choice!r}")

if _choice == "python":
    from . import _kernels_py as _impl
elif _choice == "cython":
    from . import _kernels as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND_NAME = _impl.BACKEND_NAME

bessel_j_many = _impl.bessel_j_many
bessel_a_many = _impl.bessel_a_many
ck_integrand_many = _impl.ck_integrand_many
bessel_j_scalar = _impl.bessel_j_scalar
bessel_a_scalar = _impl.bessel_a_scalar
