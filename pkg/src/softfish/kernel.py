"""Bending-kernel backend selector.

Prefers the compiled extension; falls back to the pure-Python module when
the extension is absent or SOFTFISH_PURE_PY is set in the environment.
Both backends are bit-identical (see tests/test_kernel.py).
"""

import os

if os.environ.get("SOFTFISH_PURE_PY"):
    from . import _core_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl

        BACKEND = "cython"
    except ImportError:
        from . import _core_py as _impl

        BACKEND = "python"

bend_energy = _impl.bend_energy
bend_moment = _impl.bend_moment
bend_stiffness = _impl.bend_stiffness
solve_kappa = _impl.solve_kappa
