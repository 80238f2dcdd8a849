"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Set ``EVIDIRAC_KERNELS=python`` to force the fallback.
"""

import os

from . import _kernels_py

_forced = os.environ.get("EVIDIRAC_KERNELS", "").lower()

_compiled = None
if _forced != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:
        if _forced == "cython":
            raise
        _compiled = None

_impl = _compiled if _compiled is not None else _kernels_py

BACKEND = _impl.BACKEND

# int64 kernels are only safe well below overflow; bigger inputs (from LP
# duals with large denominators) go through the arbitrary-precision path.
_SAFE = 1 << 40


def _small(v):
    return all(-_SAFE < x < _SAFE for x in v)


def dominant_word(v, cartan):
    if _impl is not _kernels_py and _small(v):
        return _impl.dominant_word(v, cartan)
    return _kernels_py.dominant_word(v, cartan)


def dominant_batch(vs, cartan):
    return _impl.dominant_batch(vs, cartan)


def apply_word(v, word, cartan):
    if _impl is not _kernels_py and _small(v):
        return _impl.apply_word(v, word, cartan)
    return _kernels_py.apply_word(v, word, cartan)


def orbit_levels(start, cartan):
    return _impl.orbit_levels(start, cartan)


def orbit_select(start, cartan, test):
    return _impl.orbit_select(start, cartan, test)


def spin_values(mu, rho_n, cartan, gram2, shift):
    return _impl.spin_values(mu, rho_n, cartan, gram2, shift)


support_argmax = _kernels_py.support_argmax


def backends():
    """Available kernel modules keyed by name (for benchmarks and tests)."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
