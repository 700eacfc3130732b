"""Backend selection for the series kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used.  Setting ``ODDPARTS_PURE_PYTHON=1``
forces the fallback.  Both backends are exercised by the test suite.
"""

import contextlib
import os

from . import _pykernels as python_backend

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("ODDPARTS_PURE_PYTHON", "") in ("", "0"):
    _active = compiled_backend
else:
    _active = python_backend

BACKEND = _active.BACKEND
mul_binomial = _active.mul_binomial
div_binomial = _active.div_binomial
convolve = _active.convolve
invert = _active.invert
add_shifted = _active.add_shifted


def available_backends():
    """Names of the importable kernel modules, fastest first."""
    out = []
    if compiled_backend is not None:
        out.append(compiled_backend)
    out.append(python_backend)
    return out


@contextlib.contextmanager
def use_backend(module):
    """Temporarily route every kernel call through ``module``.

    Rebinds module globals, so it is meant for benchmarks and tests, not for
    use while other threads are computing series.
    """
    global BACKEND, mul_binomial, div_binomial, convolve, invert, add_shifted
    saved = BACKEND, mul_binomial, div_binomial, convolve, invert, add_shifted
    BACKEND = module.BACKEND
    mul_binomial = module.mul_binomial
    div_binomial = module.div_binomial
    convolve = module.convolve
    invert = module.invert
    add_shifted = module.add_shifted
    try:
        yield module
    finally:
        BACKEND, mul_binomial, div_binomial, convolve, invert, add_shifted = saved
