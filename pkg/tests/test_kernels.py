import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from oddparts import kernels
from oddparts.series import named_gf, _cache

BACKENDS = kernels.available_backends()
ids = [m.BACKEND for m in BACKENDS]


# reference implementations, written independently of both backends

def ref_convolve(a, b, n):
    return [sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b)) for k in range(n)]


def ref_mul_binomial(c, sign, e):
    return [c[k] - sign * (c[k - e] if k >= e else 0) for k in range(len(c))]


def ref_div_binomial(c, sign, e):
    out = list(c)
    for k in range(e, len(out)):
        out[k] += sign * out[k - e]
    return out


coeff = st.one_of(st.integers(-5, 5), st.integers(-(2 ** 80), 2 ** 80),
                  st.integers(2 ** 51, 2 ** 53), st.integers(-(2 ** 64), -(2 ** 62)))
vec = st.lists(coeff, min_size=1, max_size=40)


@pytest.mark.skipif(os.environ.get("ODDPARTS_NO_EXT"), reason="extension build disabled")
def test_compiled_backend_is_built():
    assert ids[0] == "cython"


def test_python_backend_always_available():
    assert ids[-1] == "python"


@pytest.mark.parametrize("backend", BACKENDS, ids=ids)
@given(vec, vec, st.integers(0, 45))
def test_convolve(backend, a, b, n):
    assert backend.convolve(list(a), list(b), n) == ref_convolve(a, b, n)


@pytest.mark.parametrize("backend", BACKENDS, ids=ids)
@given(st.sampled_from([1, -1]), st.lists(coeff, max_size=40), st.integers(1, 45))
def test_invert(backend, unit, tail, n):
    a = [unit] + tail
    t = backend.invert(list(a), n)
    assert len(t) == n
    assert ref_convolve(a, t, n) == [1] + [0] * (n - 1)


@pytest.mark.parametrize("backend", BACKENDS, ids=ids)
def test_invert_rejects_non_unit(backend):
    with pytest.raises(ZeroDivisionError):
        backend.invert([2, 1], 4)


@pytest.mark.parametrize("backend", BACKENDS, ids=ids)
@given(vec, st.sampled_from([-1, 0, 1]), st.integers(1, 12))
def test_binomial_mul_div(backend, c, sign, e):
    work = list(c)
    backend.mul_binomial(work, sign, e)
    assert work == ref_mul_binomial(c, sign, e)
    backend.div_binomial(work, sign, e)
    assert work == list(c)
    work = list(c)
    backend.div_binomial(work, sign, e)
    assert work == ref_div_binomial(c, sign, e)


@pytest.mark.parametrize("backend", BACKENDS, ids=ids)
@given(vec, vec, st.integers(0, 50), st.sampled_from([-1, 1]))
def test_add_shifted(backend, dst, src, offset, sign):
    expected = list(dst)
    for k, x in enumerate(src):
        if offset + k < len(expected):
            expected[offset + k] += sign * x
    work = list(dst)
    backend.add_shifted(work, src, offset, sign)
    assert work == expected


@pytest.mark.parametrize("backend", BACKENDS, ids=ids)
def test_fast_path_boundary(backend):
    # values at the edge of the 2**52 fast path, and just past it
    for v in (2 ** 52, 2 ** 52 + 1, -(2 ** 52) - 1, 2 ** 63, 2 ** 127):
        a = [1] + [v] * 30
        b = [v] * 31
        assert backend.convolve(a, b, 31) == ref_convolve(a, b, 31)
        t = backend.invert(list(a), 31)
        assert ref_convolve(a, t, 31) == [1] + [0] * 30


def test_backends_agree_on_named_series():
    results = []
    for backend in BACKENDS:
        with kernels.use_backend(backend):
            assert kernels.BACKEND == backend.BACKEND
            _cache.clear()
            results.append([named_gf(name, 250) for name in ("pod", "o3_sum", "ab2_lhs", "lambda_sum")])
    _cache.clear()
    assert all(r == results[0] for r in results)


def test_use_backend_restores():
    before = kernels.convolve
    with kernels.use_backend(BACKENDS[-1]):
        assert kernels.convolve is BACKENDS[-1].convolve
    assert kernels.convolve is before


def test_env_forces_pure_python():
    env = dict(os.environ, ODDPARTS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import oddparts.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
