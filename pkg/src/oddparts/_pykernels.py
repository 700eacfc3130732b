"""Pure-Python series kernels.

Every routine works on plain ``list`` objects of Python ints whose length is
the truncation order plus one.  The compiled module ``_ckernels`` exposes the
same functions with the same semantics; ``oddparts.kernels`` picks one at
import time.
"""

BACKEND = "python"


def mul_binomial(c, sign, e):
    """In place: c <- c * (1 - sign*q**e), for e >= 1 and sign in {-1, 0, 1}."""
    if sign == 0:
        return
    n = len(c)
    if sign > 0:
        for k in range(n - 1, e - 1, -1):
            c[k] -= c[k - e]
    else:
        for k in range(n - 1, e - 1, -1):
            c[k] += c[k - e]


def div_binomial(c, sign, e):
    """In place: c <- c / (1 - sign*q**e), for e >= 1 and sign in {-1, 0, 1}."""
    if sign == 0:
        return
    n = len(c)
    if sign > 0:
        for k in range(e, n):
            c[k] += c[k - e]
    else:
        for k in range(e, n):
            c[k] -= c[k - e]


def convolve(a, b, n):
    """Cauchy product of a and b truncated to n coefficients."""
    out = [0] * n
    nb = min(len(b), n)
    for i in range(min(len(a), n)):
        x = a[i]
        if not x:
            continue
        for j in range(min(nb, n - i)):
            out[i + j] += x * b[j]
    return out


def invert(a, n):
    """Reciprocal of a (constant term must be +1 or -1) to n coefficients."""
    a0 = a[0]
    if a0 != 1 and a0 != -1:
        raise ZeroDivisionError("constant term %r is not a unit" % (a0,))
    support = [j for j in range(1, min(len(a), n)) if a[j]]
    t = [0] * n
    t[0] = a0
    for k in range(1, n):
        acc = 0
        for j in support:
            if j > k:
                break
            acc += a[j] * t[k - j]
        t[k] = -a0 * acc
    return t


def add_shifted(dst, src, offset, sign):
    """In place: dst[offset + k] += sign*src[k] for every k that fits."""
    n = min(len(src), len(dst) - offset)
    if sign > 0:
        for k in range(n):
            dst[offset + k] += src[k]
    else:
        for k in range(n):
            dst[offset + k] -= src[k]
