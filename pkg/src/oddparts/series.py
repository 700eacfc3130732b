"""Truncated formal power series in q with exact integer coefficients.

Series are immutable and carry their truncation order N (coefficients of
q**0 .. q**N).  Binary operations truncate to the smaller order.  The only
division is by series whose constant term is +1 or -1, so coefficients stay
integers without rationals.

The hot loops live in :mod:`oddparts.kernels`.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

from . import kernels
from .partitions import Family


class NotInvertibleError(ZeroDivisionError):
    """Constant term of a divisor is not a unit."""


class TruncationError(IndexError):
    """A coefficient beyond the truncation order was requested."""


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                "expected %d coefficients for order %d, got %d"
                % (self.order + 1, self.order, len(self.coeffs))
            )

    # constructors
    @classmethod
    def from_coeffs(cls, coeffs, order=None):
        """Build from a coefficient list, zero-padding or cutting to ``order``."""
        coeffs = [int(c) for c in coeffs]
        if order is None:
            order = max(len(coeffs) - 1, 0)
        coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        return cls(order, tuple(coeffs))

    @classmethod
    def constant(cls, value, order):
        return cls(order, (int(value),) + (0,) * order)

    @classmethod
    def one(cls, order):
        return cls.constant(1, order)

    @classmethod
    def zero(cls, order):
        return cls.constant(0, order)

    @classmethod
    def monomial(cls, coeff, exp, order):
        c = [0] * (order + 1)
        if exp <= order:
            c[exp] = int(coeff)
        return cls(order, tuple(c))

    # arithmetic
    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.constant(other, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.constant(other, self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncatedSeries(self.order, tuple(other * c for c in self.coeffs))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def shift(self, d):
        """Multiply by q**d (d >= 0), keeping the order."""
        if d < 0:
            raise ValueError("shift must be nonnegative")
        c = ((0,) * d + self.coeffs)[: self.order + 1]
        return TruncatedSeries(self.order, c)

    def truncate(self, order):
        if order > self.order:
            raise TruncationError("cannot raise order %d to %d" % (self.order, order))
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def __getitem__(self, n):
        return coefficient(self, n)

    def __len__(self):
        return self.order + 1

    def to_json(self):
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["order"]), tuple(int(c) for c in data["coeffs"]))


def series_add(s1, s2):
    n = min(s1.order, s2.order)
    return TruncatedSeries(n, tuple(a + b for a, b in zip(s1.coeffs[: n + 1], s2.coeffs)))


def series_mul(s1, s2):
    n = min(s1.order, s2.order)
    out = kernels.convolve(list(s1.coeffs[: n + 1]), list(s2.coeffs[: n + 1]), n + 1)
    return TruncatedSeries(n, tuple(out))


def series_invert(s):
    c0 = s.coeffs[0]
    if c0 not in (1, -1):
        raise NotInvertibleError("constant term %d is not +1 or -1" % c0)
    return TruncatedSeries(s.order, tuple(kernels.invert(list(s.coeffs), s.order + 1)))


def coefficient(s, n):
    """Coefficient of q**n; never silently zero beyond the truncation."""
    if n < 0:
        raise ValueError("negative index %d" % n)
    if n > s.order:
        raise TruncationError("q^%d is beyond truncation order %d" % (n, s.order))
    return s.coeffs[n]


# -- q-Pochhammer symbols -----------------------------------------------------


@dataclass(frozen=True)
class Affine:
    """Length ``slope*i + offset`` in a summation index i."""

    slope: int
    offset: int

    def at(self, i):
        return self.slope * i + self.offset


INFINITE = None


@dataclass(frozen=True)
class PochhammerSpec:
    """``(sign*q**a_exp; q**step)_length``.

    ``length`` is an int, an :class:`Affine` in the summation index, or
    ``INFINITE`` (None).  ``sign=0`` denotes the zero monomial, for which the
    product is identically 1.
    """

    sign: int
    a_exp: int
    step: int
    length: Union[int, Affine, None] = INFINITE

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if self.a_exp < 0:
            raise ValueError("a_exp must be nonnegative")
        if self.step < 1:
            raise ValueError("step must be >= 1")
        if isinstance(self.length, int) and self.length < 0:
            raise ValueError("negative length %d" % self.length)

    def evaluated_length(self, index=None):
        """Concrete length at ``index``; None for an infinite product."""
        if self.length is INFINITE:
            return None
        if isinstance(self.length, Affine):
            if index is None:
                raise ValueError("affine length needs a summation index")
            k = self.length.at(index)
        else:
            k = self.length
        if k < 0:
            raise ValueError("length evaluates to %d < 0" % k)
        return k

    def exponents(self, order, index=None):
        """Exponents e_j = a_exp + step*j of the factors that matter below ``order``."""
        k = self.evaluated_length(index)
        stop = (order - self.a_exp) // self.step + 1 if self.a_exp <= order else 0
        if k is not None:
            stop = min(stop, k)
        return range(self.a_exp, self.a_exp + self.step * max(stop, 0), self.step)


def poch(sign, a_exp, step, length=INFINITE):
    return PochhammerSpec(sign, a_exp, step, length)


def _apply_factors(c, spec, index, divide):
    """Multiply (or divide) the list c in place by the factors of spec."""
    order = len(c) - 1
    if spec.sign == 0:
        return
    for e in spec.exponents(order, index):
        if e == 0:
            # constant factor (1 - sign): 0 or 2
            k = 1 - spec.sign
            if divide:
                raise NotInvertibleError("factor (1 - %d) is not a unit" % spec.sign)
            for t in range(len(c)):
                c[t] *= k
            continue
        if divide:
            kernels.div_binomial(c, spec.sign, e)
        else:
            kernels.mul_binomial(c, spec.sign, e)


def pochhammer(spec, index=None, order=0):
    """Expand ``spec`` as a series truncated at ``order``.

    An infinite product keeps factor j iff a_exp + step*j <= order; the rest
    are 1 modulo q**(order+1).
    """
    spec.evaluated_length(index)  # validates affine/negative lengths up front
    c = [1] + [0] * order
    _apply_factors(c, spec, index, divide=False)
    return TruncatedSeries(order, tuple(c))


def pochhammer_ratio(numerator, denominator, order, index=None):
    """Product of numerator Pochhammers over product of denominator ones.

    Equivalent to ``series_mul(prod(num), series_invert(prod(den)))`` but
    divides factor by factor, which is linear per factor instead of quadratic.
    """
    c = [1] + [0] * order
    for spec in numerator:
        _apply_factors(c, spec, index, divide=False)
    for spec in denominator:
        _apply_factors(c, spec, index, divide=True)
    return TruncatedSeries(order, tuple(c))


# -- sums of ratio terms --------------------------------------------------------


@dataclass(frozen=True)
class TermSpec:
    """``sum_{i>=0} z_sign**i * num(i)/den(i) * q**(step*i + offset) + constant_shift``."""

    numerator: tuple = ()
    denominator: tuple = ()
    step: int = 1
    offset: int = 0
    constant_shift: int = 0
    z_sign: int = 1

    def __post_init__(self):
        if self.step < 1:
            raise ValueError("monomial step must be >= 1 so the sum converges formally")
        if self.offset < 0:
            raise ValueError("monomial offset must be nonnegative")
        if self.z_sign not in (-1, 1):
            raise ValueError("z_sign must be +1 or -1")
        for spec in self.numerator + self.denominator:
            if isinstance(spec.length, Affine) and (spec.length.slope < 0 or spec.length.offset < 0):
                raise ValueError("affine lengths must be nondecreasing and start >= 0")


def sum_ratio_terms(t, order):
    """Partial sum of ``t`` over every index i with step*i + offset <= order.

    Term i+1 differs from term i only by the extra factors that affine
    lengths gain, so a running product is carried forward and cut down to the
    precision the remaining terms still need.
    """
    total = [0] * (order + 1)
    top = order - t.offset
    if top >= 0:
        run = [1] + [0] * top
        for spec in t.numerator:
            _apply_factors(run, spec, 0, divide=False)
        for spec in t.denominator:
            _apply_factors(run, spec, 0, divide=True)
        i = 0
        while True:
            base = t.step * i + t.offset
            sgn = 1 if t.z_sign > 0 or i % 2 == 0 else -1
            kernels.add_shifted(total, run, base, sgn)
            i += 1
            top = order - (t.step * i + t.offset)
            if top < 0:
                break
            del run[top + 1:]
            for spec, divide in _grown(t, i):
                _apply_growth(run, spec, i, divide)
    total[0] += t.constant_shift
    return TruncatedSeries(order, tuple(total))


def _grown(t, i):
    for spec in t.numerator:
        if isinstance(spec.length, Affine) and spec.length.slope:
            yield spec, False
    for spec in t.denominator:
        if isinstance(spec.length, Affine) and spec.length.slope:
            yield spec, True


def _apply_growth(run, spec, i, divide):
    """Apply factors j in [len(i-1), len(i)) of an affine Pochhammer."""
    order = len(run) - 1
    for j in range(spec.length.at(i - 1), spec.length.at(i)):
        e = spec.a_exp + spec.step * j
        if spec.sign == 0 or e > order:
            continue
        if e == 0:
            if divide:
                raise NotInvertibleError("factor (1 - %d) is not a unit" % spec.sign)
            k = 1 - spec.sign
            for s in range(len(run)):
                run[s] *= k
        elif divide:
            kernels.div_binomial(run, spec.sign, e)
        else:
            kernels.mul_binomial(run, spec.sign, e)


# -- named generating functions ---------------------------------------------------

# sum_n (-q;q^2)_n q^{2n} / (q^2;q^2)_n
O1_TERMS = TermSpec((poch(-1, 1, 2, Affine(1, 0)),), (poch(1, 2, 2, Affine(1, 0)),), 2, 0)
# sum_n (-q;q^2)_n q^{4n} / (q^2;q^2)_n - 1
O2_TERMS = TermSpec((poch(-1, 1, 2, Affine(1, 0)),), (poch(1, 2, 2, Affine(1, 0)),), 4, 0, -1)
# sum_{n>=1} (-q;q^2)_n q^{2n} / (q^2;q^2)_{n-1} + 1, reindexed from i = n-1
O3_TERMS = TermSpec((poch(-1, 1, 2, Affine(1, 1)),), (poch(1, 2, 2, Affine(1, 0)),), 2, 2, 1)
# Lambda = sum_m (-q;q^2)_{m+1} q^{2m} / (q^2;q^2)_m
LAMBDA_TERMS = TermSpec((poch(-1, 1, 2, Affine(1, 1)),), (poch(1, 2, 2, Affine(1, 0)),), 2, 0)
# sum_m (-q^2;q^2)_m q^{2m} / (q;q^2)_m
AB1_TERMS = TermSpec((poch(-1, 2, 2, Affine(1, 0)),), (poch(1, 1, 2, Affine(1, 0)),), 2, 0)
# sum_n (q;q)_{2n} q^{4n} / (q^4;q^4)_n
AB2_TERMS = TermSpec((poch(1, 1, 1, Affine(2, 0)),), (poch(1, 4, 4, Affine(1, 0)),), 4, 0)

_QQ = poch(1, 1, 1)  # (q;q)_inf
_ONE_PLUS_Q3 = poch(-1, 3, 1, 1)  # 1 + q^3
_ONE_MINUS_Q = poch(1, 1, 1, 1)  # 1 - q


def _ratio(num, den, order):
    return pochhammer_ratio(num, den, order)


def _gf_pod(n):
    return _ratio([poch(-1, 1, 2)], [poch(1, 2, 2)], n)


def _gf_c(n):
    return _ratio([poch(1, 2, 4)], [_QQ], n)


def _gf_podgt2(n):
    return _ratio([poch(-1, 3, 2)], [poch(1, 4, 2)], n)


def _gf_o1(n):
    return _ratio([poch(-1, 3, 2)], [poch(1, 2, 2)], n)


def _gf_o2(n):
    return _ratio([poch(-1, 5, 2)], [poch(1, 4, 2)], n) - 1


def _gf_lambda_closed(n):
    return _ratio([poch(1, 2, 4)], [_ONE_PLUS_Q3, _QQ], n)


def _gf_o3_closed(n):
    return _gf_lambda_closed(n).shift(2) + 1


def _gf_ab_rhs(n, k):
    # k*q*(q^4;q^4)_inf / ((1+q^3)(q;q)_inf) + (1-q)/(1+q^3)
    a = _ratio([poch(1, 4, 4)], [_ONE_PLUS_Q3, _QQ], n).shift(1) * k
    return a + _ratio([_ONE_MINUS_Q], [_ONE_PLUS_Q3], n)


def _gf_ab2_lhs(n):
    return _ratio([poch(1, 4, 4)], [_QQ], n) * sum_ratio_terms(AB2_TERMS, n)


NAMED = {
    "pod": _gf_pod,
    "c": _gf_c,
    "podgt2": _gf_podgt2,
    "o1": _gf_o1,
    "o2": _gf_o2,
    "o1_sum": lambda n: sum_ratio_terms(O1_TERMS, n),
    "o2_sum": lambda n: sum_ratio_terms(O2_TERMS, n),
    "o3_sum": lambda n: sum_ratio_terms(O3_TERMS, n),
    "o3_closed": _gf_o3_closed,
    "lambda_sum": lambda n: sum_ratio_terms(LAMBDA_TERMS, n),
    "lambda_closed": _gf_lambda_closed,
    "ab1_lhs": lambda n: sum_ratio_terms(AB1_TERMS, n),
    "ab1_rhs": lambda n: _gf_ab_rhs(n, 1),
    "ab2_lhs": _gf_ab2_lhs,
    "ab2_rhs": lambda n: _gf_ab_rhs(n, 2),
}

FAMILY_SERIES = {
    Family.POD: "pod",
    Family.C: "c",
    Family.PODGT2: "podgt2",
    Family.O1: "o1",
    Family.O2: "o2",
    Family.O3: "o3_closed",
}

_cache = {}


def named_gf(name, order):
    """Named generating function truncated at ``order``.

    Results are memoized per (name, order); a request below a cached order is
    served by truncating the cached series.
    """
    if name not in NAMED:
        raise KeyError("unknown series %r (known: %s)" % (name, ", ".join(sorted(NAMED))))
    if order < 0:
        raise ValueError("order must be nonnegative")
    best = _cache.get(name)
    if best is not None and best.order >= order:
        return best.truncate(order)
    s = NAMED[name](order)
    _cache[name] = s
    return s


# -- q-binomial theorem ---------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """``sign*q**exp``; sign 0 is the zero monomial."""

    sign: int
    exp: int = 0


@dataclass
class QBinomialReport:
    a: Monomial
    z: Monomial
    order: int
    equal: bool
    first_difference: Optional[int] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    sides: tuple = field(default=(), repr=False)


def qbinomial_check(a, z, order):
    """Compare sum_n (a;q)_n/(q;q)_n z^n with (az;q)_inf/(z;q)_inf to ``order``."""
    if z.exp < 1 or z.sign not in (-1, 1):
        raise ValueError("z must be a nonzero monomial of positive degree")
    terms = TermSpec(
        (poch(a.sign, a.exp, 1, Affine(1, 0)),),
        (poch(1, 1, 1, Affine(1, 0)),),
        z.exp,
        0,
        z_sign=z.sign,
    )
    lhs = sum_ratio_terms(terms, order)
    rhs = pochhammer_ratio([poch(a.sign * z.sign, a.exp + z.exp, 1)], [poch(z.sign, z.exp, 1)], order)
    for k, (x, y) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if x != y:
            return QBinomialReport(a, z, order, False, k, x, y, (lhs, rhs))
    return QBinomialReport(a, z, order, True, sides=(lhs, rhs))
