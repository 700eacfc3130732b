"""Integer partitions, the six restricted families, and exhaustive enumeration.

A :class:`Partition` is a tuple of positive ints kept in non-increasing order.
Every public constructor canonicalizes, so equality and the family predicates
never have to sort.
"""

import enum
import json
import re
from collections import Counter
from functools import lru_cache

DEFAULT_ENUM_BOUND = 60


class EnumerationBoundError(ValueError):
    """Raised instead of silently truncating an enumeration."""

    def __init__(self, n, bound):
        self.n = n
        self.bound = bound
        super().__init__(
            "n=%d exceeds the enumeration bound %d (raise it with bound=... or --max-enum-n)"
            % (n, bound)
        )


class Partition(tuple):
    """Canonical partition: a non-increasing tuple of positive integers.

    >>> Partition([2, 5, 5, 3])
    Partition(5, 5, 3, 2)
    >>> Partition().size
    0
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        values = []
        for v in parts:
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError("partition parts must be integers, got %r" % (v,))
            if v <= 0:
                raise ValueError("partition parts must be positive, got %d" % v)
            values.append(v)
        values.sort(reverse=True)
        return tuple.__new__(cls, values)

    @classmethod
    def _trusted(cls, parts):
        # caller guarantees positive ints in non-increasing order
        return tuple.__new__(cls, parts)

    @property
    def parts(self):
        return tuple(self)

    @property
    def size(self):
        return sum(self)

    @property
    def largest(self):
        return self[0] if self else 0

    def multiplicities(self):
        """Map part -> number of occurrences."""
        return Counter(self)

    def multiplicity(self, part):
        return multiplicity(self, part)

    def __repr__(self):
        return "Partition(%s)" % ", ".join(map(str, self))

    def __str__(self):
        return ",".join(map(str, self))


def canonicalize(values):
    """Sort ``values`` into a :class:`Partition`; rejects parts <= 0."""
    if isinstance(values, Partition):
        return values
    return Partition(values)


def multiplicity(p, part):
    """Number of occurrences of ``part`` in ``p`` (0 when absent)."""
    if part < 1:
        raise ValueError("part must be >= 1, got %d" % part)
    return p.count(part)


# -- serialization ----------------------------------------------------------

_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*\{?\s*(\d+)\s*\}?)?\s*$")


def parse_partition(text):
    """Parse ``"11,8,5,5,5,4,3"``, ``"12^2,11^3,8,3"``, ``"(5,4)"`` or a JSON array.

    The empty string and ``()`` give the empty partition.
    """
    s = text.strip()
    if s.startswith("["):
        data = json.loads(s)
        if not isinstance(data, list):
            raise ValueError("expected a JSON array of integers")
        return Partition(int(x) for x in data)
    s = s.strip("()")
    if not s.strip():
        return Partition()
    values = []
    for tok in s.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError("cannot parse partition token %r" % tok)
        part = int(m.group(1))
        count = int(m.group(2)) if m.group(2) is not None else 1
        values.extend([part] * count)
    return Partition(values)


def format_partition(p, exponents=False):
    """Comma-separated parts; with ``exponents`` use the ``12^2`` shorthand."""
    if not exponents:
        return ",".join(map(str, p))
    out = []
    i = 0
    while i < len(p):
        j = i
        while j < len(p) and p[j] == p[i]:
            j += 1
        out.append(str(p[i]) if j - i == 1 else "%d^%d" % (p[i], j - i))
        i = j
    return ",".join(out)


# -- families ---------------------------------------------------------------


class Family(enum.Enum):
    POD = "pod"
    PODGT2 = "podgt2"
    O1 = "o1"
    O2 = "o2"
    O3 = "o3"
    C = "c"

    @property
    def label(self):
        return _LABELS[self]

    @classmethod
    def parse(cls, text):
        key = text.strip().lower().replace("_", "").replace(">2", "gt2")
        for fam in cls:
            if key == fam.value:
                return fam
        raise ValueError(
            "unknown family %r (expected one of %s)" % (text, ", ".join(f.value for f in cls))
        )


_LABELS = {
    Family.POD: "Pod",
    Family.PODGT2: "Pod>2",
    Family.O1: "O1",
    Family.O2: "O2",
    Family.O3: "O3",
    Family.C: "C",
}


def has_distinct_odd_parts(p):
    prev = None
    for x in p:
        if x & 1 and x == prev:
            return False
        prev = x
    return True


def _is_o1(p):
    # the empty partition counts: its "largest part" is vacuously even
    return has_distinct_odd_parts(p) and (not p or p[0] % 2 == 0)


def _top_multiplicity(p):
    k = 0
    for x in p:
        if x != p[0]:
            break
        k += 1
    return k


_PREDICATES = {
    Family.POD: has_distinct_odd_parts,
    Family.PODGT2: lambda p: has_distinct_odd_parts(p) and (not p or p[-1] > 2),
    Family.O1: _is_o1,
    Family.O2: lambda p: bool(p) and _is_o1(p) and _top_multiplicity(p) >= 2,
    Family.O3: lambda p: _is_o1(p) and (not p or _top_multiplicity(p) == 1),
    Family.C: lambda p: all(x % 4 != 2 for x in p),
}


def is_in_family(p, family):
    """Membership test for one of the six families.

    Conventions for the empty partition follow the generating functions'
    constant terms: it belongs to Pod, Pod>2, C, O1 and O3 but not O2.
    """
    return _PREDICATES[family](p)


# -- enumeration ------------------------------------------------------------


def _check_bound(n, bound):
    if n < 0:
        raise ValueError("n must be nonnegative, got %d" % n)
    if bound is None:
        bound = DEFAULT_ENUM_BOUND
    if n > bound:
        raise EnumerationBoundError(n, bound)


def enumerate_partitions(n, bound=None):
    """Iterate every partition of ``n`` once, in lexicographically decreasing order.

    The bound is checked eagerly, before the first partition is produced.
    """
    _check_bound(n, bound)
    return _all_partitions(n)


def _all_partitions(n):
    if n == 0:
        yield Partition._trusted(())
        return
    # a holds the current partition as a list; step to the lexicographic
    # predecessor by breaking the rightmost part > 1
    a = [n]
    trusted = Partition._trusted
    while True:
        yield trusted(tuple(a))
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        k = a.pop() - 1
        rest = ones + 1
        while rest >= k:
            a.append(k)
            rest -= k
        a.append(k)
        if rest:
            a.append(rest)


def _restricted(n, largest, cap, prefix, out):
    """Append restricted partitions of n with parts <= largest to out (lex-decreasing).

    ``cap(part)`` is the maximum multiplicity allowed for ``part``.
    """
    if n == 0:
        out.append(Partition._trusted(tuple(prefix)))
        return
    for part in range(min(n, largest), 0, -1):
        limit = min(cap(part), n // part)
        for m in range(limit, 0, -1):
            prefix.extend([part] * m)
            _restricted(n - m * part, part - 1, cap, prefix, out)
            del prefix[len(prefix) - m:]


def _cap_pod(part):
    return 1 if part & 1 else 1 << 30


def _cap_podgt2(part):
    if part <= 2:
        return 0
    return _cap_pod(part)


def _cap_c(part):
    return 0 if part % 4 == 2 else 1 << 30


def _generate(n, family):
    out = []
    if family is Family.POD:
        _restricted(n, n, _cap_pod, [], out)
    elif family is Family.PODGT2:
        _restricted(n, n, _cap_podgt2, [], out)
    elif family is Family.C:
        _restricted(n, n, _cap_c, [], out)
    else:
        if n == 0:
            # O1/O3 contain the empty partition, O2 does not
            return [] if family is Family.O2 else [Partition._trusted(())]
        # choose the even largest part and its multiplicity explicitly
        for top in range(n - n % 2, 0, -2):
            if family is Family.O3:
                mults = [1]
            elif family is Family.O2:
                mults = range(n // top, 1, -1)
            else:
                mults = range(n // top, 0, -1)
            for m in mults:
                if m * top > n:
                    continue
                _restricted(n - m * top, top - 1, _cap_pod, [top] * m, out)
    return out


def enumerate_family(n, family, bound=None):
    """Iterate the members of ``family`` of size ``n`` in lexicographically decreasing order.

    Generation prunes by the family's constraints rather than filtering all
    partitions of ``n``; the test suite checks the two agree.
    """
    _check_bound(n, bound)
    return iter(_generate(n, family))


@lru_cache(maxsize=None)
def _enum_count(n, family):
    return sum(1 for _ in _generate(n, family))


def count_family(n, family, method="enumeration", bound=None, order=None):
    """Cardinality of ``family`` at ``n`` (0 for negative n).

    ``method`` is ``"enumeration"`` or ``"series"``; the latter reads the
    coefficient of the family's generating function.
    """
    if n < 0:
        return 0
    if method == "enumeration":
        _check_bound(n, bound)
        return _enum_count(n, family)
    if method == "series":
        from .series import FAMILY_SERIES, coefficient, named_gf

        return coefficient(named_gf(FAMILY_SERIES[family], max(n, order or 0)), n)
    raise ValueError("unknown method %r" % (method,))
