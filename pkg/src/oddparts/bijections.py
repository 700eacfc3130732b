"""Constructive maps C(n) -> O1(n) + O1(n-1) and C(n) -> O3(n+2) + O3(n-1).

Both forward maps dispatch on the largest part and the largest repeated odd
part, then finish with the same step: split off the pairs of equal odd parts
and merge each pair into one part congruent to 2 mod 4.  The converse maps
adjust the largest part and split every part congruent to 2 mod 4 in half.

Every forward application returns a :class:`MappingRecord` holding the
intermediates; outputs are checked against the target family before they are
returned, and a failure raises :class:`ContractViolation` with the record.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Union

from .partitions import Family, Partition, canonicalize, format_partition, is_in_family

T31 = "T31"
T32 = "T32"
THEOREM_NAMES = {T31: "3.1", T32: "3.2"}


class DomainError(ValueError):
    """Input outside the domain of a map."""


class ContractViolation(RuntimeError):
    """A map produced an output outside its declared target."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class DispatchError(RuntimeError):
    """Zero or several cases matched one input."""


@dataclass(frozen=True)
class CaseLabel:
    theorem: str
    case: Union[int, str]  # 1..7 / 1..11 forward, "B1"/"B2" converse

    def __str__(self):
        return "%s case %s" % (THEOREM_NAMES[self.theorem], self.case)


@dataclass(frozen=True)
class Target:
    family: Family
    n: int

    def __str__(self):
        return "%s(%d)" % (self.family.label, self.n)


@dataclass(frozen=True)
class MappingRecord:
    input: Partition
    case: CaseLabel
    mu: Optional[Partition]
    alpha: Partition
    beta: Partition
    phi_beta: Partition
    output: Partition
    target: Target

    def to_json(self):
        def arr(p):
            return None if p is None else list(p)

        return {
            "theorem": THEOREM_NAMES[self.case.theorem],
            "input": arr(self.input),
            "case": str(self.case.case),
            "mu": arr(self.mu),
            "alpha": arr(self.alpha),
            "beta": arr(self.beta),
            "phi_beta": arr(self.phi_beta),
            "output": arr(self.output),
            "target": str(self.target),
        }

    def to_text(self, exponents=True):
        def fmt(p):
            return "-" if p is None else "(%s)" % format_partition(p, exponents=exponents)

        rows = [
            ("theorem", THEOREM_NAMES[self.case.theorem]),
            ("case", str(self.case.case)),
            ("input", fmt(self.input)),
            ("mu", fmt(self.mu)),
            ("alpha", fmt(self.alpha)),
            ("beta", fmt(self.beta)),
            ("phi_beta", fmt(self.phi_beta)),
            ("output", fmt(self.output)),
            ("target", str(self.target)),
        ]
        return "\n".join("%-9s %s" % row for row in rows)


# -- building blocks ------------------------------------------------------------


def multiset_union(p1, p2):
    return canonicalize(tuple(p1) + tuple(p2))


def phi(p):
    """Merge equal odd parts two at a time; even parts pass through."""
    out = []
    for part, m in Counter(p).items():
        if part % 2:
            if m % 2:
                raise DomainError("odd part %d has odd multiplicity %d" % (part, m))
            out.extend([2 * part] * (m // 2))
        else:
            out.extend([part] * m)
    return canonicalize(out)


def phi_inverse(p):
    """Split every part congruent to 2 mod 4 into two equal odd parts."""
    out = []
    for part in p:
        if part % 4 == 2:
            out.extend((part // 2, part // 2))
        else:
            out.append(part)
    return canonicalize(out)


def split_alpha_beta(p):
    """Split p into (alpha, beta).

    alpha keeps the even parts and one copy of each odd part of odd
    multiplicity; beta takes the remaining odd parts, which all come in pairs.
    """
    alpha, beta = [], []
    for part, m in Counter(p).items():
        if part % 2:
            alpha.extend([part] * (m % 2))
            beta.extend([part] * (m - m % 2))
        else:
            alpha.extend([part] * m)
    return canonicalize(alpha), canonicalize(beta)


def largest_repeated_odd(p):
    """Largest odd part with multiplicity >= 2, or None."""
    prev = None
    for x in p:
        if x % 2 and x == prev:
            return x
        prev = x
    return None


def add_to_largest(p, delta):
    """Change the largest part by delta; a part that reaches 0 is dropped."""
    if not p:
        raise DomainError("empty partition has no largest part")
    head = p[0] + delta
    if head < 0:
        raise DomainError("largest part %d cannot absorb %d" % (p[0], delta))
    return canonicalize(((head,) if head else ()) + tuple(p[1:]))


def raise_top_two(p):
    """Add 1 to each of the two largest parts."""
    if len(p) < 2:
        raise DomainError("need at least two parts")
    return canonicalize((p[0] + 1, p[1] + 1) + tuple(p[2:]))


def merge_pair(p, part, extra):
    """Replace two copies of ``part`` by the single part 2*part + extra."""
    rest = list(p)
    for _ in range(2):
        try:
            rest.remove(part)
        except ValueError:
            raise DomainError("%r has fewer than two parts equal to %d" % (p, part)) from None
    return canonicalize(rest + [2 * part + extra])


def raise_largest_and_one_below(p):
    """Add 1 to the largest part and to one part equal to largest - 1."""
    rest = list(p)
    l1 = rest[0]
    try:
        rest.remove(l1 - 1)
    except ValueError:
        raise DomainError("%r has no part %d" % (p, l1 - 1)) from None
    rest[0] = l1 + 1
    return canonicalize(rest + [l1])


# -- case predicates --------------------------------------------------------------
# Each predicate is a complete, independent restatement of one case so the
# dispatch can be checked for overlap as well as coverage.


class _Shape:
    __slots__ = ("l1", "l2", "m1", "rep", "m_below")

    def __init__(self, p):
        self.l1 = p[0]
        self.l2 = p[1] if len(p) > 1 else 0
        self.m1 = p.count(self.l1)
        self.rep = largest_repeated_odd(p)
        self.m_below = p.count(self.l1 - 1)


def _odd_single(s, r):
    # largest part odd, == r mod 4, appears once, and some odd part repeats
    return s.l1 % 4 == r and s.m1 == 1 and s.rep is not None


T31_CASES = {
    1: lambda s: s.l1 % 2 == 0,
    2: lambda s: s.l1 % 2 == 1 and s.rep is None,
    3: lambda s: s.l1 % 2 == 1 and s.m1 > 1,
    4: lambda s: _odd_single(s, 1) and 2 * s.rep < s.l1 + 1,
    5: lambda s: _odd_single(s, 1) and 2 * s.rep >= s.l1 + 1,
    6: lambda s: _odd_single(s, 3) and 2 * s.rep > s.l1 - 1,
    7: lambda s: _odd_single(s, 3) and 2 * s.rep <= s.l1 - 1,
}

T32_CASES = {
    1: lambda s: s.l1 % 2 == 0 and s.rep is None,
    2: lambda s: s.l1 % 2 == 0 and s.rep is not None and 2 * s.rep >= s.l1 + 2,
    3: lambda s: s.l1 % 2 == 0 and s.rep is not None and 2 * s.rep < s.l1 + 2,
    4: lambda s: s.l1 % 2 == 1 and s.rep is None and s.l2 < s.l1 - 1,
    5: lambda s: s.l1 % 2 == 1 and s.rep is None and s.l2 == s.l1 - 1,
    6: lambda s: s.l1 % 2 == 1 and s.m1 >= 2,
    7: lambda s: _odd_single(s, 1) and 2 * s.rep >= s.l1 + 1,
    8: lambda s: _odd_single(s, 1) and 2 * s.rep < s.l1 + 1 and s.m_below == 0,
    9: lambda s: _odd_single(s, 1) and 2 * s.rep < s.l1 + 1 and s.m_below >= 1,
    10: lambda s: _odd_single(s, 3) and 2 * s.rep >= s.l1 - 1,
    11: lambda s: _odd_single(s, 3) and 2 * s.rep < s.l1 - 1,
}

_CASES = {T31: T31_CASES, T32: T32_CASES}
_MIN_N = {T31: 2, T32: 3}


def matching_cases(p, theorem):
    """All case numbers whose predicate holds for p (exactly one when correct)."""
    s = _Shape(p)
    return [k for k, pred in _CASES[theorem].items() if pred(s)]


def _check_domain(p, theorem, n=None):
    if n is not None and p.size != n:
        raise DomainError("partition %s has size %d, not %d" % (p, p.size, n))
    if not is_in_family(p, Family.C):
        bad = next(x for x in p if x % 4 == 2)
        raise DomainError("%s is not in C: part %d is 2 mod 4" % (format_partition(p), bad))
    if p.size < _MIN_N[theorem]:
        raise DomainError(
            "theorem %s needs n >= %d, got n=%d" % (THEOREM_NAMES[theorem], _MIN_N[theorem], p.size)
        )


def classify_case(p, theorem):
    p = canonicalize(p)
    _check_domain(p, theorem)
    hits = matching_cases(p, theorem)
    if len(hits) != 1:
        raise DispatchError("%s matched cases %r under theorem %s" % (p, hits, THEOREM_NAMES[theorem]))
    return CaseLabel(theorem, hits[0])


def _finish(p, label, mu, target):
    """Split ``mu`` (or p itself) into alpha/beta and merge beta's pairs."""
    base = p if mu is None else mu
    alpha, beta = split_alpha_beta(base)
    phi_beta = phi(beta)
    out = multiset_union(alpha, phi_beta)
    rec = MappingRecord(p, label, mu, alpha, beta, phi_beta, out, target)
    return _verified(rec)


def _verified(rec):
    t = rec.target
    if rec.output.size != t.n or not is_in_family(rec.output, t.family):
        raise ContractViolation("output %s of %s is not in %s" % (rec.output, rec.case, t), rec)
    return rec


# -- map 3.1 -----------------------------------------------------------------------


def thm31_forward(p, n=None):
    """Map p in C(n), n > 1, into O1(n) or O1(n-1)."""
    p = canonicalize(p)
    n = p.size if n is None else n
    label = classify_case(p, T31)
    _check_domain(p, T31, n)
    case = label.case
    same, below = Target(Family.O1, n), Target(Family.O1, n - 1)
    if case in (1, 5, 6):
        return _finish(p, label, None, same)
    if case == 2:
        return _finish(p, label, add_to_largest(p, -1), below)
    if case == 3:
        return _finish(p, label, merge_pair(p, p[0], 0), same)
    # cases 4 and 7
    return _finish(p, label, add_to_largest(p, -1), below)


def _backward(p, delta, label, n):
    p = canonicalize(p)
    mu = add_to_largest(p, delta) if delta else p
    merged = canonicalize(x for x in mu if x % 4 == 2)
    kept = canonicalize(x for x in mu if x % 4 != 2)
    beta = phi_inverse(merged)
    out = multiset_union(kept, beta)
    rec = MappingRecord(p, label, mu, kept, beta, merged, out, Target(Family.C, n))
    return _verified(rec)


def _source_offset(source, allowed):
    key = str(source).replace(" ", "").lower()
    for prefix in ("o1(", "o3("):
        if key.startswith(prefix) and key.endswith(")"):
            key = key[len(prefix):-1]
    offsets = {"n": 0, "n-1": -1, "n+2": 2}
    if key not in offsets or offsets[key] not in allowed:
        raise DomainError("source must be one of %s, got %r" % (sorted(allowed), source))
    return offsets[key]


def thm31_backward_record(p, source):
    """Converse of map 3.1 with an audit record.

    ``source`` is ``"n"`` (p in O1(n)) or ``"n-1"`` (p in O1(n-1)).
    """
    p = canonicalize(p)
    off = _source_offset(source, {0, -1})
    if not is_in_family(p, Family.O1):
        raise DomainError("%s is not in O1" % format_partition(p))
    n = p.size - off
    if off == 0:
        return _backward(p, 0, CaseLabel(T31, "B1"), n)
    return _backward(p, 1, CaseLabel(T31, "B2"), n)


def thm31_backward(p, source):
    return thm31_backward_record(p, source).output


# -- map 3.2 -----------------------------------------------------------------------


def thm32_forward(p, n=None):
    """Map p in C(n), n > 2, into O3(n+2) or O3(n-1)."""
    p = canonicalize(p)
    n = p.size if n is None else n
    label = classify_case(p, T32)
    _check_domain(p, T32, n)
    case = label.case
    up, down = Target(Family.O3, n + 2), Target(Family.O3, n - 1)
    a = largest_repeated_odd(p)
    if case == 1:
        return _finish(p, label, add_to_largest(p, 2), up)
    if case in (2, 7, 10):
        return _finish(p, label, merge_pair(p, a, 2), up)
    if case == 3:
        return _finish(p, label, add_to_largest(p, 2), up)
    if case in (4, 8, 11):
        return _finish(p, label, add_to_largest(p, -1), down)
    if case == 5:
        return _finish(p, label, raise_top_two(p), up)
    if case == 6:
        return _finish(p, label, merge_pair(p, p[0], 2), up)
    # case 9
    return _finish(p, label, raise_largest_and_one_below(p), up)


def thm32_backward_record(p, source):
    """Converse of map 3.2: ``source`` is ``"n-1"`` or ``"n+2"``."""
    p = canonicalize(p)
    off = _source_offset(source, {-1, 2})
    if not is_in_family(p, Family.O3):
        raise DomainError("%s is not in O3" % format_partition(p))
    n = p.size - off
    if off == -1:
        return _backward(p, 1, CaseLabel(T32, "B1"), n)
    return _backward(p, -2, CaseLabel(T32, "B2"), n)


def thm32_backward(p, source):
    return thm32_backward_record(p, source).output


FORWARD = {T31: thm31_forward, T32: thm32_forward}
BACKWARD = {T31: thm31_backward_record, T32: thm32_backward_record}
SOURCES = {T31: ("n", "n-1"), T32: ("n+2", "n-1")}


def parse_theorem(text):
    key = str(text).strip().upper().replace(".", "")
    if key in ("31", "T31"):
        return T31
    if key in ("32", "T32"):
        return T32
    raise ValueError("unknown theorem %r (expected 3.1 or 3.2)" % (text,))
