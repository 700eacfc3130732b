import json

import pytest
from hypothesis import given, strategies as st

from oddparts import bijections as bij
from oddparts.bijections import (
    T31,
    T32,
    CaseLabel,
    ContractViolation,
    DispatchError,
    DomainError,
    MappingRecord,
    Target,
    classify_case,
    matching_cases,
    multiset_union,
    phi,
    phi_inverse,
    split_alpha_beta,
    thm31_backward,
    thm31_backward_record,
    thm31_forward,
    thm32_backward,
    thm32_backward_record,
    thm32_forward,
)
from oddparts.partitions import Family, Partition, enumerate_family, is_in_family, parse_partition

P = parse_partition

# Worked tables: input, then (alpha, beta, phi(beta), output) or with mu for 3.2
TABLE_31 = [
    ("12^2,11^3,8,3", 1, "12^2,11,8,3", "11^2", "22", "22,12^2,11,8,3"),
    ("13,12,11^4,7,3^2", 5, "13,12,7", "11^4,3^2", "22^2,6", "22^2,13,12,7,6"),
    ("11,9^3,8,3,1", 6, "11,9,8,3,1", "9^2", "18", "18,11,9,8,3,1"),
]
TABLE_32 = [
    ("12^2,11^4,8", 2, "24,12^2,11^2,8", "24,12^2,8", "11^2", "22", "24,22,12^2,8"),
    ("13,11^3,3^2", 7, "24,13,11,3^2", "24,13,11", "3^2", "6", "24,13,11,6"),
    ("11,8^2,5,3^3", 11, "10,8^2,5,3^3", "10,8^2,5,3", "3^2", "6", "10,8^2,6,5,3"),
    ("9,8^2,5,3^3", 9, "10,9,8,5,3^3", "10,9,8,5,3", "3^2", "6", "10,9,8,6,5,3"),
]


# -- building blocks ----------------------------------------------------------


def test_union_examples():
    assert multiset_union(P("5,4,3,2,1"), P("4,4,3,3,2")) == (5, 4, 4, 4, 3, 3, 3, 2, 2, 1)
    assert multiset_union(P("7,2"), Partition()) == (7, 2)
    assert multiset_union(P("3"), P("3")) == (3, 3)


def test_phi_examples():
    assert phi(P("5,5,4,3,3,3,3,2")) == (10, 6, 6, 4, 2)
    assert phi(Partition()) == ()
    assert phi(P("11^4,3^2")) == (22, 22, 6)


def test_phi_rejects_odd_multiplicity():
    with pytest.raises(DomainError, match="odd part 3"):
        phi(P("5,5,3"))


def test_phi_inverse_examples():
    assert phi_inverse(P("22,12,12,11,8,3")) == (12, 12, 11, 11, 11, 8, 3)
    assert phi_inverse(P("12,8,7,4")) == (12, 8, 7, 4)
    assert phi_inverse(phi(P("9,9"))) == (9, 9)
    assert phi(P("9,9")) == (18,)


def test_split_examples():
    assert split_alpha_beta(P("12^2,11^3,8,3")) == (P("12,12,11,8,3"), P("11,11"))
    assert split_alpha_beta(P("13,12,11^4,7,3^2")) == (P("13,12,7"), P("11^4,3^2"))
    assert split_alpha_beta(P("8,6,4,4")) == (P("8,6,4,4"), Partition())


@st.composite
def paired_odd(draw):
    """Partitions whose odd parts all have even multiplicity (the domain of phi)."""
    odds = draw(st.dictionaries(st.integers(0, 30).map(lambda k: 2 * k + 1), st.integers(1, 4), max_size=6))
    evens = draw(st.lists(st.integers(1, 30).map(lambda k: 2 * k), max_size=6))
    values = [part for part, pairs in odds.items() for _ in range(2 * pairs)]
    return Partition(values + evens)


@given(paired_odd())
def test_phi_roundtrip_on_pairs(beta):
    odd_only = Partition(x for x in beta if x % 2)
    merged = phi(odd_only)
    assert all(x % 4 == 2 for x in merged)
    assert phi_inverse(merged) == odd_only
    assert merged.size == odd_only.size


@given(st.lists(st.integers(1, 60), max_size=14))
def test_phi_inverse_then_phi_fixes_parts_2_mod_4(values):
    p = Partition(x for x in values if x % 4 == 2)
    assert phi(phi_inverse(p)) == p


@given(st.lists(st.integers(1, 40), max_size=14))
def test_split_reassembles(values):
    p = Partition(values)
    alpha, beta = split_alpha_beta(p)
    assert multiset_union(alpha, beta) == p
    assert is_in_family(Partition(x for x in alpha if x % 2), Family.POD)
    phi(beta)  # every odd part of beta comes in pairs


# -- dispatch ---------------------------------------------------------------


def test_classify_examples():
    assert classify_case(P("11,8,5,5,5,4,3"), T31) == CaseLabel(T31, 7)
    assert classify_case(P("11,8,8,5,3,3,3"), T32) == CaseLabel(T32, 11)
    assert classify_case(P("12,9,9,9"), T31).case == 1


@pytest.mark.parametrize("theorem, lo", [(T31, 2), (T32, 3)])
def test_dispatch_total_and_exclusive(theorem, lo):
    seen = set()
    for n in range(lo, 36):
        for p in enumerate_family(n, Family.C):
            hits = matching_cases(p, theorem)
            assert len(hits) == 1, (p, hits)
            seen.add(hits[0])
    assert seen == set(bij._CASES[theorem])  # every case is reachable


def test_classify_rejects_non_c_and_small_n():
    with pytest.raises(DomainError, match="2 mod 4"):
        classify_case(P("2,2"), T31)
    with pytest.raises(DomainError):
        classify_case(P("1"), T31)
    with pytest.raises(DomainError):
        classify_case(P("1,1"), T32)


def test_overlapping_cases_are_reported(monkeypatch):
    patched = dict(bij.T31_CASES)
    patched[8] = lambda s: True
    monkeypatch.setitem(bij._CASES, T31, patched)
    with pytest.raises(DispatchError):
        classify_case(P("4,3,3"), T31)


# -- forward maps ---------------------------------------------------------------


def test_thm31_example_forward():
    rec = thm31_forward(P("11,8,5,5,5,4,3"))
    assert rec.case == CaseLabel(T31, 7)
    assert rec.mu == (10, 8, 5, 5, 5, 4, 3)
    assert rec.alpha == (10, 8, 5, 4, 3)
    assert rec.beta == (5, 5)
    assert rec.phi_beta == (10,)
    assert rec.output == (10, 10, 8, 5, 4, 3)
    assert rec.target == Target(Family.O1, 40)


def test_thm31_small_cases():
    rec = thm31_forward(P("4,3,3"))
    assert (rec.case.case, rec.alpha, rec.beta, rec.output, rec.target.n) == (1, (4,), (3, 3), (6, 4), 10)
    rec = thm31_forward(P("5,4,1"))
    assert (rec.case.case, rec.output, rec.target.n) == (2, (4, 4, 1), 9)


def test_thm31_case2_drops_zero_part():
    rec = thm31_forward(P("1,1"))
    assert rec.case.case == 3  # largest part repeated
    rec = thm31_forward(P("3"))
    assert rec.case.case == 2 and rec.output == (2,)


@pytest.mark.parametrize("row", TABLE_31)
def test_table_31(row):
    lam, case, alpha, beta, phib, out = row
    rec = thm31_forward(P(lam))
    assert rec.case.case == case
    assert (rec.alpha, rec.beta, rec.phi_beta, rec.output) == (P(alpha), P(beta), P(phib), P(out))
    assert rec.target == Target(Family.O1, P(lam).size)


@pytest.mark.parametrize("row", TABLE_32)
def test_table_32(row):
    lam, case, mu, gamma, beta, phib, out = row
    rec = thm32_forward(P(lam))
    assert rec.case.case == case
    assert (rec.mu, rec.alpha, rec.beta, rec.phi_beta, rec.output) == (P(mu), P(gamma), P(beta), P(phib), P(out))
    assert rec.target.family is Family.O3


def test_thm32_targets():
    assert thm32_forward(P("12,12,11,11,11,11,8")).target == Target(Family.O3, 78)
    assert thm32_forward(P("11,8,8,5,3,3,3")).target == Target(Family.O3, 40)
    assert thm32_forward(P("9,8,8,5,3,3,3")).target == Target(Family.O3, 41)


def test_forward_size_mismatch():
    with pytest.raises(DomainError):
        thm31_forward(P("4,3,3"), n=11)


def test_contract_violation_carries_record(monkeypatch):
    monkeypatch.setattr(bij, "phi", lambda beta: beta)  # leaves the odd pair unmerged
    with pytest.raises(ContractViolation) as err:
        thm31_forward(P("4,3,3"))
    rec = err.value.record
    assert isinstance(rec, MappingRecord) and rec.input == (4, 3, 3)
    assert rec.target == Target(Family.O1, 10)


# -- converse maps --------------------------------------------------------------


def test_thm31_example_converse():
    rec = thm31_backward_record(P("10,10,8,5,4,3"), "n-1")
    assert rec.mu == (11, 10, 8, 5, 4, 3)
    assert rec.output == (11, 8, 5, 5, 5, 4, 3)
    assert rec.target == Target(Family.C, 41)
    assert thm31_backward(P("6,4"), "n") == (4, 3, 3)
    assert thm31_backward(Partition(), "O1(n)") == ()


def test_thm32_converse_examples():
    assert thm32_backward(P("24,22,12,12,8"), "n+2") == (12, 12, 11, 11, 11, 11, 8)
    assert thm32_backward(P("10,8,8,6,5,3"), "n-1") == (11, 8, 8, 5, 3, 3, 3)
    assert thm32_backward(P("4"), "O3(n-1)") == (5,)
    rec = thm32_backward_record(P("24,22,12,12,8"), "n+2")
    assert rec.mu == (22, 22, 12, 12, 8) and rec.target == Target(Family.C, 76)


def test_converse_domain_errors():
    with pytest.raises(DomainError):
        thm31_backward(P("5,4"), "n")  # largest part odd
    with pytest.raises(DomainError):
        thm32_backward(P("8,8"), "n+2")  # largest part repeated
    with pytest.raises(DomainError):
        thm31_backward(P("4"), "n+2")
    with pytest.raises(DomainError):
        thm32_backward(P("4"), "n")


def _source(rec, theorem):
    diff = rec.target.n - rec.input.size
    return {(T31, 0): "n", (T31, -1): "n-1", (T32, 2): "n+2", (T32, -1): "n-1"}[(theorem, diff)]


@pytest.mark.parametrize("theorem, lo, hi", [(T31, 2, 26), (T32, 3, 24)])
def test_roundtrip_forward(theorem, lo, hi):
    for n in range(lo, hi + 1):
        for p in enumerate_family(n, Family.C):
            rec = bij.FORWARD[theorem](p)
            back = bij.BACKWARD[theorem](rec.output, _source(rec, theorem))
            assert back.output == p


@st.composite
def c_partition(draw, lo):
    parts = draw(st.lists(st.integers(1, 60).filter(lambda x: x % 4 != 2), min_size=1, max_size=25))
    p = Partition(parts)
    if p.size < lo:
        p = Partition(parts + [1] * (lo - p.size))
    return p


@given(c_partition(2))
def test_thm31_roundtrip_random(p):
    rec = thm31_forward(p)
    assert is_in_family(rec.output, Family.O1)
    assert thm31_backward(rec.output, _source(rec, T31)) == p


@given(c_partition(3))
def test_thm32_roundtrip_random(p):
    rec = thm32_forward(p)
    assert is_in_family(rec.output, Family.O3)
    assert thm32_backward(rec.output, _source(rec, T32)) == p


def test_record_serialization():
    rec = thm31_forward(P("11,8,5,5,5,4,3"))
    data = rec.to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["case"] == "7" and data["target"] == "O1(40)" and data["output"] == [10, 10, 8, 5, 4, 3]
    text = rec.to_text()
    assert "output    (10^2,8,5,4,3)" in text
    assert "case      7" in text


def test_parse_theorem():
    assert bij.parse_theorem("3.1") == T31 and bij.parse_theorem("T32") == T32
    with pytest.raises(ValueError):
        bij.parse_theorem("3.3")
