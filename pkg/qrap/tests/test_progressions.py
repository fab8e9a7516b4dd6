"""
progressions 모듈 테스트
정규화, γ, defect, overlap diagram 을 독립 오라클과 비교합니다.
"""

import random
from math import gcd

import pytest

from qrap.core.progressions import (
    alpha,
    ap_member,
    defect_and_cardinality,
    diagram_columns,
    gamma,
    normalize,
    overlap_diagram,
    shift_family_for_steps,
    short_quotients,
)
from qrap.errors import DomainError
from qrap.models import FamilySpec


def _ap(a, b, s):
    return FamilySpec(kind="ap", a=tuple(a), b=tuple(b), s=s)


# ────────────────────────────────
# normalize
# ────────────────────────────────
@pytest.mark.parametrize("a, b, s, B, S", [
    ((0, 0), (1, 2), 1, (1, 2), ((0,), (0,))),
    ((0, 2), (1, 1), 2, (1,), ((0, 1, 2, 3),)),
    ((0, 1), (2, 2), 2, (2,), ((0, 1, 2, 3),)),
])
def test_normalize_examples(a, b, s, B, S):
    f = normalize(_ap(a, b, s))
    assert f.B == B
    assert f.S == S


def test_normalize_shift_and_normalized_kinds():
    assert normalize(FamilySpec(kind="shift", Z=(3, 0, 1))).S == ((0, 1, 3),)
    spec = FamilySpec(kind="normalized", B=(1, 2), S=((1,), (1,)))
    assert normalize(spec).B == (1, 2)


def test_normalize_preserves_membership():
    """정규형의 n 번째 원소 = ap 정의의 n 번째 원소 (n ≥ 1)"""
    rng = random.Random(31)
    for _ in range(100):
        m = rng.randint(1, 4)
        pairs = set()
        while len(pairs) < m:
            pairs.add((rng.randint(0, 30), rng.randint(1, 5)))
        a, b = zip(*sorted(pairs))
        spec = _ap(a, b, rng.randint(1, 6))
        f = normalize(spec)
        for n in range(1, 51):
            assert f.member(n) == ap_member(spec, n)


def test_ap_member_starts_at_zero():
    spec = _ap((1,), (3,), 3)
    assert ap_member(spec, 0) == {1, 4, 7}
    with pytest.raises(DomainError):
        ap_member(spec, -1)


# ────────────────────────────────
# γ
# ────────────────────────────────
@pytest.mark.parametrize("b, s, expected", [((1,), 5, 5), ((1, 2), 3, 4), ((2, 3), 4, 6), ((1, 2, 3), 7, 13)])
def test_gamma_brute(b, s, expected):
    assert gamma(b, s) == expected


def test_gamma_closed_form_examples():
    assert gamma((2, 3), 4, mode="closed_form") == 6
    assert gamma((1, 2, 3), 7, mode="closed_form") == 13


def test_gamma_closed_form_matches_brute():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        k = rng.randint(2, 4)
        b = sorted(rng.sample(range(1, 31), k))
        if any(gcd(x, y) != 1 for i, x in enumerate(b) for y in b[i + 1:]):
            continue
        s = rng.randint(1, 20)
        assert gamma(b, s, "closed_form") == gamma(b, s, "brute")
        checked += 1


@pytest.mark.parametrize("b", [(2, 4), (3, 2), (5,)])
def test_gamma_closed_form_domain(b):
    with pytest.raises(DomainError):
        gamma(b, 4, mode="closed_form")


def test_shift_family_for_steps():
    spec = shift_family_for_steps((1, 2), 3)
    assert spec.Z == (0, 1, 2, 4)
    assert len(spec.Z) == gamma((1, 2), 3)


# ────────────────────────────────
# defect / α
# ────────────────────────────────
@pytest.mark.parametrize("a, b, s, expected", [
    ((0,), 3, 4, (0, 4)),
    ((0, 2), 1, 3, (1, 5)),
    ((0, 4), 2, 3, (1, 5)),
    ((0, 7), 1, 3, (0, 6)),
])
def test_defect_examples(a, b, s, expected):
    assert defect_and_cardinality(a, b, s) == expected


def test_defect_matches_direct_union():
    rng = random.Random(2024)
    for _ in range(500):
        t = rng.randint(1, 6)
        a = rng.sample(range(0, 101), t)
        b = rng.randint(1, 100)
        s = rng.randint(1, 12)
        defect, size = defect_and_cardinality(a, b, s)
        union = {x + b * i for x in a for i in range(s)}
        assert size == len(union)
        assert (defect == 0) == (len(union) == s * t)


def test_alpha_examples():
    spec = _ap((0, 2), (1, 1), 2)
    assert alpha(normalize(spec), spec) == 4
    spec = _ap((0, 1), (1, 1), 2)
    assert alpha(normalize(spec), spec) == 3


def test_alpha_identity_random():
    rng = random.Random(99)
    for _ in range(200):
        m = rng.randint(1, 5)
        pairs = set()
        while len(pairs) < m:
            pairs.add((rng.randint(0, 20), rng.randint(1, 4)))
        a, b = zip(*pairs)
        spec = _ap(a, b, rng.randint(1, 8))
        alpha(normalize(spec), spec)  # ConsistencyError 가 없어야 함


def test_admissible_alpha_is_ks():
    spec = _ap((1, 6, 40), (1, 2, 8), 5)
    assert alpha(normalize(spec), spec) == 15


def test_short_quotients():
    # 6·1 - 1·2 = 4 = 2·(1·2): q = 2
    assert short_quotients(_ap((1, 6), (1, 2), 3)) == [(1, 2, 2)]
    assert short_quotients(_ap((1, 6), (1, 2), 2)) == []
    assert short_quotients(_ap((0, 1), (1, 1), 3)) == []


# ────────────────────────────────
# overlap diagram
# ────────────────────────────────
def test_overlap_diagram_single_block():
    d = overlap_diagram((3, 2, 2), 8)
    assert len(d.blocks) == 1
    assert d.blocks[0].support == (1, 4)
    assert d.blocks[0].columns == 15
    assert d.total_columns == 15


def test_overlap_diagram_no_blocks():
    d = overlap_diagram((8, 8), 8)
    assert d.blocks == ()
    assert d.total_columns == 24


def test_overlap_diagram_two_blocks():
    d = overlap_diagram((1, 5, 1), 3)
    assert [b.support for b in d.blocks] == [(1, 2), (3, 4)]
    assert [b.gaps for b in d.blocks] == [(1,), (1,)]


def test_overlap_diagram_single_row():
    d = overlap_diagram((), 4)
    assert d.blocks == ()
    assert d.total_columns == 4


def test_overlap_diagram_matches_geometry():
    rng = random.Random(5)
    for _ in range(300):
        s = rng.randint(1, 10)
        gaps = tuple(rng.randint(1, 14) for _ in range(rng.randint(0, 6)))
        d = overlap_diagram(gaps, s)
        assert d.total_columns == len(diagram_columns(gaps, s))
        for left, right in zip(d.blocks, d.blocks[1:]):
            assert left.support[1] < right.support[0]


def test_overlap_diagram_rejects_bad_gaps():
    with pytest.raises(DomainError):
        overlap_diagram((0, 2), 3)
