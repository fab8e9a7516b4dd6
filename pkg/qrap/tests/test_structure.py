"""
structure 모듈 테스트
analyze / enumerate_E / quotient diagram / 생성기를 서로 교차 검증합니다.
"""

import random
from fractions import Fraction

import pytest

from qrap.core.progressions import normalize, short_quotients
from qrap.core.structure import (
    analyze,
    enumerate_E,
    generate_admissible,
    kappa,
    quotient_diagram_e,
    steps_for_diagrams,
)
from qrap.errors import AdmissibilityError, ArithmeticOverflowError, DomainError, InstanceTooLargeError
from qrap.models import Branch, FamilySpec, NormalizedFamily


def _family(B, S):
    return NormalizedFamily(B=tuple(B), S=tuple(tuple(row) for row in S))


def _random_family(rng):
    k = rng.randint(1, 3)
    B = rng.sample(range(1, 7), k)
    S = [rng.sample(range(0, 21), rng.randint(1, 4)) for _ in range(k)]
    return _family(B, S)


# ────────────────────────────────
# analyze
# ────────────────────────────────
def test_analyze_oscillating_example():
    r = analyze(_family((1, 2), ((0,), (0,))))
    assert [(entry.K, entry.T) for entry in r.kmax] == [((1, 2), (Fraction(0),))]
    assert r.lam == ((1, 2),)
    assert (r.alpha, r.bmax, r.e) == (2, 2, 1)
    assert r.branch is Branch.OSCILLATING


def test_analyze_generic_example():
    r = analyze(_family((1, 2), ((1,), (1,))))
    assert [entry.K for entry in r.kmax] == [(1,), (2,)]
    assert r.lam == ()
    assert r.e == 0
    assert r.branch is Branch.GENERIC


def test_analyze_square_example():
    r = analyze(_family((1, 4), ((0,), (0,))))
    assert r.lam == ((1, 2),)
    assert r.e == 1
    assert r.branch is Branch.SQUARE


def test_report_document_is_canonical():
    doc = analyze(_family((1, 2), ((0,), (0,)))).to_document()
    assert doc["lambda"] == [[1, 2]]
    assert doc["kmax"] == [{"K": [1, 2], "T": ["0/1"]}]
    assert doc["branch"] == "thm61_ii_c"


@pytest.mark.parametrize(
    "B, S, value",
    [((1, 2), ((1,), (1,)), "thm61_i"), ((1, 4), ((0,), (0,)), "thm61_ii_b"), ((1, 2), ((0,), (0,)), "thm61_ii_c")],
)
def test_branch_values_in_report(B, S, value):
    assert analyze(_family(B, S)).to_document()["branch"] == value


def test_analyze_invariants_random():
    rng = random.Random(11)
    for _ in range(200):
        r = analyze(_random_family(rng))
        assert (r.e == 0) == (r.lam == ())
        assert (r.e == 0) == all(len(entry.K) == 1 for entry in r.kmax)
        assert list(r.lam) == sorted(set(r.lam))
        assert all(len(I) % 2 == 0 for I in r.lam)


def test_kappa_contains_every_row():
    f = _family((1, 3), ((0, 1), (3,)))
    K_sets = [K for K, _ in kappa(f)]
    assert K_sets == [(1,), (2,), (1, 2)]
    assert dict(kappa(f))[(1, 2)] == frozenset({Fraction(1)})


def test_subset_cap(monkeypatch):
    from qrap import config

    monkeypatch.setenv("QRAP_SUBSET_CAP", "2")
    config.get_settings.cache_clear()
    try:
        with pytest.raises(InstanceTooLargeError):
            analyze(_family((1, 2, 3), ((0,), (0,), (0,))))
    finally:
        monkeypatch.delenv("QRAP_SUBSET_CAP")
        config.get_settings.cache_clear()


# ────────────────────────────────
# enumerate_E
# ────────────────────────────────
def test_enumerate_E_examples():
    assert enumerate_E(_family((1, 2), ((0,), (0,)))) == {frozenset({(1, 0), (2, 0)})}
    assert enumerate_E(_family((1,), ((0, 1),))) == set()
    assert enumerate_E(_family((1, 2), ((1,), (1,)))) == set()


def test_enumerate_E_size_is_power_of_two():
    rng = random.Random(42)
    for _ in range(200):
        f = _random_family(rng)
        assert len(enumerate_E(f)) == 2 ** analyze(f).e - 1


def test_enumerate_E_cap():
    with pytest.raises(InstanceTooLargeError):
        enumerate_E(_family((1,), (tuple(range(25)),)))


# ────────────────────────────────
# 조건 "몫이 s-1 을 넘음" ⇔ generic
# ────────────────────────────────
def test_generic_branch_iff_no_short_quotient():
    rng = random.Random(77)
    for _ in range(200):
        m = rng.randint(1, 4)
        pairs = set()
        while len(pairs) < m:
            pairs.add((rng.randint(0, 24), rng.randint(1, 6)))
        a, b = zip(*pairs)
        spec = FamilySpec(kind="ap", a=a, b=b, s=rng.randint(1, 5))
        generic = analyze(normalize(spec)).branch is Branch.GENERIC
        assert generic == (short_quotients(spec) == [])


# ────────────────────────────────
# quotient diagram
# ────────────────────────────────
def test_quotient_diagram_k2():
    for s in range(2, 7):
        for q in range(1, s):
            spec = generate_admissible((q,), 1, 1, (2,), s=s)
            diagram, e, lam = quotient_diagram_e(spec)
            assert e == s - q
            assert lam == [(1, 2)]
            assert len(diagram.diagrams) == 1


def test_quotient_diagram_minimal_and_maximal():
    k, s = 5, 4
    _, e, _ = quotient_diagram_e(generate_admissible((s - 1,) * (k - 1), 1, 1, (2,) * (k - 1), s=s))
    assert e == k - 1

    for k in (3, 4, 5):
        _, e, lam = quotient_diagram_e(generate_admissible((1,) * (k - 1), 1, 1, (2,) * (k - 1), s=k))
        assert e == (k - 1) ** 2
        assert len(lam) == 2 ** (k - 1) - 1


def test_quotient_diagram_splits_at_long_gaps():
    spec = generate_admissible((1, 5, 2), 1, 1, (2, 2, 2), s=3)
    diagram, e, lam = quotient_diagram_e(spec)
    assert [d.rows for d in diagram.diagrams] == [(1, 2), (3, 4)]
    assert e == (3 - 1) + (3 - 2)
    assert lam == [(1, 2), (3, 4)]


def test_quotient_diagram_matches_analyze():
    rng = random.Random(8)
    for _ in range(100):
        k = rng.randint(2, 4)
        s = rng.randint(2, 5)
        d = tuple(rng.randint(1, s + 1) for _ in range(k - 1))
        t = tuple(rng.choice((2, 3, 4, 5)) for _ in range(k - 1))
        spec = generate_admissible(d, rng.randint(1, 9), rng.randint(1, 4), t, s=s)
        _, e, lam = quotient_diagram_e(spec)
        report = analyze(normalize(spec))
        assert e == report.e
        assert tuple(lam) == report.lam


def test_quotient_diagram_rejects_non_admissible():
    with pytest.raises(AdmissibilityError):
        quotient_diagram_e(FamilySpec(kind="ap", a=(1, 2), b=(1, 2), s=3))
    with pytest.raises(AdmissibilityError):
        quotient_diagram_e(FamilySpec(kind="ap", a=(0, 1), b=(3, 3), s=3))


# ────────────────────────────────
# generate_admissible
# ────────────────────────────────
def test_generate_admissible_example():
    spec = generate_admissible((2,), 1, 1, (2,))
    assert spec.a == (1, 6)
    assert spec.b == (1, 2)
    assert spec.s == 3


def test_generate_admissible_identity():
    rng = random.Random(3)
    for _ in range(100):
        k = rng.randint(2, 6)
        d = [rng.randint(1, 9) for _ in range(k - 1)]
        spec = generate_admissible(d, rng.randint(1, 20), rng.randint(1, 20), [rng.randint(2, 7) for _ in range(k - 1)])
        for i in range(k):
            for j in range(i):
                lhs = spec.a[i] * spec.b[j] - spec.a[j] * spec.b[i]
                assert lhs == sum(d[j:i]) * spec.b[i] * spec.b[j]


def test_generate_admissible_multiplier_variants():
    squares = generate_admissible((1, 2), 1, 1, (4, 4), s=3)
    assert analyze(normalize(squares)).branch is Branch.SQUARE
    primes = generate_admissible((1, 2), 1, 2, (3, 5), s=3)
    assert analyze(normalize(primes)).branch is Branch.OSCILLATING


def test_generate_admissible_errors():
    with pytest.raises(DomainError):
        generate_admissible((), 1, 1, ())
    with pytest.raises(DomainError):
        generate_admissible((1,), 1, 1, (1,))
    with pytest.raises(ArithmeticOverflowError):
        generate_admissible((1,) * 130, 1, 1, (2,) * 130)


def test_steps_for_diagrams():
    assert steps_for_diagrams([(1, 2), (2,)], 4) == (1, 2, 4, 2)
    with pytest.raises(DomainError):
        steps_for_diagrams([(4,)], 4)
