"""
signatures 모듈 테스트
"""

import random

import pytest

from qrap.core.arith import primes_in_range
from qrap.core.signatures import classify_primes, is_monochromatic, signature
from qrap.core.structure import analyze
from qrap.errors import NoSignatureError
from qrap.models import NormalizedFamily


def _report(B, S):
    return analyze(NormalizedFamily(B=tuple(B), S=tuple(tuple(row) for row in S)))


TWO = _report((1, 2), ((0,), (0,)))
FOUR = _report((1, 4), ((0,), (0,)))


def test_signature_examples():
    sig = signature(7, TWO)
    assert [v.value for v in sig.values] == [1]
    assert sig.cls == "positive"

    sig = signature(5, TWO)
    assert [v.value for v in sig.values] == [-1]
    assert sig.cls == "non_positive"

    sig = signature(3, _report((1, 3), ((0,), (0,))))
    assert sig.cls == "not_allowable"
    assert not sig.allowable


def test_signature_requires_lambda():
    with pytest.raises(NoSignatureError):
        signature(7, _report((1, 2), ((1,), (1,))))


def test_classify_primes_mod_eight():
    classes = classify_primes(TWO, 3, 50)
    assert classes.pi_minus == (3, 5, 11, 13, 19, 29, 37, 43)
    assert classes.pi_plus == (7, 17, 23, 31, 41, 47)
    assert classes.skipped == ()


def test_classify_primes_square_product():
    classes = classify_primes(FOUR, 3, 100)
    assert classes.pi_minus == ()
    assert len(classes.pi_plus) == len(primes_in_range(3, 100))


def test_non_square_product_gives_both_classes():
    report = _report((2, 3, 5), ((0, 1), (0,), (0,)))
    classes = classify_primes(report, 3, 10**4)
    assert classes.pi_plus and classes.pi_minus
    assert classes.skipped == (3, 5)


def test_positive_iff_monochromatic():
    rng = random.Random(4)
    primes = primes_in_range(3, 1000)
    checked = 0
    while checked < 50:
        k = rng.randint(2, 3)
        B = rng.sample(range(1, 13), k)
        S = [rng.sample(range(0, 10), rng.randint(1, 3)) for _ in range(k)]
        report = _report(B, S)
        if not report.lam:
            continue
        checked += 1
        for p in primes:
            sig = signature(p, report)
            if not sig.allowable:
                continue
            mono = all(is_monochromatic(p, report.B, I) for I in report.lam)
            assert (sig.cls == "positive") == mono


def test_eta_plus_matches_plain_signature():
    report = _report((1, 2, 3), ((0,), (0,), (0,)))
    for p in primes_in_range(5, 500):
        assert signature(p, report, eta=(1, 1, 1)).values == signature(p, report).values


def test_eta_signature_flips_mixed_pairs():
    # η = (+1, -1): p = 5 에서 χ(1)·(-χ(2)) = +1
    sig = signature(5, TWO, eta=(1, -1))
    assert sig.cls == "positive"
    assert signature(7, TWO, eta=(1, -1)).cls == "non_positive"
