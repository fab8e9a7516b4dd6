"""
Prime signatures
(B, S)- / (B, S, η)-signature 를 계산하고 소수를 Π₊ / Π₋ 로 나눕니다.
"""

import logging
from math import prod
from typing import Optional, Sequence

from qrap.core.arith import is_prime, legendre, primes_in_range
from qrap.errors import DomainError, NoSignatureError
from qrap.models import PrimeClasses, SignatureReport, SignatureValue, StructureReport

logger = logging.getLogger(__name__)


def _check_eta(eta: Sequence[int], k: int) -> None:
    if len(eta) != k:
        raise DomainError(f"eta must have {k} entries, got {len(eta)}")
    if any(v not in (-1, 1) for v in eta):
        raise DomainError("eta entries must be +1 or -1")


def signature(p: int, report: StructureReport, eta: Optional[Sequence[int]] = None) -> SignatureReport:
    """Λ(𝒦) 의 각 I 에 대해 χ_p(Π b_i) (η 가 있으면 Π η(i)χ_p(b_i))"""
    if not report.lam:
        raise NoSignatureError("Lambda(K) is empty; the signature is undefined")
    if p < 3 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")
    if eta is not None:
        _check_eta(eta, len(report.B))

    if any(b % p == 0 for b in report.B):
        return SignatureReport(p=p, allowable=False, cls="not_allowable")

    values = []
    for I in report.lam:
        if eta is None:
            value = legendre(prod(report.B[i - 1] for i in I), p)
        else:
            value = prod(eta[i - 1] * legendre(report.B[i - 1], p) for i in I)
        values.append(SignatureValue(I=I, value=value))

    positive = all(v.value == 1 for v in values)
    return SignatureReport(
        p=p,
        allowable=True,
        values=tuple(values),
        cls="positive" if positive else "non_positive",
    )


def is_monochromatic(p: int, B: Sequence[int], I: Sequence[int]) -> bool:
    """{b_i : i ∈ I} 가 모두 잉여이거나 모두 비잉여인지"""
    return len({legendre(B[i - 1], p) for i in I}) == 1


def classify_primes(
    report: StructureReport,
    lo: int,
    hi: int,
    eta: Optional[Sequence[int]] = None,
) -> PrimeClasses:
    """[lo, hi] 의 홀수 소수를 Π₊ / Π₋ / 허용되지 않는 소수로 분류"""
    if not report.lam:
        raise NoSignatureError("Lambda(K) is empty; the signature is undefined")

    plus, minus, skipped = [], [], []
    for p in primes_in_range(max(lo, 3), hi) if hi >= 3 else []:
        sig = signature(p, report, eta)
        if sig.cls == "positive":
            plus.append(p)
        elif sig.cls == "non_positive":
            minus.append(p)
        else:
            skipped.append(p)

    logger.info("classify_primes [%d, %d]: %d plus, %d minus, %d skipped", lo, hi, len(plus), len(minus), len(skipped))
    return PrimeClasses(pi_plus=tuple(plus), pi_minus=tuple(minus), skipped=tuple(skipped))
