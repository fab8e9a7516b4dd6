"""
Asymptotic predictions
각 카운트 모드의 주항 계수와 오차 한계를 만들고,
소수 구간에서 정확한 카운트와 대조해 검증 보고서를 만듭니다.
"""

import bisect
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence

from qrap.config import get_settings
from qrap.core.arith import ResidueClassifier, primes_in_range
from qrap.core.counting import (
    count_constant_sign,
    count_eta,
    count_pattern,
    count_progression_pattern,
    count_progression_support,
    count_support,
)
from qrap.core.progressions import gamma, shift_family_for_steps
from qrap.core.signatures import signature
from qrap.core.structure import analyze
from qrap.errors import DomainError, UnsupportedTargetError
from qrap.models import (
    Branch,
    ConstantSignTarget,
    CountRecord,
    EtaTarget,
    FamilySpec,
    NormalizedFamily,
    Prediction,
    ProgressionPatternTarget,
    ProgressionSupportTarget,
    ShiftPatternTarget,
    ShiftSupportTarget,
    StepsPatternTarget,
    StepsSupportTarget,
    StructureReport,
    Target,
    VerificationReport,
    VerificationRow,
    VerificationSummary,
    format_fraction,
)

logger = logging.getLogger(__name__)

BOUND_SLACK = 1 + 1e-12
SAMPLES_PER_DECADE = 200


@lru_cache(maxsize=64)
def _structure(family: NormalizedFamily) -> StructureReport:
    return analyze(family)


def _check_pattern(eps: Sequence[int], length: int) -> None:
    if len(eps) != length:
        raise UnsupportedTargetError(f"sign vector has {len(eps)} entries but the family needs {length}")
    if any(v not in (-1, 1) for v in eps):
        raise UnsupportedTargetError("sign vector entries must be +1 or -1")


def _eta_branch(report: StructureReport, eta: Sequence[int]) -> Branch:
    """η 가 모든 I 위에서 상수이고 곱이 제곱수이면 Π₋ 는 비어 있음"""
    if not report.lam:
        return Branch.GENERIC
    if report.branch is Branch.SQUARE and all(len({eta[i - 1] for i in I}) == 1 for I in report.lam):
        return Branch.SQUARE
    return Branch.OSCILLATING


# ────────────────────────────────
# 예측
# ────────────────────────────────
def predict(target: Target) -> Prediction:
    """target 의 주항 계수, 유효 범위, 오차 한계"""
    if isinstance(target, ShiftPatternTarget):
        _check_pattern(target.eps, len(target.Z))
        size = len(target.Z)
        return Prediction(coefficient=Fraction(1, 2**size), valid_on="all_primes",
                          bound_form="sqrt", bound_constant=Fraction(2 * size), exponent=size)

    if isinstance(target, ShiftSupportTarget):
        span = 1 + max(target.Z) - min(target.Z)
        return Prediction(coefficient=Fraction(1, 2**span), valid_on="all_primes",
                          bound_form="sqrt", bound_constant=Fraction(2 * span), exponent=span)

    if isinstance(target, StepsPatternTarget):
        g = gamma(target.b, target.s)
        _check_pattern(target.eps, g)
        return Prediction(coefficient=Fraction(1, 2**g), valid_on="all_primes",
                          bound_form="sqrt", bound_constant=Fraction(2 * g), exponent=g)

    if isinstance(target, StepsSupportTarget):
        span = 1 + max(target.b) * (target.s - 1)
        return Prediction(coefficient=Fraction(1, 2**span), valid_on="all_primes",
                          bound_form="sqrt", bound_constant=Fraction(2 * span), exponent=span)

    if isinstance(target, (ConstantSignTarget, EtaTarget)):
        report = _structure(target.family)
        if isinstance(target, EtaTarget):
            if len(target.eta) != target.family.k:
                raise UnsupportedTargetError(f"eta needs {target.family.k} entries")
            branch = _eta_branch(report, target.eta)
        else:
            _check_pattern((target.eps,), 1)
            branch = report.branch
        exponent = report.alpha if branch is Branch.GENERIC else report.alpha - report.e
        oscillating = branch is Branch.OSCILLATING
        return Prediction(
            coefficient=Fraction(1, report.bmax * 2**exponent),
            valid_on="pi_plus_only" if oscillating else "all_primes",
            zero_on_pi_minus=oscillating,
            bound_form="sqrt_log",
            bound_constant=Fraction(1 + 2 * report.alpha),
            branch=branch,
            exponent=exponent,
        )

    if isinstance(target, ProgressionPatternTarget):
        _check_pattern(target.eps, target.s)
        return Prediction(coefficient=Fraction(1, target.b * 2**target.s), valid_on="all_primes",
                          bound_form="sqrt_log", bound_constant=Fraction(1 + 2 * target.s), exponent=target.s)

    if isinstance(target, ProgressionSupportTarget):
        span = 1 + target.b * (target.s - 1)
        return Prediction(coefficient=Fraction(1, target.b * 2**span), valid_on="all_primes",
                          bound_form="sqrt_log", bound_constant=Fraction(1 + 2 * span), exponent=span)

    raise UnsupportedTargetError(f"no prediction for target {type(target).__name__}")


def error_bound(prediction: Prediction, p: int) -> float:
    """c·√p 또는 c·√p·log p (자연로그), 경계 비교용 여유 포함"""
    bound = float(prediction.bound_constant) * math.sqrt(p)
    if prediction.bound_form == "sqrt_log":
        bound *= math.log(p)
    return bound * BOUND_SLACK


def main_term(target: Target, p: int) -> Fraction:
    """2^{e-α}(1 + r(p)) (Π₊) / 0 (Π₋); Λ 가 비면 2^{-α}(1 + r(p))"""
    if not isinstance(target, (ConstantSignTarget, EtaTarget)):
        raise UnsupportedTargetError("main_term applies to constant-sign and eta targets")
    family = target.family
    report = _structure(family)
    shifts = 1 + family.last_shift(p)
    if not report.lam:
        return Fraction(max(shifts, 0), 2**report.alpha)
    eta = target.eta if isinstance(target, EtaTarget) else None
    sig = signature(p, report, eta)
    if sig.cls == "not_allowable":
        raise DomainError(f"{p} divides an element of B")
    if sig.cls == "non_positive":
        return Fraction(0)
    return Fraction(max(shifts, 0), 2 ** (report.alpha - report.e))


# ────────────────────────────────
# 카운트
# ────────────────────────────────
def count_for_target(target: Target, c: ResidueClassifier) -> CountRecord:
    """target 에 맞는 정확한 카운터 호출"""
    if isinstance(target, ShiftPatternTarget):
        return count_pattern(c, FamilySpec(kind="shift", Z=target.Z), target.eps)
    if isinstance(target, ShiftSupportTarget):
        return count_support(c, FamilySpec(kind="shift", Z=target.Z), target.side)
    if isinstance(target, StepsPatternTarget):
        return count_pattern(c, shift_family_for_steps(target.b, target.s), target.eps)
    if isinstance(target, StepsSupportTarget):
        return count_support(c, shift_family_for_steps(target.b, target.s), target.side)
    if isinstance(target, ConstantSignTarget):
        return count_constant_sign(c, target.family, target.eps)
    if isinstance(target, EtaTarget):
        return count_eta(c, target.family, target.eta)
    if isinstance(target, ProgressionPatternTarget):
        return count_progression_pattern(c, target.a, target.b, target.s, target.eps)
    if isinstance(target, ProgressionSupportTarget):
        return count_progression_support(c, target.a, target.b, target.s, target.side)
    raise UnsupportedTargetError(f"no counter for target {type(target).__name__}")


def _pi_class(target: Target, p: int) -> str:
    if not isinstance(target, (ConstantSignTarget, EtaTarget)):
        return "all"
    report = _structure(target.family)
    if not report.lam:
        if any(b % p == 0 for b in report.B):
            return "not_allowable"
        return "all"
    eta = target.eta if isinstance(target, EtaTarget) else None
    return signature(p, report, eta).cls


# ────────────────────────────────
# 검증
# ────────────────────────────────
def sample_primes(lo: int, hi: int, sampling: str = "stride", cap: Optional[int] = None) -> List[int]:
    """홀수 소수: all 이면 전부, stride 면 10배 구간당 약 200개를 로그 균등하게"""
    if lo < 3:
        raise DomainError("lo must be at least 3")
    primes = primes_in_range(lo, hi, cap=cap)
    if sampling == "all" or len(primes) <= 1:
        return primes
    if sampling != "stride":
        raise DomainError(f"unknown sampling mode '{sampling}'")

    decades = math.log10(primes[-1] / primes[0])
    wanted = max(1, math.ceil(SAMPLES_PER_DECADE * decades))
    if wanted >= len(primes):
        return primes
    chosen = set()
    for k in range(wanted + 1):
        target = primes[0] * (primes[-1] / primes[0]) ** (k / wanted)
        index = min(bisect.bisect_left(primes, target), len(primes) - 1)
        chosen.add(primes[index])
    return sorted(chosen)


def verify_prime(target: Target, prediction: Prediction, p: int, assert_floor: int) -> VerificationRow:
    """소수 하나에 대한 정확한 카운트와 예측 비교"""
    c = ResidueClassifier(p, build_table=True)
    count = count_for_target(target, c).count
    pi_class = _pi_class(target, p)
    bound = error_bound(prediction, p)

    if prediction.zero_on_pi_minus and pi_class == "non_positive":
        predicted = Fraction(0)
        error = Fraction(count)
        passed = count == 0
        asserted = True
    else:
        predicted = prediction.coefficient * p
        error = abs(count - predicted)
        passed = error <= bound
        asserted = p >= assert_floor and pi_class != "not_allowable"

    logger.debug("p=%d count=%d predicted=%s pass=%s", p, count, predicted, passed)
    return VerificationRow(
        p=p, count=count, predicted=predicted, error=error, bound=bound,
        passed=passed, asserted=asserted, pi_class=pi_class,
    )


def summarize(
    target: Target,
    prediction: Prediction,
    rows: Sequence[VerificationRow],
    assert_floor: int,
) -> VerificationSummary:
    """max ratio, 한계 위반 수, Π₋ 의 정확한 0 확인"""
    ratios = [
        abs(row.count / (prediction.coefficient * row.p) - 1)
        for row in rows
        if row.p >= assert_floor and row.pi_class in ("all", "positive")
    ]
    pi_minus = [row for row in rows if row.pi_class == "non_positive"]
    return VerificationSummary(
        target=target.model_dump(mode="json"),
        coefficient=format_fraction(prediction.coefficient),
        branch=prediction.branch,
        primes=len(rows),
        max_ratio=float(max(ratios)) if ratios else None,
        violations=sum(row.asserted and not row.passed for row in rows),
        pi_minus_primes=len(pi_minus),
        pi_minus_all_zero=all(row.count == 0 for row in pi_minus) if prediction.zero_on_pi_minus else None,
        assert_floor=assert_floor,
    )


def verify_range(
    target: Target,
    lo: int,
    hi: int,
    sampling: str = "stride",
    assert_floor: Optional[int] = None,
    cap: Optional[int] = None,
) -> VerificationReport:
    """[lo, hi] 의 (표본) 소수마다 정확한 카운트와 예측을 비교"""
    if assert_floor is None:
        assert_floor = get_settings().assert_floor
    prediction = predict(target)
    rows = [verify_prime(target, prediction, p, assert_floor) for p in sample_primes(lo, hi, sampling, cap)]
    summary = summarize(target, prediction, rows, assert_floor)
    logger.info("verify [%d, %d]: %d primes, %d violations, max ratio %s",
                lo, hi, summary.primes, summary.violations, summary.max_ratio)
    return VerificationReport(rows=tuple(rows), summary=summary)
