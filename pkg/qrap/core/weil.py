"""
Character sums
서로 다른 일차식들의 곱에 대한 완전/불완전 문자합과 그 상한을 계산합니다.
"""

import logging
import math
import random
from typing import List, Optional, Sequence

import numpy as np

from qrap.core.arith import ResidueClassifier, primes_in_range
from qrap.errors import DomainError
from qrap.models import CharSumResult

logger = logging.getLogger(__name__)


def char_sum(c: ResidueClassifier, shifts: Sequence[int], range_end: Optional[int] = None) -> CharSumResult:
    """Σ_{x=0}^{N} χ_p(Π_i (x + shift_i)); range_end 가 None 이면 x 는 [0, p-1] 전체"""
    p = c.p
    if not shifts:
        raise DomainError("at least one shift is required")
    reduced = [r % p for r in shifts]
    if len(set(reduced)) != len(reduced):
        raise DomainError(f"shifts {tuple(shifts)} have repeated roots mod {p}")
    if range_end is not None and not 0 <= range_end <= p - 1:
        raise DomainError(f"range end {range_end} outside [0, {p - 1}]")

    end = p - 1 if range_end is None else range_end
    x = np.arange(0, end + 1, dtype=np.int64)
    values = np.ones_like(x)
    for r in reduced:
        values = values * ((x + r) % p) % p
    total = int(c.chi_table[values].sum(dtype=np.int64))

    d = len(reduced)
    bound = 2 * d * math.sqrt(p)
    if range_end is not None:
        bound *= math.log(p)

    return CharSumResult(
        p=p,
        shifts=tuple(shifts),
        roots=tuple(sorted((-r) % p for r in reduced)),
        range_end=range_end,
        value=total,
        bound=bound,
        within_bound=abs(total) <= bound,
    )


def weil_for_prime(p: int, per_prime: int, max_degree: int, seed: int) -> List[CharSumResult]:
    """p 하나에 대해 무작위 근 집합 per_prime 개의 완전합과 불완전합"""
    rng = random.Random(f"{seed}:{p}")
    c = ResidueClassifier(p, build_table=True)
    results = []
    for _ in range(per_prime):
        d = rng.randint(1, min(max_degree, p))
        shifts = rng.sample(range(p), d)
        results.append(char_sum(c, shifts))
        results.append(char_sum(c, shifts, range_end=rng.randrange(0, p)))
    return results


def weil_sweep(
    lo: int,
    hi: int,
    per_prime: int = 50,
    max_degree: int = 6,
    seed: int = 0,
    cap: Optional[int] = None,
) -> List[CharSumResult]:
    """[lo, hi] 의 모든 홀수 소수에 대한 문자합 (seed, p 별로 결정적)"""
    if per_prime < 1 or max_degree < 1:
        raise DomainError("per_prime and max_degree must be positive")
    results: List[CharSumResult] = []
    for p in primes_in_range(max(lo, 3), hi, cap=cap):
        results.extend(weil_for_prime(p, per_prime, max_degree, seed))

    violations = sum(not r.within_bound for r in results)
    logger.info("weil_sweep [%d, %d]: %d sums, %d violations", lo, hi, len(results), violations)
    return results
