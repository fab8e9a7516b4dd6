"""
Arithmetic primitives
소수 생성(segmented sieve), Legendre 기호, 정수 판정 함수.
다른 모든 모듈이 이 모듈의 ResidueClassifier 를 통해 χ_p 를 조회합니다.
"""

import logging
from math import isqrt
from typing import List, Optional

import numpy as np

from qrap.config import get_settings
from qrap.errors import DomainError, RangeTooLargeError

logger = logging.getLogger(__name__)

# 2^64 이하에서 결정적인 Miller-Rabin 증인
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SEGMENT = 1 << 20
# x² 가 int64 에 들어가는 한계
_TABLE_LIMIT = 1 << 32


# ────────────────────────────────
# 정수 판정
# ────────────────────────────────
def is_square(n: int) -> bool:
    """n 이 완전제곱수인지 (정수 제곱근, 부동소수점 없음)"""
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_prime(n: int) -> bool:
    """결정적 Miller-Rabin"""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Euler 판정법으로 χ_p(a) 한 번 계산"""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# ────────────────────────────────
# 소수 생성
# ────────────────────────────────
def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for q in range(2, isqrt(limit) + 1):
        if mask[q]:
            mask[q * q::q] = False
    return np.flatnonzero(mask).astype(np.int64)


def primes_in_range(lo: int, hi: int, cap: Optional[int] = None) -> List[int]:
    """[lo, hi] 의 소수를 오름차순으로 (segmented sieve)"""
    if cap is None:
        cap = get_settings().prime_cap
    if lo > hi:
        raise DomainError(f"empty range: lo {lo} exceeds hi {hi}")
    if hi > cap:
        raise RangeTooLargeError(hi, cap)

    lo = max(lo, 2)
    if hi < lo:
        return []

    base = _simple_sieve(isqrt(hi))
    primes: List[int] = []
    low = lo
    while low <= hi:
        high = min(low + _SEGMENT, hi + 1)  # exclusive
        mask = np.ones(high - low, dtype=bool)
        for q in base:
            q = int(q)
            start = max(q * q, ((low + q - 1) // q) * q)
            if start >= high:
                continue
            mask[start - low::q] = False
        primes.extend((low + np.flatnonzero(mask)).tolist())
        low = high

    logger.debug("primes_in_range(%d, %d): %d primes", lo, hi, len(primes))
    return primes


# ────────────────────────────────
# χ_p
# ────────────────────────────────
class ResidueClassifier:
    """홀수 소수 p 와 이차잉여 테이블 (생성 후 불변)"""

    def __init__(self, p: int, build_table: Optional[bool] = None):
        if p < 3 or not is_prime(p):
            raise DomainError(f"{p} is not an odd prime")
        self.p = p
        if build_table is None:
            build_table = p <= get_settings().table_threshold
        self._qr: Optional[np.ndarray] = None
        self._chi: Optional[np.ndarray] = None
        if build_table:
            self._build()

    def _build(self) -> None:
        p = self.p
        if p >= _TABLE_LIMIT:
            raise DomainError(f"residue table for p={p} exceeds the 64-bit squaring range")
        x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
        qr = np.zeros(p, dtype=bool)
        qr[(x * x) % p] = True
        qr.setflags(write=False)

        chi = np.where(qr, 1, -1).astype(np.int8)
        chi[0] = 0
        chi.setflags(write=False)

        self._qr, self._chi = qr, chi
        logger.debug("built residue table for p=%d", p)

    @property
    def has_table(self) -> bool:
        return self._qr is not None

    @property
    def qr_table(self) -> np.ndarray:
        """길이 p 의 bool 배열; index 0 은 사용하지 않음"""
        if self._qr is None:
            self._build()
        return self._qr

    @property
    def chi_table(self) -> np.ndarray:
        """χ_p(i), i ∈ [0, p-1] 를 int8 로"""
        if self._chi is None:
            self._build()
        return self._chi

    def chi(self, a: int) -> int:
        a %= self.p
        if self._chi is None:
            return legendre(a, self.p)
        return int(self._chi[a])

    def residues(self) -> np.ndarray:
        """R(p)"""
        return np.flatnonzero(self.qr_table)

    def nonresidues(self) -> np.ndarray:
        """NR(p)"""
        nr = np.flatnonzero(~self.qr_table)
        return nr[nr != 0]

    def __repr__(self) -> str:
        return f"ResidueClassifier(p={self.p}, table={self.has_table})"

