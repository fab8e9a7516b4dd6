"""
Exact counters
c_ε(p), c_ε(Z)(p), c_σ(Z)(p), c_η(p) 와 수열 통계량을 χ_p 테이블 위에서
numpy 벡터 연산으로 정확히 셉니다. 모든 점근 예측의 기준값입니다.

n ↦ ∪_i (b_i·n + S_i) 는 최솟값이 n 에 대해 순증가하므로 단사입니다.
따라서 서로 다른 집합의 수 = 조건을 만족하는 n 의 수 입니다.
"""

import logging
from typing import Dict, Literal, Optional, Sequence

import numpy as np

from qrap.config import get_settings
from qrap.core.arith import ResidueClassifier, primes_in_range
from qrap.errors import DomainError
from qrap.models import CountRecord, FamilySpec, NormalizedFamily

logger = logging.getLogger(__name__)

Side = Literal["residue", "nonresidue"]

_SIDE_SIGN = {"residue": 1, "nonresidue": -1, "plus": 1, "minus": -1}
_SEARCH_CHUNK = 10**6
# 빈 범위: b·n 을 int64 로 계산하지 않음
_NONE = np.zeros(0, dtype=bool)


def _side_sign(side: str) -> int:
    try:
        return _SIDE_SIGN[side]
    except KeyError:
        raise DomainError(f"unknown side '{side}'") from None


def _check_signs(signs: Sequence[int], length: int, name: str) -> None:
    if len(signs) != length:
        raise DomainError(f"{name} must have {length} entries, got {len(signs)}")
    if any(v not in (-1, 1) for v in signs):
        raise DomainError(f"{name} entries must be +1 or -1")


def _shift_mask(chi: np.ndarray, n: np.ndarray, required: Dict[int, int]) -> np.ndarray:
    """모든 offset 에 대해 χ(n + offset) = sign 인 n"""
    if n.size == 0:
        return _NONE
    ok = np.ones(n.shape, dtype=bool)
    for offset, sign in required.items():
        ok &= chi[n + offset] == sign
    return ok


def _shifts(last: int) -> np.ndarray:
    return np.arange(1, last + 1, dtype=np.int64) if last >= 1 else np.empty(0, dtype=np.int64)


def _sorted_Z(spec: FamilySpec):
    if spec.kind != "shift":
        raise DomainError("a shift spec is required")
    return spec.sorted_Z


# ────────────────────────────────
# AP(B, S)
# ────────────────────────────────
def _row_mask(c: ResidueClassifier, f: NormalizedFamily, row_signs: Sequence[int]) -> np.ndarray:
    chi = c.chi_table
    n = _shifts(f.last_shift(c.p))
    if n.size == 0:
        return _NONE
    ok = np.ones(n.shape, dtype=bool)
    for b, row, sign in zip(f.B, f.S, row_signs):
        for j in row:
            ok &= chi[b * n + j] == sign
    return ok


def count_constant_sign(c: ResidueClassifier, f: NormalizedFamily, eps: int) -> CountRecord:
    """χ_p 가 전부 eps 인 member 집합 ⊆ [1, p-1] 의 수"""
    _check_signs((eps,), 1, "eps")
    count = int(_row_mask(c, f, (eps,) * f.k).sum())
    return CountRecord(p=c.p, mode="constant_sign", signs=(eps,), count=count, family=f.to_spec())


def count_eta(c: ResidueClassifier, f: NormalizedFamily, eta: Sequence[int]) -> CountRecord:
    """행 i 의 원소가 모두 χ_p = η(i) 인 member 집합의 수"""
    eta = tuple(eta)
    _check_signs(eta, f.k, "eta")
    count = int(_row_mask(c, f, eta).sum())
    return CountRecord(p=c.p, mode="eta", signs=eta, count=count, family=f.to_spec())


# ────────────────────────────────
# S(Z)
# ────────────────────────────────
def count_pattern(c: ResidueClassifier, spec: FamilySpec, eps: Sequence[int]) -> CountRecord:
    """(n + Z, ε, p) 가 residue pattern 인 n ≥ 1 의 수"""
    Z = _sorted_Z(spec)
    eps = tuple(eps)
    _check_signs(eps, len(Z), "eps")
    n = _shifts(c.p - 1 - Z[-1])
    count = int(_shift_mask(c.chi_table, n, dict(zip(Z, eps))).sum())
    return CountRecord(p=c.p, mode="pattern", signs=eps, count=count, family=spec)


def count_support(c: ResidueClassifier, spec: FamilySpec, side: Side = "residue") -> CountRecord:
    """n + Z = R(p) ∩ [min, max] (또는 NR(p)) 인 n ≥ 1 의 수"""
    Z = _sorted_Z(spec)
    sign = _side_sign(side)
    n = _shifts(c.p - 1 - Z[-1])
    count = 0
    if n.size:
        members = set(Z)
        required = {z: sign for z in Z}
        required.update({x: -sign for x in range(Z[0], Z[-1] + 1) if x not in members})
        count = int(_shift_mask(c.chi_table, n, required).sum())
    return CountRecord(p=c.p, mode="support", side=side, count=count, family=spec)


# ────────────────────────────────
# AP(a, b; s), 단일 수열
# ────────────────────────────────
def _check_progression(a: int, b: int, s: int) -> None:
    if a < 0 or b < 1 or s < 1:
        raise DomainError("progression needs a >= 0, b >= 1, s >= 1")


def _progression_shifts(p: int, a: int, b: int, s: int, first: int) -> np.ndarray:
    """a + b·n ≥ 1 이고 a + b(n+s-1) ≤ p-1 인 n ≥ first"""
    first = max(first, 0 if a >= 1 else 1)
    last = (p - 1 - a) // b - (s - 1) if a <= p - 1 else -1
    if last < first:
        return np.empty(0, dtype=np.int64)
    return np.arange(first, last + 1, dtype=np.int64)


def _bounded_step(b: int, chi: np.ndarray) -> int:
    """b ≥ p 이면 범위 안의 항은 n = 0 뿐이므로 b 를 p 로 바꿔도 위치가 같음"""
    return min(b, chi.size)


def _pattern_mask(chi, n, a, b, eps) -> np.ndarray:
    if n.size == 0:
        return _NONE
    b = _bounded_step(b, chi)
    ok = np.ones(n.shape, dtype=bool)
    for i, sign in enumerate(eps):
        ok &= chi[a + b * (n + i)] == sign
    return ok


def _support_mask(chi, n, a, b, s, sign) -> np.ndarray:
    """항은 모두 sign, 항 사이의 정수는 모두 -sign"""
    if n.size == 0:
        return _NONE
    ok = _pattern_mask(chi, n, a, b, (sign,) * s)
    if b > 1 and s > 1:
        opposite = np.concatenate(([0], np.cumsum(chi == -sign, dtype=np.int64)))
        for i in range(s - 1):
            start = a + b * (n + i) + 1
            ok &= opposite[start + b - 1] - opposite[start] == b - 1
    return ok


def count_progression_pattern(c: ResidueClassifier, a: int, b: int, s: int, eps: Sequence[int]) -> CountRecord:
    """AP(a, b; s) (n ≥ 0) 의 residue pattern 수"""
    _check_progression(a, b, s)
    eps = tuple(eps)
    _check_signs(eps, s, "eps")
    n = _progression_shifts(c.p, a, b, s, first=0)
    count = int(_pattern_mask(c.chi_table, n, a, b, eps).sum())
    spec = FamilySpec(kind="ap", a=(a,), b=(b,), s=s)
    return CountRecord(p=c.p, mode="progression_pattern", signs=eps, count=count, family=spec)


def count_progression_support(c: ResidueClassifier, a: int, b: int, s: int, side: Side = "residue") -> CountRecord:
    """AP(a, b; s) (n ≥ 0) 중 support set 의 수"""
    _check_progression(a, b, s)
    sign = _side_sign(side)
    n = _progression_shifts(c.p, a, b, s, first=0)
    count = int(_support_mask(c.chi_table, n, a, b, s, sign).sum())
    spec = FamilySpec(kind="ap", a=(a,), b=(b,), s=s)
    return CountRecord(p=c.p, mode="progression_support", side=side, count=count, family=spec)


# ────────────────────────────────
# 통계량
# ────────────────────────────────
def longest_run(flags: np.ndarray) -> int:
    """연속된 True 의 최대 길이"""
    if flags.size == 0 or not flags.any():
        return 0
    padded = np.concatenate(([0], flags.astype(np.int8), [0]))
    edges = np.flatnonzero(np.diff(padded))
    return int((edges[1::2] - edges[::2]).max())


def _longest_support(chi: np.ndarray, terms: np.ndarray, b: int, sign: int) -> int:
    on_side = chi[terms] == sign
    if not on_side.any():
        return 0
    if terms.size < 2:
        return 1
    links = on_side[:-1] & on_side[1:]
    if b > 1:
        opposite = np.concatenate(([0], np.cumsum(chi == -sign, dtype=np.int64)))
        start = terms[:-1] + 1
        links &= opposite[start + b - 1] - opposite[start] == b - 1
    return longest_run(links) + 1


def statistics(
    c: ResidueClassifier,
    a: int,
    b: int,
    query: str,
    s: Optional[int] = None,
    eps: Optional[Sequence[int]] = None,
) -> int:
    """AP(a, b) 위의 n0, n1±, s0±, s1± (증인이 없으면 0)

    query: n0 (s, eps 필요), n1_plus / n1_minus (s 필요),
    s0_plus / s0_minus / s1_plus / s1_minus
    """
    _check_progression(a, b, 1)
    chi = c.chi_table

    if query in ("s0_plus", "s0_minus", "s1_plus", "s1_minus"):
        sign = _side_sign(query[3:])
        shifts = _progression_shifts(c.p, a, b, 1, first=0)
        if shifts.size == 0:
            return 0
        terms = a + _bounded_step(b, chi) * shifts
        if query.startswith("s0"):
            return longest_run(chi[terms] == sign)
        return _longest_support(chi, terms, b, sign)

    if query == "n0":
        if s is None or eps is None:
            raise DomainError("n0 requires s and eps")
        _check_signs(eps, s, "eps")
        n = _progression_shifts(c.p, a, b, s, first=1)
        hits = np.flatnonzero(_pattern_mask(chi, n, a, b, tuple(eps)))
    elif query in ("n1_plus", "n1_minus"):
        if s is None or s < 1:
            raise DomainError(f"{query} requires s >= 1")
        n = _progression_shifts(c.p, a, b, s, first=1)
        hits = np.flatnonzero(_support_mask(chi, n, a, b, s, _side_sign(query[3:])))
    else:
        raise DomainError(f"unknown statistics query '{query}'")

    return int(n[hits[0]]) if hits.size else 0


def _search(a: int, b: int, query: str, s: int, prime_cap: Optional[int]) -> Optional[int]:
    _check_progression(a, b, 1)
    if s < 1:
        raise DomainError("target length s must be at least 1")
    if prime_cap is None:
        prime_cap = get_settings().search_cap
    lo = 3
    while lo <= prime_cap:
        hi = min(lo + _SEARCH_CHUNK - 1, prime_cap)
        for q in primes_in_range(lo, hi, cap=prime_cap):
            if statistics(ResidueClassifier(q, build_table=True), a, b, query) == s:
                logger.info("%s search: s=%d found at q=%d", query, s, q)
                return q
        lo = hi + 1
    logger.info("%s search: s=%d not found up to %d", query, s, prime_cap)
    return None


def q0_search(a: int, b: int, side: str, s: int, prime_cap: Optional[int] = None) -> Optional[int]:
    """s0±(q) = s 인 가장 작은 소수 q ≤ prime_cap (없으면 None, 기본 상한 QRAP_SEARCH_CAP)"""
    _side_sign(side)
    return _search(a, b, f"s0_{side}", s, prime_cap)


def q1_search(a: int, b: int, side: str, s: int, prime_cap: Optional[int] = None) -> Optional[int]:
    """s1±(q) = s 인 가장 작은 소수 q ≤ prime_cap (없으면 None, 기본 상한 QRAP_SEARCH_CAP)"""
    _side_sign(side)
    return _search(a, b, f"s1_{side}", s, prime_cap)
