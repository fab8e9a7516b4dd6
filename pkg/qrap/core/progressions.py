"""
Progression families
S(Z), AP(b; s), AP(a, b; s), AP(B, S) 패밀리를 다루고
γ, α, defect, overlap diagram 을 계산합니다.
"""

import logging
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from qrap.errors import ConsistencyError, DomainError
from qrap.models import DiagramBlock, FamilySpec, NormalizedFamily, OverlapDiagram

logger = logging.getLogger(__name__)


def integer_difference_classes(values: Sequence[Fraction]) -> List[List[int]]:
    """두 값의 차가 정수인 인덱스끼리 묶음 (각 묶음은 값 기준 오름차순)"""
    groups: Dict[Fraction, List[int]] = defaultdict(list)
    for index, value in enumerate(values):
        groups[value % 1].append(index)
    classes = [sorted(members, key=lambda i: values[i]) for members in groups.values()]
    return sorted(classes, key=lambda members: values[members[0]])


def _row_groups(spec: FamilySpec) -> Dict[int, List[int]]:
    """b 값별 a 목록 (첫 등장 순서 유지)"""
    rows: Dict[int, List[int]] = {}
    for a, b in zip(spec.a, spec.b):
        rows.setdefault(b, []).append(a)
    return rows


# ────────────────────────────────
# 정규형
# ────────────────────────────────
def normalize(spec: FamilySpec) -> NormalizedFamily:
    """FamilySpec → AP(B, S) (같은 b 를 한 행으로 묶음)"""
    if spec.kind == "normalized":
        return NormalizedFamily(B=spec.B, S=spec.S)
    if spec.kind == "shift":
        return NormalizedFamily(B=(1,), S=(spec.Z,))

    rows = _row_groups(spec)
    B = tuple(rows)
    S = tuple(
        tuple(sorted({a + b * l for a in rows[b] for l in range(spec.s)}))
        for b in B
    )
    return NormalizedFamily(B=B, S=S)


def ap_member(spec: FamilySpec, n: int) -> FrozenSet[int]:
    """AP(a, b; s) 의 n 번째 원소 (n ≥ 0)"""
    if spec.kind != "ap":
        raise DomainError("ap_member requires an ap spec")
    if n < 0:
        raise DomainError("n must be nonnegative")
    return frozenset(a + b * (n + i) for a, b in zip(spec.a, spec.b) for i in range(spec.s))


def shift_family_for_steps(b: Sequence[int], s: int) -> FamilySpec:
    """AP(b; s) 를 Z = ∪_j {i·b_j} 인 S(Z) 로"""
    _check_steps(b, s)
    Z = sorted({i * step for step in b for i in range(s)})
    return FamilySpec(kind="shift", Z=tuple(Z))


def _check_steps(b: Sequence[int], s: int) -> None:
    if not b:
        raise DomainError("b must be nonempty")
    if any(step < 1 for step in b):
        raise DomainError("b must contain positive integers")
    if len(set(b)) != len(b):
        raise DomainError("b must contain distinct integers")
    if s < 1:
        raise DomainError("s must be at least 1")


# ────────────────────────────────
# γ
# ────────────────────────────────
def gamma(b: Sequence[int], s: int, mode: str = "brute") -> int:
    """γ = |∪_j {i·b_j : i ∈ [0, s-1]}|"""
    b = tuple(b)
    _check_steps(b, s)
    if mode == "brute":
        return len({i * step for step in b for i in range(s)})
    if mode != "closed_form":
        raise DomainError(f"unknown gamma mode '{mode}'")

    k = len(b)
    if k < 2:
        raise DomainError("closed form requires k >= 2")
    if any(x >= y for x, y in zip(b, b[1:])):
        raise DomainError("closed form requires strictly increasing b")
    if any(gcd(x, y) != 1 for x, y in combinations(b, 2)):
        raise DomainError("closed form requires pairwise coprime b")

    # 포함-배제: |T| = l-1 인 T ⊆ [2, k], min T = m, 가중치 (m - 1)
    total = 1 + k * (s - 1)
    for l in range(2, k + 1):
        inner = 0
        for T in combinations(range(2, k + 1), l - 1):
            inner += (T[0] - 1) * ((s - 1) // prod(b[i - 1] for i in T))
        total += (-1) ** (l + 1) * inner
    return total


# ────────────────────────────────
# defect / α
# ────────────────────────────────
def defect_and_cardinality(a: Sequence[int], b: int, s: int) -> Tuple[int, int]:
    """|∪_j {a_j + b·i : i ∈ [0, s-1]}| 를 overlap 구조로 계산"""
    a = tuple(a)
    if not a:
        raise DomainError("a must be nonempty")
    if len(set(a)) != len(a):
        raise DomainError("a must contain distinct integers")
    if b < 1 or s < 1:
        raise DomainError("b and s must be positive")

    values = [Fraction(x, b) for x in a]
    defect = 0
    for members in integer_difference_classes(values):
        if len(members) < 2:
            continue
        ordered = [values[i] for i in members]
        for left, right in zip(ordered, ordered[1:]):
            gap = int(right - left)
            if gap <= s - 1:
                defect += s - gap
    return defect, s * len(a) - defect


def alpha(f: NormalizedFamily, origin: Optional[FamilySpec] = None) -> int:
    """α = Σ|S_i|; ap 원본이 있으면 m·s - ΣΔ_i 와 대조"""
    value = f.alpha
    if origin is not None and origin.kind == "ap":
        defects = sum(
            defect_and_cardinality(a_values, b, origin.s)[0]
            for b, a_values in _row_groups(origin).items()
        )
        expected = origin.m * origin.s - defects
        if expected != value:
            raise ConsistencyError(f"alpha mismatch: direct {value}, defect formula {expected}")
    return value


def short_quotients(spec: FamilySpec) -> List[Tuple[int, int, int]]:
    """정수 몫 |q| ≤ s-1 로 겹치는 (i, j, q) 쌍; 비어 있으면 Λ(𝒦) = ∅"""
    if spec.kind != "ap":
        raise DomainError("short_quotients requires an ap spec")
    pairs = []
    for i, j in combinations(range(spec.m), 2):
        ai, bi, aj, bj = spec.a[i], spec.b[i], spec.a[j], spec.b[j]
        if bi == bj:
            continue
        numerator = aj * bi - ai * bj
        if numerator % (bi * bj) == 0:
            q = numerator // (bi * bj)
            if abs(q) <= spec.s - 1:
                pairs.append((i + 1, j + 1, q))
    return pairs


# ────────────────────────────────
# Overlap diagram
# ────────────────────────────────
def _check_gaps(gaps: Sequence[int], s: int) -> None:
    if s < 1:
        raise DomainError("s must be at least 1")
    if any(g < 1 for g in gaps):
        raise DomainError("gaps must be positive integers")


def overlap_diagram(gaps: Sequence[int], s: int) -> OverlapDiagram:
    """gap 수열의 overlap diagram 과 block 분해"""
    gaps = tuple(gaps)
    _check_gaps(gaps, s)

    blocks: List[DiagramBlock] = []
    run: List[int] = []
    start = 0
    for index, g in enumerate(gaps + (s,)):
        if g <= s - 1:
            if not run:
                start = index
            run.append(g)
            continue
        if run:
            # gap index u..v 는 행 u+1 .. v+2 를 잇는다 (1-based)
            blocks.append(DiagramBlock(
                support=(start + 1, start + len(run) + 1),
                gaps=tuple(run),
                columns=s + sum(run),
            ))
            run = []

    overlap = sum(s - g for block in blocks for g in block.gaps)
    return OverlapDiagram(
        s=s,
        gaps=gaps,
        blocks=tuple(blocks),
        total_columns=s * (len(gaps) + 1) - overlap,
    )


def diagram_columns(gaps: Sequence[int], s: int) -> List[Tuple[Tuple[int, int], ...]]:
    """행을 누적 gap 위치에 놓고 세로줄별 (row, l) 라벨을 모음"""
    gaps = tuple(gaps)
    _check_gaps(gaps, s)
    columns: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    offset = 0
    for row in range(len(gaps) + 1):
        for l in range(s):
            columns[offset + l].append((row + 1, l))
        if row < len(gaps):
            offset += gaps[row]
    return [tuple(columns[x]) for x in sorted(columns)]
