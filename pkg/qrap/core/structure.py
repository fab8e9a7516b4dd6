"""
Structure analysis
𝒦, 𝒦_max, T(K), Λ(𝒦), e 를 계산하고 (두 가지 독립 방법),
quotient diagram 과 admissible 튜플 생성을 제공합니다.
"""

import logging
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from qrap.config import get_settings
from qrap.core.arith import is_square
from qrap.core.progressions import diagram_columns, integer_difference_classes, overlap_diagram
from qrap.errors import (
    AdmissibilityError,
    ArithmeticOverflowError,
    ConsistencyError,
    DomainError,
    InstanceTooLargeError,
)
from qrap.models import (
    Branch,
    FamilySpec,
    KmaxEntry,
    LabeledDiagram,
    NormalizedFamily,
    QuotientDiagram,
    StructureReport,
)

logger = logging.getLogger(__name__)

_OVERFLOW = 1 << 127

Subset = Tuple[int, ...]


def even_subsets(K: Iterable[int]) -> List[Subset]:
    """ℰ(K): 크기가 짝수인 공집합 아닌 부분집합"""
    K = tuple(sorted(K))
    return [I for size in range(2, len(K) + 1, 2) for I in combinations(K, size)]


def branch_for(B: Sequence[int], lam: Sequence[Subset]) -> Branch:
    if not lam:
        return Branch.GENERIC
    if all(is_square(prod(B[i - 1] for i in I)) for I in lam):
        return Branch.SQUARE
    return Branch.OSCILLATING


# ────────────────────────────────
# 𝒦 / analyze
# ────────────────────────────────
def kappa(f: NormalizedFamily) -> List[Tuple[Subset, FrozenSet[Fraction]]]:
    """𝒦 = {K : ∩_{i∈K} b_i⁻¹S_i ≠ ∅} 와 각 S(K)"""
    cap = get_settings().subset_cap
    if f.k > cap:
        raise InstanceTooLargeError(f"k = {f.k} exceeds the subset cap {cap}")

    rows = f.rational_rows()
    result = []
    for size in range(1, f.k + 1):
        for K in combinations(range(1, f.k + 1), size):
            common = frozenset.intersection(*(rows[i - 1] for i in K))
            if common:
                result.append((K, common))
    return result


def analyze(f: NormalizedFamily) -> StructureReport:
    """𝒦_max, T(K), Λ(𝒦), α, b, e 와 점근 갈래"""
    rows = f.rational_rows()
    kmax: List[KmaxEntry] = []
    for K, common in kappa(f):
        others = frozenset().union(*(rows[i] for i in range(f.k) if i + 1 not in K))
        T = common - others
        if T:
            kmax.append(KmaxEntry(K=K, T=tuple(sorted(T))))

    lam = sorted({I for entry in kmax for I in even_subsets(entry.K)})
    e = sum(len(entry.T) * (len(entry.K) - 1) for entry in kmax)

    seen: Set[Fraction] = set()
    for entry in kmax:
        if seen.intersection(entry.T):
            raise ConsistencyError("T(K) sets overlap")
        seen.update(entry.T)

    report = StructureReport(
        B=f.B,
        S=f.S,
        kmax=tuple(kmax),
        lam=tuple(lam),
        alpha=f.alpha,
        bmax=f.bmax,
        e=e,
        branch=branch_for(f.B, lam),
    )
    logger.debug("analyze B=%s: alpha=%d e=%d branch=%s", f.B, report.alpha, e, report.branch.value)
    return report


def enumerate_E(f: NormalizedFamily) -> Set[FrozenSet[Tuple[int, int]]]:
    """각 유리수 값이 짝수 번 나타나는 공집합 아닌 T ⊆ 𝒯 (전수 탐색)"""
    cap = get_settings().enumerate_cap
    if f.alpha > cap:
        raise InstanceTooLargeError(f"alpha = {f.alpha} exceeds the enumeration cap {cap}")

    elements = [(i + 1, j) for i, row in enumerate(f.S) for j in row]
    masks: Dict[Fraction, int] = {}
    for bit, (i, j) in enumerate(elements):
        value = Fraction(j, f.B[i - 1])
        masks[value] = masks.get(value, 0) | (1 << bit)
    # 한 번만 나타나는 값의 원소는 T 에 들어갈 수 없음
    forbidden = 0
    groups = []
    for mask in masks.values():
        if mask.bit_count() == 1:
            forbidden |= mask
        else:
            groups.append(mask)

    result = set()
    for T in range(1, 1 << len(elements)):
        if T & forbidden:
            continue
        if all((T & g).bit_count() % 2 == 0 for g in groups):
            result.add(frozenset(elements[bit] for bit in range(len(elements)) if T >> bit & 1))
    return result


# ────────────────────────────────
# Quotient diagram
# ────────────────────────────────
def check_admissible(spec: FamilySpec) -> None:
    if spec.kind != "ap":
        raise AdmissibilityError("quotient diagrams require an ap spec")
    if spec.m < 2:
        raise AdmissibilityError("admissible tuples need k >= 2")
    if len(set(spec.b)) != spec.m:
        raise AdmissibilityError("coordinates of b must be distinct")
    for i, j in combinations(range(spec.m), 2):
        if spec.a[i] * spec.b[j] == spec.a[j] * spec.b[i]:
            raise AdmissibilityError(f"a_{i + 1}·b_{j + 1} = a_{j + 1}·b_{i + 1}")


def quotient_diagram_e(spec: FamilySpec) -> Tuple[QuotientDiagram, int, List[Subset]]:
    """quotient diagram 으로 e 와 Λ(𝒦) 계산"""
    check_admissible(spec)
    s = spec.s
    q = [Fraction(a, b) for a, b in zip(spec.a, spec.b)]

    e = 0
    diagrams: List[LabeledDiagram] = []
    quotients: List[Tuple[int, int, int]] = []
    for members in integer_difference_classes(q):
        if len(members) < 2:
            continue
        gaps = [int(q[j] - q[i]) for i, j in zip(members, members[1:])]
        e += sum(s - g for g in gaps if g <= s - 1)

        # gap > s-1 에서 끊어 단일 block diagram 으로
        run = [members[0]]
        for index, g in zip(members[1:], gaps):
            if g <= s - 1:
                quotients.append((run[-1] + 1, index + 1, g))
                run.append(index)
                continue
            if len(run) >= 2:
                diagrams.append(_labeled(run, q, s))
            run = [index]
        if len(run) >= 2:
            diagrams.append(_labeled(run, q, s))

    lam: Set[Subset] = set()
    for labeled in diagrams:
        for column in diagram_columns(labeled.diagram.gaps, s):
            labels = [labeled.rows[row - 1] for row, _ in column]
            lam.update(even_subsets(labels))

    diagrams.sort(key=lambda d: q[d.rows[0] - 1])
    return QuotientDiagram(diagrams=tuple(diagrams), quotients=tuple(quotients)), e, sorted(lam)


def _labeled(run: List[int], q: List[Fraction], s: int) -> LabeledDiagram:
    gaps = tuple(int(q[j] - q[i]) for i, j in zip(run, run[1:]))
    return LabeledDiagram(rows=tuple(i + 1 for i in run), diagram=overlap_diagram(gaps, s))


def steps_for_diagrams(diagram_gaps: Sequence[Sequence[int]], s: int) -> Tuple[int, ...]:
    """원하는 diagram 들의 gap 을 이어 붙이고 사이에는 s 를 넣은 d 튜플"""
    if not diagram_gaps:
        raise DomainError("at least one diagram is required")
    steps: List[int] = []
    for n, gaps in enumerate(diagram_gaps):
        if not gaps:
            raise DomainError("every diagram needs at least two rows")
        if any(g < 1 or g > s - 1 for g in gaps):
            raise DomainError(f"diagram gaps must lie in [1, {s - 1}]")
        if n:
            steps.append(s)
        steps.extend(gaps)
    return tuple(steps)


def generate_admissible(
    d: Sequence[int],
    a1: int,
    b1: int,
    t: Sequence[int],
    s: Optional[int] = None,
) -> FamilySpec:
    """a_{i+1} = t_i(a_i + d_i b_i), b_{i+1} = t_i b_i 로 admissible 튜플 생성"""
    d, t = tuple(d), tuple(t)
    if not d:
        raise DomainError("d must have at least one entry (k >= 2)")
    if len(t) != len(d):
        raise DomainError("d and t must have the same length")
    if any(x < 1 for x in d):
        raise DomainError("d must contain positive integers")
    if any(x < 2 for x in t):
        raise DomainError("t must contain integers >= 2")
    if a1 < 1 or b1 < 1:
        raise DomainError("a1 and b1 must be positive")
    if s is None:
        s = max(d) + 1

    a, b = [a1], [b1]
    for d_i, t_i in zip(d, t):
        a.append(t_i * (a[-1] + d_i * b[-1]))
        b.append(t_i * b[-1])
        if a[-1] >= _OVERFLOW or b[-1] >= _OVERFLOW:
            raise ArithmeticOverflowError(f"generated value exceeds 2^127 at k={len(a)}")

    for i in range(len(a)):
        for j in range(i):
            if a[i] * b[j] - a[j] * b[i] != sum(d[j:i]) * b[i] * b[j]:
                raise ConsistencyError(f"generator identity fails for i={i + 1}, j={j + 1}")

    return FamilySpec(kind="ap", a=tuple(a), b=tuple(b), s=s)
