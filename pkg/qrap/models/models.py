"""
qrap 도메인 모델
패밀리 명세, 정규형, overlap diagram, 구조/서명/카운트 보고서 등
모든 모듈이 주고받는 pydantic 모델을 정의합니다.
"""

from enum import Enum
from fractions import Fraction
from typing import Annotated, Dict, FrozenSet, List, Literal, Optional, Tuple, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    StrictInt,
    field_serializer,
    field_validator,
    model_validator,
)


def format_fraction(value: Fraction) -> str:
    """유리수를 "num/den" 문자열로"""
    return f"{value.numerator}/{value.denominator}"


class Branch(str, Enum):
    """점근 공식의 세 갈래"""
    GENERIC = "thm61_i"          # Λ(𝒦) 비어 있음
    SQUARE = "thm61_ii_b"        # 모든 Λ 곱이 제곱수
    OSCILLATING = "thm61_ii_c"   # 제곱수가 아닌 Λ 곱이 존재


Side = Literal["residue", "nonresidue"]

# ────────────────────────────────
# 패밀리 명세
# ────────────────────────────────
_KIND_FIELDS = {
    "shift": {"Z"},
    "ap": {"a", "b", "s"},
    "normalized": {"B", "S"},
}


class FamilySpec(BaseModel):
    """사용자 입력 패밀리 명세 (JSON 스키마와 1:1, 모르는 필드는 거부)"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: Literal["shift", "ap", "normalized"]
    a: Optional[Tuple[StrictInt, ...]] = None
    b: Optional[Tuple[StrictInt, ...]] = None
    s: Optional[StrictInt] = None
    Z: Optional[Tuple[StrictInt, ...]] = None
    B: Optional[Tuple[StrictInt, ...]] = None
    S: Optional[Tuple[Tuple[StrictInt, ...], ...]] = None

    @model_validator(mode="after")
    def _check_fields(self) -> "FamilySpec":
        required = _KIND_FIELDS[self.kind]
        present = {name for name in ("a", "b", "s", "Z", "B", "S") if getattr(self, name) is not None}
        missing = sorted(required - present)
        unexpected = sorted(present - required)
        if missing:
            raise ValueError(f"kind '{self.kind}' requires field(s) {missing}")
        if unexpected:
            raise ValueError(f"kind '{self.kind}' does not accept field(s) {unexpected}")

        if self.kind == "ap":
            if not self.a or len(self.a) != len(self.b):
                raise ValueError("a and b must be nonempty tuples of equal length")
            if any(x < 0 for x in self.a):
                raise ValueError("a must contain nonnegative integers")
            if any(x < 1 for x in self.b):
                raise ValueError("b must contain positive integers")
            if self.s < 1:
                raise ValueError("s must be at least 1")
            if len(set(zip(self.a, self.b))) != len(self.a):
                raise ValueError("pairs (a_i, b_i) must be pairwise distinct")
        elif self.kind == "shift":
            if not self.Z:
                raise ValueError("Z must be nonempty")
            if any(z < 0 for z in self.Z):
                raise ValueError("Z must contain nonnegative integers")
            if len(set(self.Z)) != len(self.Z):
                raise ValueError("Z elements must be distinct")
        else:
            _check_normalized(self.B, self.S)
        return self

    @property
    def m(self) -> int:
        return len(self.a) if self.kind == "ap" else 0

    @property
    def sorted_Z(self) -> Tuple[int, ...]:
        return tuple(sorted(self.Z))

    def to_document(self) -> Dict:
        return self.model_dump(mode="json", exclude_none=True)


def _check_normalized(B, S) -> None:
    if not B:
        raise ValueError("B must be nonempty")
    if any(x < 1 for x in B):
        raise ValueError("B must contain positive integers")
    if len(set(B)) != len(B):
        raise ValueError("B elements must be distinct")
    if len(S) != len(B):
        raise ValueError("S must have one set per element of B")
    for row in S:
        if not row:
            raise ValueError("each S_i must be nonempty")
        if any(x < 0 for x in row):
            raise ValueError("S_i must contain nonnegative integers")


class NormalizedFamily(BaseModel):
    """정규형 AP(B, S): n ≥ 1 에 대해 ∪_i (b_i·n + S_i)"""
    model_config = ConfigDict(frozen=True)

    B: Tuple[int, ...]
    S: Tuple[Tuple[int, ...], ...]

    @field_validator("S", mode="before")
    @classmethod
    def _canonical_rows(cls, value):
        # 각 S_i 는 집합: 정렬 + 중복 제거
        return tuple(tuple(sorted(set(row))) for row in value)

    @model_validator(mode="after")
    def _check(self) -> "NormalizedFamily":
        _check_normalized(self.B, self.S)
        return self

    @property
    def k(self) -> int:
        return len(self.B)

    @property
    def alpha(self) -> int:
        return sum(len(row) for row in self.S)

    @property
    def bmax(self) -> int:
        return max(self.B)

    def member(self, n: int) -> FrozenSet[int]:
        return frozenset(b * n + j for b, row in zip(self.B, self.S) for j in row)

    def rational_rows(self) -> List[FrozenSet[Fraction]]:
        """b_i⁻¹S_i 를 정확한 유리수 집합으로"""
        return [frozenset(Fraction(j, b) for j in row) for b, row in zip(self.B, self.S)]

    def last_shift(self, p: int) -> int:
        """member(n) ⊆ [1, p-1] 인 가장 큰 n (r(p) = min_i ⌊(p-1-max S_i)/b_i⌋)"""
        return min((p - 1 - max(row)) // b for b, row in zip(self.B, self.S))

    def to_spec(self) -> FamilySpec:
        return FamilySpec(kind="normalized", B=self.B, S=self.S)


# ────────────────────────────────
# Overlap diagram
# ────────────────────────────────
class DiagramBlock(BaseModel):
    """겹치는 행들의 최대 구간 (support 는 1부터 시작하는 행 번호)"""
    model_config = ConfigDict(frozen=True)

    support: Tuple[int, int]
    gaps: Tuple[int, ...]
    columns: int


class OverlapDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    s: int = Field(ge=1)
    gaps: Tuple[int, ...]
    blocks: Tuple[DiagramBlock, ...]
    total_columns: int

    @property
    def rows(self) -> int:
        return len(self.gaps) + 1


class LabeledDiagram(BaseModel):
    """행 → [1, k] 인덱스 라벨이 붙은 단일 블록 diagram"""
    model_config = ConfigDict(frozen=True)

    rows: Tuple[int, ...]
    diagram: OverlapDiagram


class QuotientDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    diagrams: Tuple[LabeledDiagram, ...]
    # (i, j, q): 인접한 두 행 사이의 정수 몫 q(i, j) = (a_i b_j - a_j b_i) / (b_i b_j)
    quotients: Tuple[Tuple[int, int, int], ...]


# ────────────────────────────────
# 구조 보고서
# ────────────────────────────────
class KmaxEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    K: Tuple[int, ...]
    T: Tuple[Fraction, ...]

    @field_serializer("T")
    def _serialize_T(self, values: Tuple[Fraction, ...]) -> List[str]:
        return [format_fraction(v) for v in values]


class StructureReport(BaseModel):
    """𝒦_max, T(K), Λ(𝒦), α, b, e 와 점근 갈래"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    B: Tuple[int, ...]
    S: Tuple[Tuple[int, ...], ...]
    kmax: Tuple[KmaxEntry, ...]
    lam: Tuple[Tuple[int, ...], ...] = Field(alias="lambda")
    alpha: int
    bmax: int
    e: int
    branch: Branch

    @property
    def family(self) -> NormalizedFamily:
        return NormalizedFamily(B=self.B, S=self.S)

    def to_document(self) -> Dict:
        return self.model_dump(mode="json", by_alias=True)


class SignatureValue(BaseModel):
    model_config = ConfigDict(frozen=True)

    I: Tuple[int, ...]
    value: int


class SignatureReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    allowable: bool
    values: Tuple[SignatureValue, ...] = ()
    cls: Literal["positive", "non_positive", "not_allowable"]


class PrimeClasses(BaseModel):
    model_config = ConfigDict(frozen=True)

    pi_plus: Tuple[int, ...]
    pi_minus: Tuple[int, ...]
    skipped: Tuple[int, ...]


# ────────────────────────────────
# 카운트 / 문자합
# ────────────────────────────────
CountMode = Literal[
    "constant_sign", "pattern", "support", "eta",
    "progression_pattern", "progression_support",
]


class CountRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    mode: CountMode
    signs: Tuple[int, ...] = ()
    side: Optional[Side] = None
    count: int = Field(ge=0)
    family: Optional[FamilySpec] = None

    @property
    def label(self) -> str:
        """CSV eps_or_eta 칸"""
        if self.side is not None:
            return self.side
        return ";".join(f"{v:+d}" for v in self.signs)


class CharSumResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    shifts: Tuple[int, ...]
    roots: Tuple[int, ...]
    range_end: Optional[int] = None     # None 이면 완전합
    value: int
    bound: float
    within_bound: bool

    @property
    def degree(self) -> int:
        return len(self.shifts)

    @property
    def complete(self) -> bool:
        return self.range_end is None


# ────────────────────────────────
# 예측 target
# ────────────────────────────────
class ShiftPatternTarget(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["shift_pattern"] = "shift_pattern"
    Z: Tuple[int, ...]
    eps: Tuple[int, ...]


class ShiftSupportTarget(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["shift_support"] = "shift_support"
    Z: Tuple[int, ...]
    side: Side = "residue"


class StepsPatternTarget(BaseModel):
    """AP(b; s): 공차 b_j 인 길이 s 등차수열들의 합집합"""
    model_config = ConfigDict(frozen=True)
    kind: Literal["steps_pattern"] = "steps_pattern"
    b: Tuple[int, ...]
    s: int
    eps: Tuple[int, ...]


class StepsSupportTarget(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["steps_support"] = "steps_support"
    b: Tuple[int, ...]
    s: int
    side: Side = "residue"


class ConstantSignTarget(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["constant_sign"] = "constant_sign"
    family: NormalizedFamily
    eps: int = 1


class EtaTarget(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["eta"] = "eta"
    family: NormalizedFamily
    eta: Tuple[int, ...]


class ProgressionPatternTarget(BaseModel):
    """단일 수열 AP(a, b; s) (n ≥ 0)"""
    model_config = ConfigDict(frozen=True)
    kind: Literal["progression_pattern"] = "progression_pattern"
    a: int
    b: int
    s: int
    eps: Tuple[int, ...]


class ProgressionSupportTarget(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["progression_support"] = "progression_support"
    a: int
    b: int
    s: int
    side: Side = "residue"


Target = Annotated[
    Union[
        ShiftPatternTarget, ShiftSupportTarget, StepsPatternTarget, StepsSupportTarget,
        ConstantSignTarget, EtaTarget, ProgressionPatternTarget, ProgressionSupportTarget,
    ],
    Field(discriminator="kind"),
]


class Prediction(BaseModel):
    """count ~ coefficient·p 와 오차 한계 c·√p (또는 c·√p·log p)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficient: Fraction
    valid_on: Literal["all_primes", "pi_plus_only"]
    zero_on_pi_minus: bool = False
    bound_form: Literal["sqrt", "sqrt_log"]
    bound_constant: Fraction
    branch: Optional[Branch] = None
    exponent: Optional[int] = None

    @field_serializer("coefficient", "bound_constant")
    def _serialize_fraction(self, value: Fraction) -> str:
        return format_fraction(value)


class VerificationRow(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: int
    count: int
    predicted: Fraction
    error: Fraction
    bound: float
    passed: bool
    asserted: bool
    pi_class: Literal["all", "positive", "non_positive", "not_allowable"]

    @field_serializer("predicted", "error")
    def _serialize_fraction(self, value: Fraction) -> str:
        return format_fraction(value)


class VerificationSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    target: Dict
    coefficient: str
    branch: Optional[Branch] = None
    primes: int
    max_ratio: Optional[float] = None
    violations: int
    pi_minus_primes: int
    pi_minus_all_zero: Optional[bool] = None
    assert_floor: int


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: Tuple[VerificationRow, ...]
    summary: VerificationSummary


# ────────────────────────────────
# 골든 fixture / 실행 설정
# ────────────────────────────────
class Fixture(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    spec: FamilySpec
    gaps: Tuple[int, ...]
    alpha: int
    e: int
    branch: Branch
    exponent: int
    coefficient: Fraction

    @field_serializer("coefficient")
    def _serialize_coefficient(self, value: Fraction) -> str:
        return format_fraction(value)

    def to_document(self) -> Dict:
        return self.model_dump(mode="json")


class RunConfig(BaseModel):
    """CLI 한 번 실행의 설정"""
    model_config = ConfigDict(frozen=True)

    command: str
    spec_path: Optional[str] = None
    lo: int = Field(default=3, ge=3)
    hi: int = Field(default=3, ge=3)
    sampling: Literal["stride", "all"] = "all"
    out: Optional[str] = None
    summary: Optional[str] = None
    workers: int = Field(default=1, ge=1)
    prime_cap: int = Field(default=10**8, ge=3)

    @model_validator(mode="after")
    def _check_range(self) -> "RunConfig":
        if self.lo > self.hi:
            raise ValueError(f"pmin {self.lo} exceeds pmax {self.hi}")
        if self.hi > self.prime_cap:
            raise ValueError(f"pmax {self.hi} exceeds the prime cap {self.prime_cap}")
        return self
