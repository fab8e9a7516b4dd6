"""
Golden fixtures
알려진 overlap 패턴을 가진 admissible 패밀리를 만들고
기대값 (α, e, 갈래, 계수) 과 함께 돌려줍니다.
"""

import logging
from fractions import Fraction
from typing import List, Literal, Optional, Sequence, Tuple

from qrap.core.arith import is_prime
from qrap.core.asymptotics import predict
from qrap.core.progressions import normalize
from qrap.core.structure import analyze, generate_admissible, quotient_diagram_e
from qrap.errors import ConsistencyError, DomainError
from qrap.models import Branch, ConstantSignTarget, Fixture, StructureReport

logger = logging.getLogger(__name__)

FIXTURE_NAMES = (
    "k2", "k3_i", "k3_ii", "k3_iii", "minimal", "maximal", "squares_variant", "primes_variant",
)

Multipliers = Literal["squares", "primes"]


def _first_primes(count: int) -> List[int]:
    found, n = [], 2
    while len(found) < count:
        if is_prime(n):
            found.append(n)
        n += 1
    return found


def _multipliers(kind: str, k: int) -> Tuple[int, Tuple[int, ...]]:
    """(b1, t): squares 는 b1=1, t_i=4 / primes 는 b1=1, t=2,3,5,..."""
    if kind == "squares":
        return 1, (4,) * (k - 1)
    if kind == "primes":
        return 1, tuple(_first_primes(k - 1))
    raise DomainError(f"unknown multipliers '{kind}'")


def _require(value: Optional[int], name: str, fixture_name: str) -> int:
    if value is None:
        raise DomainError(f"fixture {fixture_name} needs {name}")
    if value < 1:
        raise DomainError(f"{name} must be positive")
    return value


def _gaps_and_exponent(
    name: str,
    s: Optional[int],
    q: Optional[int],
    r: Optional[int],
    k: Optional[int],
) -> Tuple[Tuple[int, ...], int, int]:
    """이름별 d 튜플, s, 기대 지수 α - e"""
    if name == "maximal":
        k = _require(k, "k", name)
        if k < 2:
            raise DomainError("maximal needs k >= 2")
        if s is not None and s != k:
            raise DomainError(f"maximal overlap needs s = k, got s={s}, k={k}")
        return (1,) * (k - 1), k, 2 * k - 1

    s = _require(s, "s", name)
    if s < 2:
        raise DomainError("overlap needs s >= 2")

    if name == "minimal":
        k = _require(k, "k", name)
        if k < 2:
            raise DomainError("minimal needs k >= 2")
        return (s - 1,) * (k - 1), s, 1 + k * (s - 1)

    q = _require(q, "q", name)
    if q >= s:
        raise DomainError(f"q={q} must be below s={s}")
    if name == "k2":
        return (q,), s, s + q
    if name == "k3_i":
        return (q, s), s, 2 * s + q

    r = _require(r, "r", name)
    if r >= s:
        raise DomainError(f"r={r} must be below s={s}")
    if name == "k3_ii":
        if q + r < s:
            raise DomainError(f"k3_ii needs q + r >= s, got {q} + {r} < {s}")
        return (q, r), s, s + q + r
    if name == "k3_iii":
        if q + r >= s:
            raise DomainError(f"k3_iii needs q + r < s, got {q} + {r} >= {s}")
        return (q, r), s, s + q + r
    raise DomainError(f"unknown fixture '{name}'")


def fixture(
    name: str,
    s: Optional[int] = None,
    q: Optional[int] = None,
    r: Optional[int] = None,
    k: Optional[int] = None,
    gaps: Optional[Sequence[int]] = None,
    multipliers: Multipliers = "primes",
    a1: int = 1,
) -> Fixture:
    """이름 있는 overlap 패턴의 패밀리와 기대값

    squares_variant / primes_variant 는 gaps (d 튜플) 와 s 를 직접 받습니다.
    """
    if name not in FIXTURE_NAMES:
        raise DomainError(f"unknown fixture '{name}', expected one of {', '.join(FIXTURE_NAMES)}")

    if name in ("squares_variant", "primes_variant"):
        if not gaps:
            raise DomainError(f"{name} needs a gap tuple")
        s = _require(s, "s", name)
        d = tuple(gaps)
        if all(g > s - 1 for g in d):
            raise DomainError("at least one gap must be below s for the rows to overlap")
        multipliers = "squares" if name == "squares_variant" else "primes"
        exponent = None
    else:
        d, s, exponent = _gaps_and_exponent(name, s, q, r, k)

    b1, t = _multipliers(multipliers, len(d) + 1)
    spec = generate_admissible(d, a1, b1, t, s=s)

    alpha = len(spec.b) * s
    if exponent is None:
        _, e, _ = quotient_diagram_e(spec)
        exponent = alpha - e
    e = alpha - exponent
    branch = Branch.SQUARE if multipliers == "squares" else Branch.OSCILLATING
    coefficient = Fraction(1, max(spec.b) * 2**exponent)

    logger.debug("fixture %s: d=%s s=%d alpha=%d e=%d", name, d, s, alpha, e)
    return Fixture(
        name=name, spec=spec, gaps=d, alpha=alpha, e=e,
        branch=branch, exponent=exponent, coefficient=coefficient,
    )


def check_fixture(fx: Fixture) -> StructureReport:
    """analyze + predict 가 기대값을 재현하는지 확인"""
    family = normalize(fx.spec)
    report = analyze(family)
    prediction = predict(ConstantSignTarget(family=family, eps=1))
    found = (report.alpha, report.e, report.branch, prediction.coefficient)
    expected = (fx.alpha, fx.e, fx.branch, fx.coefficient)
    if found != expected:
        raise ConsistencyError(f"fixture {fx.name}: expected {expected}, analyze gave {found}")
    return report
