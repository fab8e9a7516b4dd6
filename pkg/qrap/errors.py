"""
qrap 예외 계층
라이브러리는 예외를 던지고, CLI 가 종료 코드와 메시지로 변환합니다.
"""


class QrapError(Exception):
    """모든 qrap 오류의 기반 클래스"""


class DomainError(QrapError, ValueError):
    """연산의 정의역을 벗어난 입력"""


class RangeTooLargeError(QrapError):
    """소수 범위가 설정된 상한을 넘음"""

    def __init__(self, hi: int, cap: int):
        super().__init__(f"range end {hi} exceeds the configured prime cap {cap}")
        self.hi = hi
        self.cap = cap


class InstanceTooLargeError(QrapError):
    """전수 탐색 상한을 넘는 인스턴스"""


class AdmissibilityError(DomainError):
    """(a, b) 가 admissible 조건을 만족하지 않음"""


class ArithmeticOverflowError(QrapError):
    """생성된 값이 128비트 범위를 넘음"""


class NoSignatureError(QrapError):
    """Λ(𝒦) 가 비어 있어 signature 가 정의되지 않음"""


class UnsupportedTargetError(QrapError):
    """예측할 수 없는 target 조합"""


class ConsistencyError(QrapError):
    """두 독립 계산이 서로 다른 값을 냄"""


class SpecFileError(QrapError):
    """패밀리 명세 파일 파싱/검증 실패"""

    def __init__(self, path: str, diagnostic: str):
        super().__init__(f"{path}: {diagnostic}")
        self.path = path
        self.diagnostic = diagnostic
