"""
Report persistence
패밀리 명세 JSON 을 읽고, 분석/검증/스윕 결과를 정규화된 JSON 과
고정 열 순서의 CSV 파일로 기록합니다.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from pydantic import ValidationError

from qrap.errors import SpecFileError
from qrap.models import CharSumResult, CountRecord, FamilySpec, VerificationReport

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

COUNT_COLUMNS = ("p", "mode", "eps_or_eta", "count")
VERIFY_COLUMNS = ("p", "count", "predicted", "error", "bound", "pass", "pi_class")
WEIL_COLUMNS = ("p", "d", "N", "value", "bound", "within_bound")
STATS_COLUMNS = ("p", "s0_plus", "s0_minus", "s1_plus", "s1_minus", "n0", "n1_plus", "n1_minus")


def format_float(value: float) -> str:
    """유효숫자 6자리"""
    return f"{float(value):.6g}"


def _flag(value: bool) -> str:
    return "true" if value else "false"


# ────────────────────────────────
# JSON
# ────────────────────────────────
def dumps_canonical(doc: Mapping) -> str:
    """키 정렬, 들여쓰기 2, 끝 줄바꿈"""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: PathLike, doc: Mapping) -> None:
    Path(path).write_text(dumps_canonical(doc), encoding="utf-8")
    logger.info("wrote %s", path)


def _validation_diagnostic(exc: ValidationError) -> str:
    problems = []
    for error in exc.errors():
        loc = ".".join(str(part) for part in error["loc"]) or "<root>"
        problems.append(f"{loc}: {error['msg']}")
    return "; ".join(problems)


def load_family_spec(path: PathLike) -> FamilySpec:
    """명세 파일 읽기 (문법 오류는 줄/열, 검증 오류는 필드 경로와 함께 SpecFileError)"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecFileError(str(path), exc.strerror or str(exc)) from exc

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(str(path), f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc

    if not isinstance(doc, dict):
        raise SpecFileError(str(path), "top level must be a JSON object")
    try:
        return FamilySpec.model_validate(doc)
    except ValidationError as exc:
        raise SpecFileError(str(path), _validation_diagnostic(exc)) from exc


# ────────────────────────────────
# CSV
# ────────────────────────────────
def _write_rows(path: PathLike, columns: Sequence[str], rows: Iterable[Sequence]) -> int:
    written = 0
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(row)
            written += 1
    logger.info("wrote %d rows to %s", written, path)
    return written


def count_rows(records: Iterable[CountRecord]) -> List[List]:
    return [[r.p, r.mode, r.label, r.count] for r in records]


def verification_rows(report: VerificationReport) -> List[List]:
    return [
        [
            row.p,
            row.count,
            format_float(row.predicted),
            format_float(row.error),
            format_float(row.bound),
            _flag(row.passed),
            row.pi_class,
        ]
        for row in report.rows
    ]


def weil_rows(results: Iterable[CharSumResult]) -> List[List]:
    return [
        [
            r.p,
            r.degree,
            "" if r.range_end is None else r.range_end,
            r.value,
            format_float(r.bound),
            _flag(r.within_bound),
        ]
        for r in results
    ]


def write_counts_csv(path: PathLike, records: Iterable[CountRecord]) -> int:
    return _write_rows(path, COUNT_COLUMNS, count_rows(records))


def write_verification(csv_path: PathLike, report: VerificationReport, summary_path: Optional[PathLike] = None) -> int:
    """행별 CSV 와 (선택) JSON 요약"""
    written = _write_rows(csv_path, VERIFY_COLUMNS, verification_rows(report))
    if summary_path is not None:
        write_json(summary_path, report.summary.model_dump(mode="json"))
    return written


def write_weil_csv(path: PathLike, results: Iterable[CharSumResult]) -> int:
    return _write_rows(path, WEIL_COLUMNS, weil_rows(results))


def write_stats_csv(path: PathLike, rows: Iterable[Dict[str, int]]) -> int:
    """소수별 통계량 표 (값이 없는 열은 빈 칸)"""
    return _write_rows(path, STATS_COLUMNS, ([row.get(col, "") for col in STATS_COLUMNS] for row in rows))


def read_csv(path: PathLike) -> List[Dict[str, str]]:
    """기록된 CSV 를 dict 행으로 (테스트/후처리용)"""
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))
