"""
Worker pool
소수별 작업을 ProcessPoolExecutor 에서 실행하고 입력 순서대로 모읍니다.
workers == 1 이면 현재 프로세스에서 바로 실행합니다.
"""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from qrap.core.arith import ResidueClassifier
from qrap.core.asymptotics import count_for_target
from qrap.core.counting import statistics
from qrap.models import CountRecord, Target

logger = logging.getLogger(__name__)

T = TypeVar("T")

_CHUNKS_PER_WORKER = 4


# ────────────────────────────────
# 소수별 작업 (pickle 가능한 모듈 수준 함수)
# ────────────────────────────────
def count_item(targets: Sequence[Target], p: int) -> List[CountRecord]:
    c = ResidueClassifier(p, build_table=True)
    return [count_for_target(target, c) for target in targets]


def stats_item(a: int, b: int, s: Optional[int], eps: Optional[Tuple[int, ...]], p: int) -> Dict[str, int]:
    """소수 p 의 통계량 한 행 (s 가 없으면 n0, n1 열은 비움)"""
    c = ResidueClassifier(p, build_table=True)
    row = {"p": p}
    for query in ("s0_plus", "s0_minus", "s1_plus", "s1_minus"):
        row[query] = statistics(c, a, b, query)
    if s is not None:
        row["n1_plus"] = statistics(c, a, b, "n1_plus", s=s)
        row["n1_minus"] = statistics(c, a, b, "n1_minus", s=s)
        if eps is not None:
            row["n0"] = statistics(c, a, b, "n0", s=s, eps=eps)
    return row


def _apply_chunk(func: Callable[[int], T], chunk: Sequence[int]) -> List[T]:
    return [func(p) for p in chunk]


# ────────────────────────────────
# 실행
# ────────────────────────────────
async def _gather(func: Callable[[int], T], primes: Sequence[int], workers: int) -> List[T]:
    size = max(1, -(-len(primes) // (workers * _CHUNKS_PER_WORKER)))
    chunks = [primes[i:i + size] for i in range(0, len(primes), size)]
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = await asyncio.gather(
            *(loop.run_in_executor(pool, partial(_apply_chunk, func, chunk)) for chunk in chunks)
        )
    return [result for part in parts for result in part]


def run_pool(func: Callable[[int], T], primes: Sequence[int], workers: int = 1) -> List[T]:
    """func(p) 를 모든 p 에 대해 실행, 결과는 primes 와 같은 순서"""
    primes = list(primes)
    if workers <= 1 or len(primes) <= 1:
        return [func(p) for p in primes]
    logger.debug("running %d items on %d workers", len(primes), workers)
    return asyncio.run(_gather(func, primes, workers))
