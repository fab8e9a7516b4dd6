#!/usr/bin/env python3
"""
qrap command line
--------------------------------
명세 파일, 소수 범위 스윕, 보고서 파일을 연결하는 argparse 프런트엔드입니다.
데이터는 파일로만 쓰고, 상태 메시지는 stderr 로 보냅니다.

종료 코드: 0 성공, 1 검증 실패 (--assert), 2 사용법/명세 오류
"""

import argparse
import logging
import sys
from functools import partial
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from qrap.cli.workers import count_item, run_pool, stats_item
from qrap.config import get_settings
from qrap.core.arith import primes_in_range
from qrap.core.asymptotics import predict, sample_primes, summarize, verify_prime
from qrap.core.counting import q0_search, q1_search
from qrap.core.fixtures import FIXTURE_NAMES, check_fixture, fixture
from qrap.core.progressions import normalize
from qrap.core.structure import analyze, generate_admissible
from qrap.core.weil import weil_for_prime
from qrap.errors import ConsistencyError, DomainError, QrapError
from qrap.models import (
    ConstantSignTarget,
    EtaTarget,
    FamilySpec,
    ProgressionPatternTarget,
    ProgressionSupportTarget,
    RunConfig,
    ShiftPatternTarget,
    ShiftSupportTarget,
    StepsPatternTarget,
    StepsSupportTarget,
    Target,
    VerificationReport,
)
from qrap.reports import reports

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

CSV_HELP = f"""CSV columns:
  count   {",".join(reports.COUNT_COLUMNS)}
  verify  {",".join(reports.VERIFY_COLUMNS)}
  weil    {",".join(reports.WEIL_COLUMNS)}
  stats   {",".join(reports.STATS_COLUMNS)}
floats use 6 significant digits, integers are exact
"""


def _status(message: str) -> None:
    print(message, file=sys.stderr)


# ────────────────────────────────
# 인자 파서
# ────────────────────────────────
def parse_ints(text: str) -> Tuple[int, ...]:
    """"1,2,3" → (1, 2, 3)"""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got '{text}'") from None


def parse_signs(text: str) -> Tuple[int, ...]:
    """"+1,-1" → (1, -1)"""
    signs = parse_ints(text)
    if not signs or any(v not in (-1, 1) for v in signs):
        raise argparse.ArgumentTypeError(f"signs must be +1 or -1, got '{text}'")
    return signs


def _add_range(parser: argparse.ArgumentParser, pmin: int = 3) -> None:
    parser.add_argument("--pmin", type=int, default=pmin, help="smallest prime (>= 3)")
    parser.add_argument("--pmax", type=int, required=True, help="largest prime")


def _add_signs(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--eps", type=parse_signs, help="sign or sign vector, e.g. +1 or --eps=-1,+1")
    group.add_argument("--eta", type=parse_signs, help="per-row sign vector for AP(B, S) families")
    group.add_argument("--support", choices=("residue", "nonresidue"), help="count support sets")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrap",
        description="Quadratic residue patterns in arithmetic progressions",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--workers", type=int, default=None, help="worker processes (default QRAP_WORKERS)")
    parser.add_argument("--prime-cap", type=int, default=None, help="largest allowed prime (default QRAP_PRIME_CAP)")
    parser.add_argument("--log-level", default=None, help="logging level (default QRAP_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structure report of a family spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("count", help="exact counts per prime")
    p.add_argument("--spec", required=True)
    _add_range(p)
    _add_signs(p)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="compare exact counts with the asymptotic prediction")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec")
    source.add_argument("--steps", type=parse_ints, help="AP(b; s) step tuple b1,b2,...")
    source.add_argument("--progression", type=parse_ints, help="single progression a,b")
    p.add_argument("--s", type=int, help="progression length for --steps / --progression")
    _add_range(p)
    _add_signs(p)
    p.add_argument("--all", action="store_true", help="every prime instead of the log-uniform sample")
    p.add_argument("--assert", dest="assert_", action="store_true", help="exit 1 on any violation")
    p.add_argument("--out", required=True)
    p.add_argument("--summary")

    p = sub.add_parser("weil", help="character sums over random root sets")
    _add_range(p, pmin=100)
    p.add_argument("--per-prime", type=int, default=50)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--assert", dest="assert_", action="store_true")
    p.add_argument("--out", required=True)

    p = sub.add_parser("generate", help="admissible ap spec from gaps and multipliers")
    p.add_argument("--d", type=parse_ints, required=True)
    p.add_argument("--a1", type=int, default=1)
    p.add_argument("--b1", type=int, default=1)
    p.add_argument("--t", type=parse_ints, required=True)
    p.add_argument("--s", type=int, help="progression length (default max(d) + 1)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("fixture", help="named overlap fixture")
    p.add_argument("--name", choices=FIXTURE_NAMES, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--gaps", type=parse_ints)
    p.add_argument("--multipliers", choices=("squares", "primes"), default="primes")
    p.add_argument("--a1", type=int, default=1)
    p.add_argument("--check", action="store_true", help="re-derive the expected values with analyze")
    p.add_argument("--out", required=True)
    p.add_argument("--spec-out", help="also write the bare family spec")

    p = sub.add_parser("stats", help="run-length statistics along AP(a, b)")
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--pmin", type=int, default=3)
    p.add_argument("--pmax", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--eps", type=parse_signs)
    p.add_argument("--search", choices=("q0", "q1"), help="least prime with the given run length")
    p.add_argument("--side", choices=("plus", "minus"), default="plus")
    p.add_argument("--search-cap", type=int, help="largest prime tried by --search (default QRAP_SEARCH_CAP, at most --prime-cap)")
    p.add_argument("--out", required=True)

    return parser


# ────────────────────────────────
# target 구성
# ────────────────────────────────
def _family_target(spec: FamilySpec, eps: Optional[Sequence[int]], eta, support) -> Target:
    if spec.kind == "shift":
        if support:
            return ShiftSupportTarget(Z=spec.sorted_Z, side=support)
        if eps is None:
            raise DomainError("shift specs need --eps (sign vector) or --support")
        return ShiftPatternTarget(Z=spec.sorted_Z, eps=tuple(eps))

    family = normalize(spec)
    if support:
        raise DomainError("--support applies to shift specs, --steps and --progression")
    if eta is not None:
        return EtaTarget(family=family, eta=tuple(eta))
    eps = eps or (1,)
    if len(eps) != 1:
        raise DomainError("constant-sign counting takes a single --eps")
    return ConstantSignTarget(family=family, eps=eps[0])


def build_target(args: argparse.Namespace, spec: Optional[FamilySpec]) -> Target:
    """verify 인자에서 target 하나"""
    if spec is not None:
        return _family_target(spec, args.eps, args.eta, args.support)
    if args.s is None:
        raise DomainError("--s is required with --steps / --progression")
    if args.eta is not None:
        raise DomainError("--eta applies to AP(B, S) specs")
    if args.steps is not None:
        if args.support:
            return StepsSupportTarget(b=args.steps, s=args.s, side=args.support)
        if args.eps is None:
            raise DomainError("--steps needs --eps or --support")
        return StepsPatternTarget(b=args.steps, s=args.s, eps=args.eps)
    if len(args.progression) != 2:
        raise DomainError("--progression takes a,b")
    a, b = args.progression
    if args.support:
        return ProgressionSupportTarget(a=a, b=b, s=args.s, side=args.support)
    if args.eps is None:
        raise DomainError("--progression needs --eps or --support")
    return ProgressionPatternTarget(a=a, b=b, s=args.s, eps=args.eps)


def count_targets(args: argparse.Namespace, spec: FamilySpec) -> List[Target]:
    """count 는 AP(B, S) 에서 --eps 가 없으면 두 부호 모두"""
    if spec.kind != "shift" and args.eps is None and args.eta is None and not args.support:
        family = normalize(spec)
        return [ConstantSignTarget(family=family, eps=1), ConstantSignTarget(family=family, eps=-1)]
    return [_family_target(spec, args.eps, args.eta, args.support)]


# ────────────────────────────────
# 서브커맨드
# ────────────────────────────────
def _run_config(args: argparse.Namespace, **extra) -> RunConfig:
    return RunConfig(
        command=args.command,
        lo=args.pmin,
        hi=args.pmax,
        out=args.out,
        workers=args.workers,
        prime_cap=args.prime_cap,
        **extra,
    )


def cmd_analyze(args: argparse.Namespace) -> int:
    spec = reports.load_family_spec(args.spec)
    report = analyze(normalize(spec))
    reports.write_json(args.out, report.to_document())
    _status(f"✅ analyze: alpha={report.alpha} e={report.e} branch={report.branch.value} → {args.out}")
    return EXIT_OK


def cmd_count(args: argparse.Namespace) -> int:
    spec = reports.load_family_spec(args.spec)
    config = _run_config(args, spec_path=args.spec)
    targets = count_targets(args, spec)
    primes = primes_in_range(config.lo, config.hi, cap=config.prime_cap)
    chunks = run_pool(partial(count_item, targets), primes, config.workers)
    written = reports.write_counts_csv(config.out, [record for chunk in chunks for record in chunk])
    _status(f"✅ count: {written} rows over {len(primes)} primes → {config.out}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    spec = reports.load_family_spec(args.spec) if args.spec else None
    config = _run_config(args, spec_path=args.spec, sampling="all" if args.all else "stride", summary=args.summary)
    target = build_target(args, spec)
    prediction = predict(target)
    floor = get_settings().assert_floor

    primes = sample_primes(config.lo, config.hi, config.sampling, cap=config.prime_cap)
    rows = run_pool(partial(verify_prime, target, prediction, assert_floor=floor), primes, config.workers)
    report = VerificationReport(rows=tuple(rows), summary=summarize(target, prediction, rows, floor))
    reports.write_verification(config.out, report, config.summary)

    summary = report.summary
    failed = summary.violations > 0 or summary.pi_minus_all_zero is False
    if failed:
        mark = "❌" if args.assert_ else "⚠️"
        _status(f"{mark} verify: {summary.violations} bound violations over {summary.primes} primes")
        return EXIT_FAILED if args.assert_ else EXIT_OK
    _status(f"✅ verify: {summary.primes} primes, max ratio {summary.max_ratio}, coefficient {summary.coefficient}")
    return EXIT_OK


def cmd_weil(args: argparse.Namespace) -> int:
    config = _run_config(args)
    if args.per_prime < 1 or args.max_degree < 1:
        raise DomainError("--per-prime and --max-degree must be positive")
    primes = primes_in_range(config.lo, config.hi, cap=config.prime_cap)
    func = partial(weil_for_prime, per_prime=args.per_prime, max_degree=args.max_degree, seed=args.seed)
    results = [r for chunk in run_pool(func, primes, config.workers) for r in chunk]
    reports.write_weil_csv(config.out, results)

    violations = sum(not r.within_bound for r in results)
    if violations:
        mark = "❌" if args.assert_ else "⚠️"
        _status(f"{mark} weil: {violations} of {len(results)} sums exceed the bound")
        return EXIT_FAILED if args.assert_ else EXIT_OK
    _status(f"✅ weil: {len(results)} sums within bound → {config.out}")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    spec = generate_admissible(args.d, args.a1, args.b1, args.t, s=args.s)
    reports.write_json(args.out, spec.to_document())
    _status(f"✅ generate: a={spec.a} b={spec.b} s={spec.s} → {args.out}")
    return EXIT_OK


def cmd_fixture(args: argparse.Namespace) -> int:
    fx = fixture(
        args.name, s=args.s, q=args.q, r=args.r, k=args.k,
        gaps=args.gaps, multipliers=args.multipliers, a1=args.a1,
    )
    if args.check:
        check_fixture(fx)
    reports.write_json(args.out, fx.to_document())
    if args.spec_out:
        reports.write_json(args.spec_out, fx.spec.to_document())
    _status(f"✅ fixture {fx.name}: exponent {fx.exponent}, coefficient {fx.to_document()['coefficient']}")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    if args.search:
        cap = min(args.search_cap or get_settings().search_cap, args.prime_cap)
        if args.s is None:
            raise DomainError("--search needs --s")
        search = q0_search if args.search == "q0" else q1_search
        q = search(args.a, args.b, args.side, args.s, prime_cap=cap)
        doc = {"a": args.a, "b": args.b, "query": args.search, "side": args.side, "s": args.s, "q": q, "prime_cap": cap}
        reports.write_json(args.out, doc)
        mark = "✅" if q is not None else "⚠️"
        _status(f"{mark} stats: {args.search}{'+' if args.side == 'plus' else '-'}(s={args.s}) = {q}")
        return EXIT_OK

    if args.pmax is None:
        raise DomainError("stats needs --pmax (or --search)")
    if args.eps is not None and args.s is not None and len(args.eps) != args.s:
        raise DomainError("--eps must have --s entries")
    config = _run_config(args)
    primes = primes_in_range(config.lo, config.hi, cap=config.prime_cap)
    rows = run_pool(partial(stats_item, args.a, args.b, args.s, args.eps), primes, config.workers)
    reports.write_stats_csv(config.out, rows)
    _status(f"✅ stats: {len(rows)} primes → {config.out}")
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "count": cmd_count,
    "verify": cmd_verify,
    "weil": cmd_weil,
    "generate": cmd_generate,
    "fixture": cmd_fixture,
    "stats": cmd_stats,
}


# ────────────────────────────────
# 진입점
# ────────────────────────────────
def execute(argv: Optional[Sequence[str]] = None) -> int:
    """argv 를 실행하고 종료 코드를 돌려줌"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    settings = get_settings()
    if args.workers is None:
        args.workers = settings.workers
    if args.prime_cap is None:
        args.prime_cap = settings.prime_cap
    try:
        logging.basicConfig(level=(args.log_level or settings.log_level).upper(), format=LOG_FORMAT)
    except ValueError as exc:
        _status(f"❌ {exc}")
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}" for err in exc.errors()
        )
        _status(f"❌ {args.command}: {problems}")
        return EXIT_USAGE
    except ConsistencyError as exc:
        _status(f"❌ {args.command}: {exc}")
        return EXIT_FAILED
    except QrapError as exc:
        _status(f"❌ {args.command}: {exc}")
        return EXIT_USAGE


def main() -> int:
    return execute(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
