"""命令行入口

子命令: genset, verify, search, checks, decode, stopping, bounds。
退出码: 0 成功/通过，1 验证失败或译码停止，2 参数或格式错误。
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from erasure import set_io
from erasure.config_manager import get_config
from erasure.construction_factory import get_construction_factory
from erasure.decoder import ReceivedWord, enumerate_stopping_sets, generate_checks, peel_decode
from erasure.exceptions import ErasureSetError, FormatError, SingularMatrixError, UsageError
from erasure.gensets import bound_report
from erasure.performance_monitor import log_system_info
from erasure.verifier import default_jobs, random_search, required_size_bound, verify_generic
from utils import APP_CONFIG, get_app_info, get_error_message, setup_logging

logger = logging.getLogger('erasure_sets')

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class CommandResult:
    exit_code: int
    lines: List[str] = field(default_factory=list)


def cmd_genset(kind: str, r: int, m: Optional[int] = None, out_path: str = None) -> CommandResult:
    """生成显式构造的集合；未指定输出文件时在 size 行之后打印成员"""
    factory = get_construction_factory()
    if m is None and factory.get_construction(kind).uses_m:
        raise UsageError(f"构造 {kind} 需要 --m")
    generic_set = factory.build(kind, r, m)
    lines = [f"size: {len(generic_set)}"]
    if out_path:
        set_io.write_set(out_path, generic_set)
    else:
        lines.extend(generic_set.to_lines())
    return CommandResult(EXIT_OK, lines)


def cmd_verify(set_path: str, r: int, m: int, jobs: int = None,
               fail_fast: bool = False) -> CommandResult:
    generic_set = set_io.read_set(set_path, r)
    if jobs is None:
        jobs = default_jobs()
    report = verify_generic(generic_set, r, m, jobs=jobs, fail_fast=fail_fast)
    return CommandResult(EXIT_OK if report.passed else EXIT_FAIL, report.to_lines())


def cmd_search(r: int, m: int, size: int = None, seed: int = None,
               restarts: int = None) -> CommandResult:
    """随机搜索；规模缺省为使期望坏矩阵数小于 1 的 N"""
    search = get_config().search
    budget = required_size_bound(r, m)
    outcome = random_search(
        r, m,
        size if size is not None else budget,
        seed=search.default_seed if seed is None else seed,
        max_restarts=search.default_restarts if restarts is None else restarts,
    )
    lines = [f"budget: {budget}", f"found: {'yes' if outcome.succeeded else 'no'}",
             f"restarts: {outcome.restarts_used}"]
    if outcome.succeeded:
        lines.extend(outcome.found.to_lines())
        return CommandResult(EXIT_OK, lines)
    return CommandResult(EXIT_FAIL, lines)


def cmd_checks(set_path: str, pcm_path: str, out_path: str = None) -> CommandResult:
    generic_set = set_io.read_set(set_path)
    code = set_io.read_code(pcm_path)
    checks = generate_checks(generic_set, code)
    lines = [f"checks: {len(checks)}"]
    if out_path:
        set_io.write_checks(out_path, checks)
    else:
        lines.extend(checks.to_lines())
    return CommandResult(EXIT_OK, lines)


def cmd_decode(checks_path: str, word: str) -> CommandResult:
    checks = set_io.read_checks(checks_path)
    trace = peel_decode(checks, ReceivedWord.from_string(word))
    return CommandResult(EXIT_OK if trace.succeeded else EXIT_FAIL, trace.to_lines())


def cmd_stopping(checks_path: str, max_size: int, pcm_path: str = None) -> CommandResult:
    checks = set_io.read_checks(checks_path)
    code = set_io.read_code(pcm_path) if pcm_path else None
    stopping_sets = enumerate_stopping_sets(checks, max_size, code)
    lines = [f"count: {len(stopping_sets)}"]
    lines.extend(s.to_line() for s in stopping_sets)
    return CommandResult(EXIT_OK, lines)


def cmd_bounds(r: int, m: int) -> CommandResult:
    report = bound_report(r, m)
    return CommandResult(EXIT_OK, [
        f"lower_bound: {report.lower}",
        f"upper_coefficient: {report.upper_coefficient:.4f}",
        f"upper_bound: {report.upper}",
        f"size_formula: {report.construction_size}",
        f"required_size: {required_size_bound(r, m)}",
    ])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=APP_CONFIG['name'],
        description="通用 (r,m) 纠删集合的构造、验证、搜索与迭代纠删译码")
    parser.add_argument('--version', action='version', version=APP_CONFIG['version'])
    parser.add_argument('--verbose', action='store_true', help="输出调试日志与系统信息")
    parser.add_argument('--log-file', dest='log_file', help="日志文件路径")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('genset', help="生成显式构造的集合")
    p.add_argument('--kind', default='arm', choices=get_construction_factory().available_constructions())
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--m', type=int)
    p.add_argument('--out', help="输出集合文件")

    p = sub.add_parser('verify', help="穷举验证集合的通用性")
    p.add_argument('set_path')
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--jobs', type=int, help="进程数，缺省取配置")
    p.add_argument('--fail-fast', dest='fail_fast', action='store_true')

    p = sub.add_parser('search', help="随机搜索通用集合")
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--size', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--restarts', type=int)

    p = sub.add_parser('checks', help="由集合与校验矩阵生成校验方程")
    p.add_argument('set_path')
    p.add_argument('--pcm', required=True)
    p.add_argument('--out')

    p = sub.add_parser('decode', help="剥离译码")
    p.add_argument('checks_path')
    p.add_argument('word', help="由 0/1/? 组成的接收字")

    p = sub.add_parser('stopping', help="枚举停止集")
    p.add_argument('checks_path')
    p.add_argument('--max-size', dest='max_size', type=int, required=True)
    p.add_argument('--pcm')

    p = sub.add_parser('bounds', help="F(r,m) 的上下界")
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    return parser


def dispatch(args: argparse.Namespace) -> CommandResult:
    if args.command == 'genset':
        return cmd_genset(args.kind, args.r, args.m, args.out)
    if args.command == 'verify':
        return cmd_verify(args.set_path, args.r, args.m, args.jobs, args.fail_fast)
    if args.command == 'search':
        return cmd_search(args.r, args.m, args.size, args.seed, args.restarts)
    if args.command == 'checks':
        return cmd_checks(args.set_path, args.pcm, args.out)
    if args.command == 'decode':
        return cmd_decode(args.checks_path, args.word)
    if args.command == 'stopping':
        return cmd_stopping(args.checks_path, args.max_size, args.pcm)
    if args.command == 'bounds':
        return cmd_bounds(args.r, args.m)
    raise UsageError(f"未知命令: {args.command}")


def _error_code(error: BaseException) -> str:
    if isinstance(error, FormatError):
        return 'format'
    if isinstance(error, SingularMatrixError):
        return 'singular'
    if isinstance(error, UsageError):
        return 'usage'
    if isinstance(error, FileNotFoundError):
        return 'file_not_found'
    if isinstance(error, PermissionError):
        return 'permission_denied'
    return 'unknown_error'


def main(argv: Sequence[str] = None) -> int:
    """运行命令并返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    log_config = get_config().logging
    setup_logging(logging.DEBUG if args.verbose else log_config.level,
                  args.log_file or log_config.log_file)
    if args.verbose:
        info = get_app_info()
        logger.info(f"{info['name']} {info['version']}")
        log_system_info()

    logger.info(f"执行命令: {args.command}")
    try:
        result = dispatch(args)
    except (ErasureSetError, OSError) as e:
        logger.error(f"命令 {args.command} 失败: {e}")
        print(f"{get_error_message(_error_code(e))}: {e}", file=sys.stderr)
        return EXIT_USAGE

    for line in result.lines:
        print(line)
    logger.info(f"命令 {args.command} 完成，退出码 {result.exit_code}")
    return result.exit_code


__all__ = [
    'CommandResult', 'cmd_genset', 'cmd_verify', 'cmd_search', 'cmd_checks', 'cmd_decode',
    'cmd_stopping', 'cmd_bounds', 'build_parser', 'main'
]
