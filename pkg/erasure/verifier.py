"""通用性验证器

按秩 m 矩阵判据穷举验证候选集合，执行随机构造搜索，并计算期望值
小于 1 所需的集合规模。

判据：集合 A 是通用 (r,m) 纠删集合，当且仅当对每个秩为 m 的 r×m
矩阵 M 都存在 a ∈ A 使 wt(aM) = 1。列置换不影响判据，因此只需检查
F_2^r 中线性无关的 m 元列集合。
"""

import logging
import math
import os
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from erasure.config_manager import get_config
from erasure.exceptions import UsageError
from erasure.gensets import GenericSet, parity_pattern_matrix
from erasure.gf2_core import (
    BitMatrix, BitVec, IndependentSubsetStream, combine_rows, enumerate_independent_subsets,
    nullspace, ordered_matrix_count, popcount, rank, rank_of_rows
)
from erasure.performance_monitor import PerformanceTracker, monitor_performance

logger = logging.getLogger('erasure_sets')


class VerificationStatus(str, Enum):
    PASS = 'PASS'
    FAIL = 'FAIL'


@dataclass(frozen=True)
class VerificationReport:
    """穷举验证结果

    Attributes:
        r, m: 参数
        status: PASS 或 FAIL
        matrices_checked: 已检查的规范子集个数
        counterexample: 失败时的 m 元列集合
        elapsed: 耗时（秒）
        deterministic: fail_fast 并行且提前返回反例时为 False
    """
    r: int
    m: int
    status: VerificationStatus
    matrices_checked: int
    counterexample: Optional[Tuple[BitVec, ...]] = None
    elapsed: float = 0.0
    deterministic: bool = True

    def __post_init__(self):
        if (self.status is VerificationStatus.FAIL) != (self.counterexample is not None):
            raise UsageError("FAIL 状态与反例必须同时出现")

    @property
    def passed(self) -> bool:
        return self.status is VerificationStatus.PASS

    @property
    def elapsed_ms(self) -> int:
        return int(round(self.elapsed * 1000))

    def counterexample_matrix(self) -> Optional[BitMatrix]:
        """反例列集合对应的 r×m 矩阵"""
        if self.counterexample is None:
            return None
        return BitMatrix.from_columns([v.bits for v in self.counterexample], self.r)

    def to_lines(self) -> List[str]:
        lines = [f"status: {self.status.value}",
                 f"matrices_checked: {self.matrices_checked}",
                 f"elapsed_ms: {self.elapsed_ms}"]
        if self.counterexample is not None:
            lines.append("counterexample: " + " ".join(v.to_string() for v in self.counterexample))
        if not self.deterministic:
            lines.append("deterministic: no")
        return lines


@dataclass(frozen=True)
class SearchOutcome:
    """随机搜索结果"""
    r: int
    m: int
    set_size: int
    seed: int
    restarts_used: int
    found: Optional[GenericSet]
    budget: int
    expected_bad: float

    @property
    def succeeded(self) -> bool:
        return self.found is not None


def spans(generic_set: GenericSet, r: int) -> bool:
    """集合是否张成 F_2^r"""
    if generic_set.r != r:
        raise UsageError(f"集合维数 {generic_set.r} 与 r={r} 不一致")
    return rank_of_rows(generic_set.members) == r


def _odd_masks(members: Sequence[int], r: int) -> List[int]:
    """对每个列向量 c 给出 {i : <a_i, c> = 1} 的位集合"""
    masks = [0] * (1 << r)
    for j in range(r):
        bit = 1 << j
        mask = 0
        for i, a in enumerate(members):
            if a & bit:
                mask |= 1 << i
        masks[bit] = mask
    for c in range(1, 1 << r):
        low = c & -c
        if c != low:
            masks[c] = masks[c ^ low] ^ masks[low]
    return masks


def _scan_range(r: int, m: int, lo: int, hi: int,
                odd: Sequence[int]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """按规范顺序扫描首元素在 [lo, hi) 的子集

    沿深度优先路径累积"恰好一次"与"至少两次"两个位集合，叶子处
    判断是否存在恰好与一列内积为 1 的候选向量。

    Returns:
        (已检查子集数, 第一个失败子集或None)
    """
    top = 1 << r
    checked = 0

    def descend(depth, prefix, span, start, stop, once, more):
        nonlocal checked
        if depth == m - 1:
            for c in range(start, stop):
                if c in span:
                    continue
                p = odd[c]
                if not ((once ^ p) & ~(more | (once & p))):
                    checked += (c + 1 - start) - sum(1 for s in span if start <= s <= c)
                    return prefix + (c,)
            checked += (stop - start) - sum(1 for s in span if start <= s < stop)
            return None
        for c in range(start, stop):
            if c in span:
                continue
            p = odd[c]
            new_more = more | (once & p)
            found = descend(depth + 1, prefix + (c,), span | {s ^ c for s in span},
                            c + 1, top, (once ^ p) & ~new_more, new_more)
            if found is not None:
                return found
        return None

    found = descend(0, (), frozenset((0,)), lo, hi, 0, 0)
    return checked, found


def _scan_task(args) -> Tuple[int, Optional[Tuple[int, ...]]]:
    return _scan_range(*args)


def _merge_in_order(results) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """按分区顺序合并：累加计数直到第一个失败分区"""
    checked = 0
    for part_checked, found in results:
        checked += part_checked
        if found is not None:
            return checked, found
    return checked, None


def _scan_parallel(stream: IndependentSubsetStream, odd: List[int], jobs: int,
                   fail_fast: bool) -> Tuple[int, Optional[Tuple[int, ...]], bool]:
    config = get_config().verifier
    parts = stream.partition(jobs * config.partitions_per_job)
    tasks = [(stream.r, stream.m, p.first_lo, p.first_hi, odd) for p in parts]
    logger.debug(f"并行验证: {len(tasks)} 个分区, {jobs} 个进程")

    if not fail_fast:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            checked, found = _merge_in_order(pool.map(_scan_task, tasks))
        return checked, found, True

    # 找到反例后不等待正在运行的分区，由工作进程自行结束
    pool = ProcessPoolExecutor(max_workers=jobs)
    try:
        pending = {pool.submit(_scan_task, task) for task in tasks}
        checked = 0
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                part_checked, found = future.result()
                checked += part_checked
                if found is not None:
                    return checked, found, False
        return checked, None, True
    finally:
        pool.shutdown(wait=False, cancel_futures=True)


def _non_spanning_counterexample(generic_set: GenericSet, r: int, m: int) -> Tuple[BitVec, ...]:
    """不张成时由与 A 正交的 v 构造反例列集合"""
    if generic_set.members:
        v = nullspace(BitMatrix(generic_set.sorted_members(), r))[0]
    else:
        v = BitVec.unit(r, 1)
    columns = parity_pattern_matrix(v, m).columns()
    return tuple(BitVec(r, c) for c in sorted(columns))


def _verify(generic_set: GenericSet, r: int, m: int, jobs: int = 1,
            fail_fast: bool = False) -> VerificationReport:
    if not 1 <= m <= r:
        raise UsageError(f"需要 1 <= m <= r: r={r}, m={m}")
    tracker = PerformanceTracker(f"verify r={r} m={m}").start()

    if not spans(generic_set, r):
        counterexample = _non_spanning_counterexample(generic_set, r, m)
        logger.debug("集合不张成 F_2^r，直接给出反例")
        return VerificationReport(r, m, VerificationStatus.FAIL, 0, counterexample, tracker.stop())

    stream = enumerate_independent_subsets(r, m)
    odd = _odd_masks(generic_set.sorted_members(), r)
    deterministic = True
    if jobs > 1 and len(stream) >= get_config().verifier.parallel_threshold:
        try:
            checked, found, deterministic = _scan_parallel(stream, odd, jobs, fail_fast)
        except (OSError, BrokenProcessPool) as e:
            logger.warning(f"进程池不可用，改为串行验证: {e}")
            checked, found = _scan_range(r, m, stream.first_lo, stream.first_hi, odd)
            deterministic = True
    else:
        checked, found = _scan_range(r, m, stream.first_lo, stream.first_hi, odd)

    elapsed = tracker.stop()
    if found is None:
        return VerificationReport(r, m, VerificationStatus.PASS, checked, None, elapsed, deterministic)
    counterexample = tuple(BitVec(r, c) for c in found)
    return VerificationReport(r, m, VerificationStatus.FAIL, checked, counterexample, elapsed, deterministic)


@monitor_performance()
def verify_generic(generic_set: GenericSet, r: int, m: int, jobs: int = 1,
                   fail_fast: bool = False) -> VerificationReport:
    """穷举验证集合是否为通用 (r,m) 纠删集合

    Args:
        generic_set: 候选集合
        r, m: 参数，1 <= m <= r
        jobs: 进程数；小规模问题始终串行
        fail_fast: 并行时返回任一反例（报告标记为非确定性）

    Returns:
        VerificationReport: 失败时反例为规范顺序下最小的失败子集
    """
    report = _verify(generic_set, r, m, jobs=jobs, fail_fast=fail_fast)
    logger.info(f"验证 r={r} m={m} |A|={len(generic_set)}: {report.status.value}, "
                f"检查 {report.matrices_checked} 个矩阵")
    return report


def count_good_vectors(matrix: BitMatrix) -> int:
    """|{a ∈ F_2^r : wt(aM) = 1}|，等于 m·2^{r−m}"""
    r, m = matrix.row_count, matrix.col_count
    if rank(matrix) != m:
        raise UsageError("矩阵秩不足")
    return sum(1 for a in range(1 << r) if popcount(combine_rows(a, matrix.rows)) == 1)


def _bad_vector_log_ratio(m: int) -> float:
    """−log2(1 − m·2^{−m})"""
    return -math.log2(1 - m * 2.0 ** -m)


def required_size_bound(r: int, m: int, exact_count: bool = True) -> int:
    """使期望坏矩阵数 E[X] < 1 的最小集合规模 N

    exact_count 为 True 时用 |ℳ_{m,r}| 的精确值，否则用上界 2^{mr}。
    """
    if not 1 <= m <= r:
        raise UsageError(f"需要 1 <= m <= r: r={r}, m={m}")
    log_count = math.log2(ordered_matrix_count(r, m)) if exact_count else float(m * r)
    return math.floor(log_count / _bad_vector_log_ratio(m)) + 1


def expected_bad_matrices(r: int, m: int, size: int) -> float:
    """N 个随机向量下坏矩阵个数的期望 |ℳ_{m,r}|·(1 − m·2^{−m})^N"""
    if not 1 <= m <= r:
        raise UsageError(f"需要 1 <= m <= r: r={r}, m={m}")
    return ordered_matrix_count(r, m) * (1 - m * 2.0 ** -m) ** size


@monitor_performance()
def random_search(r: int, m: int, size: int, seed: int = 0, max_restarts: int = 20) -> SearchOutcome:
    """随机构造 N×r 矩阵，行去重、去零后验证，最多重试 max_restarts 次"""
    if size < 1:
        raise UsageError(f"集合规模必须为正: {size}")
    if not 1 <= m <= r:
        raise UsageError(f"需要 1 <= m <= r: r={r}, m={m}")
    rng = np.random.default_rng(seed)
    budget = required_size_bound(r, m)
    expected_bad = expected_bad_matrices(r, m, size)

    for attempt in range(1, max_restarts + 1):
        draws = BitMatrix.from_array(rng.integers(0, 2, size=(size, r), dtype=np.uint8))
        candidate = GenericSet(r, frozenset(a for a in draws.rows if a))
        if _verify(candidate, r, m).passed:
            logger.info(f"第 {attempt} 次尝试找到通用集合，规模 {len(candidate)}")
            return SearchOutcome(r, m, size, seed, attempt, candidate, budget, expected_bad)
        logger.debug(f"第 {attempt} 次尝试失败")

    logger.info(f"{max_restarts} 次尝试均未找到通用集合")
    return SearchOutcome(r, m, size, seed, max_restarts, None, budget, expected_bad)


@monitor_performance()
def min_generic_size(r: int, m: int, size_limit: int = None) -> Optional[int]:
    """按规范顺序搜索通用集合的最小规模，仅适用于很小的 r"""
    research = get_config().research
    if r > research.max_min_size_r:
        raise UsageError(f"r={r} 超出搜索上限 {research.max_min_size_r}")
    if not 1 <= m <= r:
        raise UsageError(f"需要 1 <= m <= r: r={r}, m={m}")
    if size_limit is None:
        size_limit = research.default_size_limit
    size_limit = min(size_limit, (1 << r) - 1)

    for size in range(1, size_limit + 1):
        for members in combinations(range(1, 1 << r), size):
            if rank_of_rows(members) < r:
                continue
            if _verify(GenericSet(r, frozenset(members)), r, m).passed:
                logger.info(f"F({r},{m}) = {size}")
                return size
    return None


def lift_matrix(matrix: BitMatrix) -> BitMatrix:
    """[M0 | x] 扩展为 [M0 | y | x+y]，y 为列空间之外的最小向量

    若 wt(aM') = 1 则 wt(aM) = 1。
    """
    r, k = matrix.row_count, matrix.col_count
    if k >= r:
        raise UsageError(f"列数必须小于行数: {r}x{k}")
    if rank(matrix) != k:
        raise UsageError("矩阵秩不足")
    columns = matrix.columns()
    span = {0}
    for c in columns:
        span |= {s ^ c for s in span}
    y = next(c for c in range(1, 1 << r) if c not in span)
    x = columns[-1]
    return BitMatrix.from_columns(list(columns[:-1]) + [y, x ^ y], r)


def default_jobs() -> int:
    """配置中的进程数，0 表示全部CPU核心"""
    jobs = get_config().verifier.jobs
    return jobs if jobs > 0 else (os.cpu_count() or 1)


__all__ = [
    'VerificationStatus', 'VerificationReport', 'SearchOutcome', 'spans', 'verify_generic',
    'count_good_vectors', 'required_size_bound', 'expected_bad_matrices', 'random_search',
    'min_generic_size', 'lift_matrix', 'default_jobs'
]
