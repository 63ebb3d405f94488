"""二元线性码与迭代（剥离）纠删译码

由通用集合生成校验方程集合，执行剥离译码，分析停止集，并判定
m-纠删约化 / m-纠删译码性质。位置编号一律从 1 开始。
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from erasure.config_manager import get_config
from erasure.exceptions import FormatError, UsageError
from erasure.gensets import GenericSet
from erasure.gf2_core import (
    BitMatrix, BitVec, bits_from_positions, combine_rows, in_row_space, nullspace, parity,
    positions_from_bits, rank, rank_of_rows
)
from erasure.performance_monitor import monitor_performance

logger = logging.getLogger('erasure_sets')

ERASURE_SYMBOL = '?'
LABEL_CORRECTABLE = 'correctable'
LABEL_UNCORRECTABLE = 'uncorrectable'


@dataclass(frozen=True)
class Code:
    """由满秩 r×n 校验矩阵定义的二元线性码"""
    pcm: BitMatrix

    def __post_init__(self):
        if self.n < self.r:
            raise UsageError(f"需要 n >= r: n={self.n}, r={self.r}")
        if rank(self.pcm) != self.r:
            raise UsageError("校验矩阵不满秩")

    @property
    def n(self) -> int:
        return self.pcm.col_count

    @property
    def r(self) -> int:
        return self.pcm.row_count

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> 'Code':
        return cls(BitMatrix.from_strings(lines))

    @cached_property
    def columns(self) -> Tuple[int, ...]:
        return self.pcm.columns()

    def is_codeword(self, word: BitVec) -> bool:
        """H xᵀ = 0"""
        if word.length != self.n:
            raise UsageError(f"长度不匹配: {word.length} != {self.n}")
        return all(parity(row & word.bits) == 0 for row in self.pcm.rows)

    def in_dual(self, check: BitVec) -> bool:
        """check 是否属于对偶码（H 的行空间）"""
        return in_row_space(self.pcm, check)

    @cached_property
    def generator_basis(self) -> Tuple[BitVec, ...]:
        return nullspace(self.pcm)

    def codewords(self) -> Iterator[BitVec]:
        """枚举全部码字（含零码字），仅适用于小维数"""
        basis = [v.bits for v in self.generator_basis]
        for selector in range(1 << len(basis)):
            yield BitVec(self.n, combine_rows(selector, basis))

    def random_codeword(self, rng: np.random.Generator) -> BitVec:
        basis = [v.bits for v in self.generator_basis]
        selector = 0
        for i, bit in enumerate(rng.integers(0, 2, size=len(basis))):
            if bit:
                selector |= 1 << i
        return BitVec(self.n, combine_rows(selector, basis))


@dataclass(frozen=True)
class CheckCollection:
    """校验方程集合（已去重、去零）"""
    n: int
    checks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'checks', tuple(int(h) for h in self.checks))
        if self.n < 1:
            raise UsageError(f"长度必须为正: {self.n}")
        for h in self.checks:
            if h <= 0 or h >> self.n:
                raise UsageError(f"校验向量 {h} 非法")
        if len(set(self.checks)) != len(self.checks):
            raise UsageError("校验向量重复")

    @classmethod
    def from_vectors(cls, n: int, vectors: Iterable[BitVec]) -> 'CheckCollection':
        """去掉零向量与重复向量，保持首次出现的顺序"""
        seen = []
        for v in vectors:
            if v.length != n:
                raise UsageError(f"校验向量长度 {v.length} 与 n={n} 不一致")
            if v.bits and v.bits not in seen:
                seen.append(v.bits)
        return cls(n, tuple(seen))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> 'CheckCollection':
        vectors = [BitVec.from_string(line) for line in lines]
        if not vectors:
            raise FormatError("校验集合为空")
        return cls.from_vectors(vectors[0].length, vectors)

    def __len__(self) -> int:
        return len(self.checks)

    def vectors(self) -> Tuple[BitVec, ...]:
        return tuple(BitVec(self.n, h) for h in self.checks)

    def to_lines(self) -> List[str]:
        return [v.to_string() for v in self.vectors()]


@dataclass(frozen=True)
class ReceivedWord:
    """接收字：每个位置为已知比特或擦除（None）"""
    values: Tuple[Optional[int], ...]

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(self.values))
        if not self.values:
            raise UsageError("接收字不能为空")
        if any(v not in (0, 1, None) for v in self.values):
            raise UsageError(f"接收字取值非法: {self.values}")

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def from_string(cls, text: str) -> 'ReceivedWord':
        text = text.strip()
        values = []
        for ch in text:
            if ch == ERASURE_SYMBOL:
                values.append(None)
            elif ch in '01':
                values.append(int(ch))
            else:
                raise FormatError(f"接收字含非法字符 {ch!r}: {text}")
        if not values:
            raise FormatError("接收字为空")
        return cls(tuple(values))

    @classmethod
    def from_codeword(cls, codeword: BitVec, erasures: Iterable[int]) -> 'ReceivedWord':
        erased = set(erasures)
        if any(not 1 <= p <= codeword.length for p in erased):
            raise UsageError(f"擦除位置越界: {sorted(erased)}")
        return cls(tuple(None if i in erased else codeword[i] for i in range(1, codeword.length + 1)))

    @property
    def erasures(self) -> FrozenSet[int]:
        return frozenset(i for i, v in enumerate(self.values, start=1) if v is None)

    def erased_mask(self) -> int:
        return bits_from_positions(self.erasures)

    def known_bits(self) -> int:
        return sum(1 << i for i, v in enumerate(self.values) if v == 1)

    def to_string(self) -> str:
        return ''.join(ERASURE_SYMBOL if v is None else str(v) for v in self.values)


@dataclass(frozen=True)
class PeelStep:
    check_index: int
    position: int
    value: int


@dataclass(frozen=True)
class PeelingTrace:
    """剥离译码轨迹：成功时给出译码结果，否则给出剩余擦除集合"""
    steps: Tuple[PeelStep, ...]
    decoded: Optional[BitVec]
    residual: FrozenSet[int]

    @property
    def succeeded(self) -> bool:
        return self.decoded is not None

    def to_lines(self) -> List[str]:
        lines = [f"step {k}: check {s.check_index} resolves pos {s.position} = {s.value}"
                 for k, s in enumerate(self.steps, start=1)]
        if self.decoded is not None:
            lines.append(f"decoded: {self.decoded.to_string()}")
        else:
            lines.append(f"stuck: {format_positions(self.residual)}")
        return lines


@dataclass(frozen=True)
class StoppingSet:
    positions: Tuple[int, ...]
    label: Optional[str] = None

    def to_line(self) -> str:
        text = format_positions(self.positions)
        return f"{text} {self.label}" if self.label else text


@dataclass(frozen=True)
class ReducingResult:
    """m-纠删约化判定结果，失败时附带规范顺序最小的反例 E"""
    holds: bool
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


def format_positions(positions: Iterable[int]) -> str:
    return "{" + ",".join(str(p) for p in sorted(positions)) + "}"


def _erasure_mask(n: int, erasures: Iterable[int]) -> int:
    erasures = tuple(erasures)
    if any(not 1 <= p <= n for p in erasures):
        raise UsageError(f"擦除位置越界: {erasures}")
    return bits_from_positions(erasures)


def generate_checks(generic_set: GenericSet, code: Code) -> CheckCollection:
    """{aH : a ∈ A}，按 A 的序列化顺序，去零去重"""
    if generic_set.r != code.r:
        raise UsageError(f"集合维数 {generic_set.r} 与码的余维 {code.r} 不一致")
    vectors = [BitVec(code.n, combine_rows(a, code.pcm.rows)) for a in generic_set.sorted_members()]
    return CheckCollection.from_vectors(code.n, vectors)


def is_correctable(code: Code, erasures: Iterable[int]) -> bool:
    """H(E) 列满秩，即 E 不包含非零码字的支撑"""
    positions = tuple(sorted(set(erasures)))
    _erasure_mask(code.n, positions)
    if len(positions) > code.r:
        return False
    return rank_of_rows(code.columns[p - 1] for p in positions) == len(positions)


def peel_decode(checks: CheckCollection, word: ReceivedWord) -> PeelingTrace:
    """迭代剥离译码

    每一步取编号最小的、恰好含一个擦除位置的校验方程，用其已知位置的
    模 2 和确定该擦除。无此方程时停止，剩余擦除集合为停止集。
    """
    if checks.n != word.n:
        raise UsageError(f"长度不匹配: 校验 {checks.n}, 接收字 {word.n}")
    erased = word.erased_mask()
    values = word.known_bits()
    steps = []
    while erased:
        for index, h in enumerate(checks.checks, start=1):
            overlap = h & erased
            if overlap and not overlap & (overlap - 1):
                value = parity(h & values)
                position = overlap.bit_length()
                values |= value << (position - 1)
                erased ^= overlap
                steps.append(PeelStep(index, position, value))
                break
        else:
            residual = frozenset(positions_from_bits(erased))
            logger.debug(f"剥离译码停止于 {format_positions(residual)}")
            return PeelingTrace(tuple(steps), None, residual)
    return PeelingTrace(tuple(steps), BitVec(word.n, values), frozenset())


def _is_stopping_mask(checks: Sequence[int], mask: int) -> bool:
    for h in checks:
        overlap = h & mask
        if overlap and not overlap & (overlap - 1):
            return False
    return True


def is_stopping_set(checks: CheckCollection, erasures: Iterable[int]) -> bool:
    """没有任何校验方程在 E 内恰好有一个 1"""
    positions = tuple(erasures)
    if not positions:
        raise UsageError("空集不视为停止集")
    return _is_stopping_mask(checks.checks, _erasure_mask(checks.n, positions))


@monitor_performance()
def enumerate_stopping_sets(checks: CheckCollection, max_size: int,
                            code: Optional[Code] = None) -> List[StoppingSet]:
    """规模不超过 max_size 的全部非空停止集（先按规模，再按字典序）

    给出 code 时标注为 correctable（译码器缺陷）或 uncorrectable
    （包含码字支撑，不可避免）。
    """
    guard = get_config().decoder.max_stopping_set_length
    if checks.n > guard:
        raise UsageError(f"码长 {checks.n} 超出停止集枚举上限 {guard}")
    if not 0 <= max_size <= checks.n:
        raise UsageError(f"需要 0 <= max_size <= n: {max_size}")
    if code is not None and code.n != checks.n:
        raise UsageError(f"码长不匹配: {code.n} != {checks.n}")

    found = []
    for size in range(1, max_size + 1):
        for positions in combinations(range(1, checks.n + 1), size):
            if not _is_stopping_mask(checks.checks, bits_from_positions(positions)):
                continue
            label = None
            if code is not None:
                label = LABEL_CORRECTABLE if is_correctable(code, positions) else LABEL_UNCORRECTABLE
            found.append(StoppingSet(positions, label))
    logger.info(f"找到 {len(found)} 个规模不超过 {max_size} 的停止集")
    return found


def is_m_erasure_reducing(checks: CheckCollection, code: Code, m: int) -> ReducingResult:
    """每个规模为 m 的可纠正 E 都存在 E 内权重为 1 的校验方程"""
    if checks.n != code.n:
        raise UsageError(f"码长不匹配: {code.n} != {checks.n}")
    if not 1 <= m <= code.n:
        raise UsageError(f"需要 1 <= m <= n: m={m}")
    for positions in combinations(range(1, code.n + 1), m):
        if not _is_stopping_mask(checks.checks, bits_from_positions(positions)):
            continue
        if is_correctable(code, positions):
            return ReducingResult(False, positions)
    return ReducingResult(True)


def is_m_erasure_decoding(checks: CheckCollection, code: Code, m: int) -> bool:
    """对所有 1 <= m' <= m 都是 m'-纠删约化；m = 0 时空真"""
    if m < 0 or m > code.n:
        raise UsageError(f"需要 0 <= m <= n: m={m}")
    return all(is_m_erasure_reducing(checks, code, k) for k in range(1, m + 1))


def hamming_code(r: int) -> Code:
    """[2^r−1, 2^r−1−r] 汉明码，第 j 列为 j 的整数编码"""
    if r < 2:
        raise UsageError(f"汉明码需要 r >= 2: r={r}")
    return Code(BitMatrix.from_columns(list(range(1, 1 << r)), r))


def repetition_example_code() -> Code:
    """[5,1] 重复码，校验矩阵取四个示例校验方程"""
    return Code.from_strings(["10001", "01100", "01111", "01010"])


def repetition_example_checks() -> CheckCollection:
    return CheckCollection.from_strings(["10001", "01100", "01111", "01010"])


def random_code(n: int, r: int, seed: int) -> Code:
    """随机满秩 r×n 校验矩阵"""
    if not 1 <= r <= n:
        raise UsageError(f"需要 1 <= r <= n: n={n}, r={r}")
    rng = np.random.default_rng(seed)
    while True:
        pcm = BitMatrix.from_array(rng.integers(0, 2, size=(r, n), dtype=np.uint8))
        if rank(pcm) == r:
            return Code(pcm)


def is_hamming_reducing(generic_set: GenericSet, m: int) -> bool:
    """{aH_r} 对汉明码是否 m-纠删约化；与通用性判据等价"""
    code = hamming_code(generic_set.r)
    return bool(is_m_erasure_reducing(generate_checks(generic_set, code), code, m))


__all__ = [
    'Code', 'CheckCollection', 'ReceivedWord', 'PeelStep', 'PeelingTrace', 'StoppingSet',
    'ReducingResult', 'LABEL_CORRECTABLE', 'LABEL_UNCORRECTABLE', 'format_positions',
    'generate_checks', 'is_correctable', 'peel_decode', 'is_stopping_set',
    'enumerate_stopping_sets', 'is_m_erasure_reducing', 'is_m_erasure_decoding',
    'hamming_code', 'repetition_example_code', 'repetition_example_checks', 'random_code',
    'is_hamming_reducing'
]
