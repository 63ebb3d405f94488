"""GF(2) 线性代数核心

按位压缩的 GF(2) 向量与矩阵：秩、求逆、乘积、零空间，以及
按规范顺序枚举 F_2^r 中线性无关的 m 元子集。

约定：
    向量以整数编码，坐标 1 为最低位；字符串形式中坐标 1 在最左边。
    所有对象不可变，可在线程和进程之间安全共享。
"""

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from erasure.exceptions import FormatError, SingularMatrixError, UsageError


def popcount(x: int) -> int:
    """整数二进制表示中 1 的个数"""
    return bin(x).count('1')


def parity(x: int) -> int:
    """整数二进制表示中 1 的个数的奇偶性"""
    return bin(x).count('1') & 1


def bits_from_positions(positions: Iterable[int]) -> int:
    """由 1 起始的坐标集合构造位掩码"""
    mask = 0
    for pos in positions:
        mask |= 1 << (pos - 1)
    return mask


def positions_from_bits(bits: int) -> Tuple[int, ...]:
    """位掩码转换为 1 起始的坐标元组（升序）"""
    positions = []
    pos = 1
    while bits:
        if bits & 1:
            positions.append(pos)
        bits >>= 1
        pos += 1
    return tuple(positions)


@dataclass(frozen=True)
class BitVec:
    """GF(2) 上带长度标记的向量

    Attributes:
        length: 坐标个数
        bits: 整数编码，坐标 i 对应第 i-1 位
    """
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 1:
            raise UsageError(f"向量长度必须为正: {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise UsageError(f"编码 {self.bits} 超出长度 {self.length}")

    @classmethod
    def zeros(cls, length: int) -> 'BitVec':
        return cls(length, 0)

    @classmethod
    def unit(cls, length: int, index: int) -> 'BitVec':
        """单位向量 e_index（1 起始）"""
        if not 1 <= index <= length:
            raise UsageError(f"单位向量下标越界: {index}")
        return cls(length, 1 << (index - 1))

    @classmethod
    def from_support(cls, length: int, positions: Iterable[int]) -> 'BitVec':
        positions = tuple(positions)
        if any(not 1 <= pos <= length for pos in positions):
            raise UsageError(f"支撑集越界: {positions}")
        return cls(length, bits_from_positions(positions))

    @classmethod
    def from_string(cls, text: str) -> 'BitVec':
        """解析 '0'/'1' 字符串，坐标 1 在最左边"""
        text = text.strip()
        if not text:
            raise FormatError("空的向量字符串")
        bits = 0
        for i, ch in enumerate(text):
            if ch == '1':
                bits |= 1 << i
            elif ch != '0':
                raise FormatError(f"非法字符 {ch!r}: {text}")
        return cls(len(text), bits)

    def to_string(self) -> str:
        return ''.join('1' if (self.bits >> i) & 1 else '0' for i in range(self.length))

    def __str__(self) -> str:
        return self.to_string()

    def __int__(self) -> int:
        return self.bits

    def __getitem__(self, index: int) -> int:
        """坐标 index（1 起始）上的取值"""
        if not 1 <= index <= self.length:
            raise IndexError(index)
        return (self.bits >> (index - 1)) & 1

    def _check_same_length(self, other: 'BitVec'):
        if self.length != other.length:
            raise UsageError(f"向量长度不一致: {self.length} != {other.length}")

    def __xor__(self, other: 'BitVec') -> 'BitVec':
        self._check_same_length(other)
        return BitVec(self.length, self.bits ^ other.bits)

    def __and__(self, other: 'BitVec') -> 'BitVec':
        self._check_same_length(other)
        return BitVec(self.length, self.bits & other.bits)

    def dot(self, other: 'BitVec') -> int:
        """GF(2) 内积"""
        self._check_same_length(other)
        return parity(self.bits & other.bits)

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    @property
    def support(self) -> Tuple[int, ...]:
        return positions_from_bits(self.bits)

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class BitMatrix:
    """GF(2) 矩阵，按行压缩存储

    Attributes:
        rows: 每行的整数编码
        col_count: 列数
    """
    rows: Tuple[int, ...]
    col_count: int

    def __post_init__(self):
        object.__setattr__(self, 'rows', tuple(int(row) for row in self.rows))
        if not self.rows:
            raise UsageError("矩阵至少需要一行")
        if self.col_count < 1:
            raise UsageError(f"列数必须为正: {self.col_count}")
        for row in self.rows:
            if row < 0 or row >> self.col_count:
                raise UsageError(f"行编码 {row} 超出列数 {self.col_count}")

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVec]) -> 'BitMatrix':
        if not vectors:
            raise UsageError("矩阵至少需要一行")
        length = vectors[0].length
        if any(v.length != length for v in vectors):
            raise UsageError("各行长度不一致")
        return cls(tuple(v.bits for v in vectors), length)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> 'BitMatrix':
        return cls.from_vectors([BitVec.from_string(line) for line in lines])

    @classmethod
    def identity(cls, size: int) -> 'BitMatrix':
        return cls(tuple(1 << i for i in range(size)), size)

    @classmethod
    def from_columns(cls, columns: Sequence[int], row_count: int) -> 'BitMatrix':
        """由列编码（每列 row_count 位）构造矩阵"""
        rows = [0] * row_count
        for j, col in enumerate(columns):
            for i in range(row_count):
                if (col >> i) & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows), len(columns))

    @classmethod
    def from_array(cls, array: np.ndarray) -> 'BitMatrix':
        """由 0/1 numpy 数组构造矩阵"""
        array = np.asarray(array) % 2
        if array.ndim != 2:
            raise UsageError(f"需要二维数组: {array.shape}")
        rows = tuple(sum(1 << int(j) for j in np.flatnonzero(row)) for row in array)
        return cls(rows, array.shape[1])

    def to_array(self) -> np.ndarray:
        return np.array([[(row >> j) & 1 for j in range(self.col_count)] for row in self.rows],
                        dtype=np.uint8)

    def row(self, index: int) -> BitVec:
        """第 index 行（1 起始）"""
        return BitVec(self.col_count, self.rows[index - 1])

    @property
    def vectors(self) -> Tuple[BitVec, ...]:
        return tuple(BitVec(self.col_count, row) for row in self.rows)

    def columns(self) -> Tuple[int, ...]:
        """每一列的整数编码（行 i 对应第 i-1 位）"""
        cols = []
        for j in range(self.col_count):
            col = 0
            for i, row in enumerate(self.rows):
                if (row >> j) & 1:
                    col |= 1 << i
            cols.append(col)
        return tuple(cols)

    def transpose(self) -> 'BitMatrix':
        return BitMatrix(self.columns(), self.row_count)

    def restrict_columns(self, positions: Sequence[int]) -> 'BitMatrix':
        """限制到给定列（1 起始），即 H(E)"""
        positions = tuple(positions)
        if any(not 1 <= p <= self.col_count for p in positions):
            raise UsageError(f"列下标越界: {positions}")
        cols = self.columns()
        return BitMatrix.from_columns([cols[p - 1] for p in positions], self.row_count)

    def to_strings(self) -> List[str]:
        return [v.to_string() for v in self.vectors]

    def __matmul__(self, other: 'BitMatrix') -> 'BitMatrix':
        return mat_mul(self, other)


def _pivot_rows(rows: Iterable[int]) -> Dict[int, int]:
    """行约化，主元取最低可用列；返回 {主元位: 约化行}"""
    pivots: Dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            if low in pivots:
                row ^= pivots[low]
            else:
                pivots[low] = row
                break
    return pivots


def rank_of_rows(rows: Iterable[int]) -> int:
    """整数行集合在 GF(2) 上的秩"""
    return len(_pivot_rows(rows))


def rank(matrix: BitMatrix) -> int:
    """矩阵行空间的维数"""
    return rank_of_rows(matrix.rows)


def in_row_space(matrix: BitMatrix, vector: BitVec) -> bool:
    """vector 是否属于 matrix 的行空间"""
    if vector.length != matrix.col_count:
        raise UsageError(f"维度不匹配: {vector.length} != {matrix.col_count}")
    pivots = _pivot_rows(matrix.rows)
    row = vector.bits
    while row:
        low = row & -row
        if low not in pivots:
            return False
        row ^= pivots[low]
    return True


def combine_rows(selector: int, rows: Sequence[int]) -> int:
    """selector 中置位的行的异或和"""
    acc = 0
    i = 0
    while selector:
        if selector & 1:
            acc ^= rows[i]
        selector >>= 1
        i += 1
    return acc


def vec_mat_mul(vector: BitVec, matrix: BitMatrix) -> BitVec:
    """行向量乘矩阵 aM"""
    if vector.length != matrix.row_count:
        raise UsageError(f"维度不匹配: 向量长度 {vector.length}, 矩阵行数 {matrix.row_count}")
    return BitVec(matrix.col_count, combine_rows(vector.bits, matrix.rows))


def mat_mul(left: BitMatrix, right: BitMatrix) -> BitMatrix:
    """矩阵乘积"""
    if left.col_count != right.row_count:
        raise UsageError(f"维度不匹配: {left.col_count} != {right.row_count}")
    return BitMatrix(tuple(combine_rows(row, right.rows) for row in left.rows), right.col_count)


def invert(matrix: BitMatrix) -> BitMatrix:
    """Gauss-Jordan 消元求逆

    Raises:
        UsageError: 非方阵
        SingularMatrixError: 矩阵奇异
    """
    n = matrix.row_count
    if matrix.col_count != n:
        raise UsageError(f"只能对方阵求逆: {n}x{matrix.col_count}")
    work = [row | (1 << (n + i)) for i, row in enumerate(matrix.rows)]
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(col, n) if work[i] & bit), None)
        if pivot is None:
            raise SingularMatrixError(f"矩阵奇异，第 {col + 1} 列无主元")
        work[col], work[pivot] = work[pivot], work[col]
        for i in range(n):
            if i != col and work[i] & bit:
                work[i] ^= work[col]
    return BitMatrix(tuple(row >> n for row in work), n)


def nullspace(matrix: BitMatrix) -> Tuple[BitVec, ...]:
    """零空间 {x : M xᵀ = 0} 的一组基，可能为空"""
    pivots: Dict[int, int] = {}
    for row in matrix.rows:
        for pivot_bit, pivot_row in pivots.items():
            if row & pivot_bit:
                row ^= pivot_row
        if not row:
            continue
        low = row & -row
        for pivot_bit in pivots:
            if pivots[pivot_bit] & low:
                pivots[pivot_bit] ^= row
        pivots[low] = row

    pivot_mask = 0
    for pivot_bit in pivots:
        pivot_mask |= pivot_bit
    basis = []
    for j in range(matrix.col_count):
        free = 1 << j
        if free & pivot_mask:
            continue
        x = free
        for pivot_bit, pivot_row in pivots.items():
            if pivot_row & free:
                x |= pivot_bit
        basis.append(BitVec(matrix.col_count, x))
    return tuple(basis)


def ordered_matrix_count(r: int, m: int) -> int:
    """秩为 m 的 r×m 矩阵个数 Π_{i<m}(2^r − 2^i)"""
    return math.prod((1 << r) - (1 << i) for i in range(m))


def independent_subset_count(r: int, m: int) -> int:
    """F_2^r 中线性无关 m 元子集个数"""
    return ordered_matrix_count(r, m) // math.factorial(m)


class IndependentSubsetStream:
    """按规范顺序枚举线性无关子集

    子集以升序整数编码元组给出，按字典序排列。流可按首元素的区间
    切分为互不相交的子流，依次拼接等于原始流，便于并行消费。
    """

    def __init__(self, r: int, m: int, first_lo: int = 1, first_hi: int = None):
        if r < 1 or not 1 <= m <= r:
            raise UsageError(f"需要 1 <= m <= r: r={r}, m={m}")
        top = 1 << r
        if first_hi is None:
            first_hi = top
        if not 1 <= first_lo <= first_hi <= top:
            raise UsageError(f"首元素区间非法: [{first_lo}, {first_hi})")
        self.r = r
        self.m = m
        self.first_lo = first_lo
        self.first_hi = first_hi

    @property
    def is_full(self) -> bool:
        return self.first_lo == 1 and self.first_hi == 1 << self.r

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return self._descend((), frozenset((0,)), self.first_lo, self.first_hi)

    def _descend(self, prefix: Tuple[int, ...], span: frozenset, lo: int, hi: int):
        top = 1 << self.r
        last = len(prefix) + 1 == self.m
        for c in range(lo, hi):
            if c in span:
                continue
            chosen = prefix + (c,)
            if last:
                yield chosen
            else:
                yield from self._descend(chosen, span | {s ^ c for s in span}, c + 1, top)

    def vectors(self) -> Iterator[Tuple[BitVec, ...]]:
        for subset in self:
            yield tuple(BitVec(self.r, c) for c in subset)

    def __len__(self) -> int:
        # 子流没有闭式计数，只能遍历
        if self.is_full:
            return independent_subset_count(self.r, self.m)
        return sum(1 for _ in self)

    def partition(self, parts: int) -> List['IndependentSubsetStream']:
        """按首元素切分为至多 parts 个非空区间，工作量大致均衡"""
        if parts < 1:
            raise UsageError(f"分区数必须为正: {parts}")
        top = 1 << self.r
        firsts = list(range(self.first_lo, self.first_hi))
        if parts == 1 or len(firsts) <= 1:
            return [self]
        # 以首元素之后可选的元素组合数估计工作量
        weights = [math.comb(top - 1 - c, self.m - 1) + 1 for c in firsts]
        cumulative = list(accumulate(weights))
        total = cumulative[-1]
        bounds = [self.first_lo]
        for k in range(1, parts):
            target = total * k / parts
            idx = next(i for i, w in enumerate(cumulative) if w >= target)
            cut = firsts[idx] + 1
            if bounds[-1] < cut < self.first_hi:
                bounds.append(cut)
        bounds.append(self.first_hi)
        return [IndependentSubsetStream(self.r, self.m, lo, hi) for lo, hi in zip(bounds, bounds[1:])]


def enumerate_independent_subsets(r: int, m: int) -> IndependentSubsetStream:
    """所有秩为 m 的 F_2^r \\ {0} 的 m 元子集的规范流"""
    if m > r:
        raise UsageError(f"m 不能大于 r: r={r}, m={m}")
    return IndependentSubsetStream(r, m)


def random_invertible(r: int, seed: int) -> BitMatrix:
    """固定种子下确定性地生成 r×r 可逆矩阵"""
    if r < 1:
        raise UsageError(f"r 必须为正: {r}")
    rng = np.random.default_rng(seed)
    while True:
        candidate = BitMatrix.from_array(rng.integers(0, 2, size=(r, r), dtype=np.uint8))
        if rank(candidate) == r:
            return candidate


__all__ = [
    'BitVec', 'BitMatrix', 'IndependentSubsetStream',
    'popcount', 'parity', 'bits_from_positions', 'positions_from_bits',
    'rank', 'rank_of_rows', 'in_row_space', 'combine_rows', 'vec_mat_mul', 'mat_mul',
    'invert', 'nullspace', 'ordered_matrix_count', 'independent_subset_count',
    'enumerate_independent_subsets', 'random_invertible'
]
