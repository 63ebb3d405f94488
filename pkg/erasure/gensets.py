"""通用纠删集合构造

显式构造 A_{r,m}、(r,3) 集合 W_r、变换矩阵 S，
构造性证明中的覆盖向量求解，以及 F(r,m) 的上下界公式。
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Tuple

from erasure.exceptions import SingularMatrixError, UsageError
from erasure.gf2_core import (
    BitMatrix, BitVec, combine_rows, invert, popcount, rank, rank_of_rows
)

logger = logging.getLogger('erasure_sets')


@dataclass(frozen=True)
class GenericSet:
    """F_2^r 中互不相同的非零向量组成的候选集合

    Attributes:
        r: 维数
        members: 成员的整数编码
    """
    r: int
    members: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'members', frozenset(int(a) for a in self.members))
        if self.r < 1:
            raise UsageError(f"r 必须为正: {self.r}")
        for a in self.members:
            if a == 0:
                raise UsageError("集合不能包含零向量")
            if a < 0 or a >> self.r:
                raise UsageError(f"成员 {a} 超出维数 r={self.r}")

    @classmethod
    def from_vectors(cls, r: int, vectors: Iterable[BitVec]) -> 'GenericSet':
        members = []
        for v in vectors:
            if v.length != r:
                raise UsageError(f"向量长度 {v.length} 与 r={r} 不一致")
            members.append(v.bits)
        return cls(r, frozenset(members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        if isinstance(item, BitVec):
            return item.length == self.r and item.bits in self.members
        return item in self.members

    def sorted_members(self) -> Tuple[int, ...]:
        """序列化顺序：按整数编码升序"""
        return tuple(sorted(self.members))

    def vectors(self) -> Tuple[BitVec, ...]:
        return tuple(BitVec(self.r, a) for a in self.sorted_members())

    def to_lines(self):
        return [v.to_string() for v in self.vectors()]


@dataclass(frozen=True)
class BoundReport:
    """F(r,m) 的上下界汇总"""
    r: int
    m: int
    lower: int
    upper_coefficient: float
    upper: int
    construction_size: int


def _check_construction_range(r: int, m: int):
    if not 2 <= m <= r:
        raise UsageError(f"需要 2 <= m <= r: r={r}, m={m}")


def _check_bound_range(r: int, m: int):
    if not 1 <= m <= r:
        raise UsageError(f"需要 1 <= m <= r: r={r}, m={m}")


def construct_arm(r: int, m: int) -> GenericSet:
    """A_{r,m} = {a : a_1 = 1, wt(a) <= m}"""
    _check_construction_range(r, m)
    members = set()
    for extra in range(m):
        for positions in combinations(range(1, r), extra):
            a = 1
            for p in positions:
                a |= 1 << p
            members.add(a)
    logger.debug(f"构造 A_{{{r},{m}}}: {len(members)} 个向量")
    return GenericSet(r, frozenset(members))


def size_formula(r: int, m: int) -> int:
    """|A_{r,m}| = Σ_{i<m} C(r−1, i)"""
    _check_construction_range(r, m)
    return sum(math.comb(r - 1, i) for i in range(m))


def construct_weber(r: int) -> GenericSet:
    """W_r：全部单位向量加上 e_1 + e_i + e_j（2 <= i < j <= r）"""
    if r < 3:
        raise UsageError(f"W_r 需要 r >= 3: r={r}")
    members = {1 << i for i in range(r)}
    for i, j in combinations(range(1, r), 2):
        members.add(1 | (1 << i) | (1 << j))
    return GenericSet(r, frozenset(members))


def construct_full(r: int) -> GenericSet:
    """F_2^r 中全部非零向量，对任意 m 都是通用集合"""
    if r < 1:
        raise UsageError(f"r 必须为正: {r}")
    return GenericSet(r, frozenset(range(1, 1 << r)))


def weber_transform_matrix(r: int) -> BitMatrix:
    """S：第一列全 1，第 j 列（j >= 2）为 e_jᵀ"""
    if r < 2:
        raise UsageError(f"S 需要 r >= 2: r={r}")
    rows = [1] + [1 | (1 << i) for i in range(1, r)]
    return BitMatrix(tuple(rows), r)


def apply_transform(generic_set: GenericSet, transform: BitMatrix) -> GenericSet:
    """{aT : a ∈ A}，T 必须可逆"""
    r = generic_set.r
    if transform.row_count != r or transform.col_count != r:
        raise UsageError(f"变换矩阵应为 {r}x{r}: {transform.row_count}x{transform.col_count}")
    if rank(transform) != r:
        raise UsageError("变换矩阵奇异")
    return GenericSet(r, frozenset(combine_rows(a, transform.rows) for a in generic_set.members))


def _greedy_row_basis(rows) -> Tuple[int, ...]:
    """从第 1 行起逐行扫描，保留使秩增加的行，返回其下标（0 起始）"""
    chosen = []
    chosen_rows = []
    for i, row in enumerate(rows):
        if rank_of_rows(chosen_rows + [row]) > len(chosen_rows):
            chosen.append(i)
            chosen_rows.append(row)
    return tuple(chosen)


def find_covering_vector(matrix: BitMatrix) -> BitVec:
    """对秩为 m 的 r×m 矩阵 M 构造 a ∈ A_{r,m} 使 wt(aM) = 1

    按构造性证明的两种情形求解：
      (i)  第一行非零：基包含第 1 行，在 x_1 = 1 的组合中按整数顺序找第一个
           使组合为单位向量的 x；
      (ii) 第一行为零：取表示权重 <= m−1 的最小下标单位向量 e_j，
           在其表示前补上第 1 位的 1。
    """
    r, m = matrix.row_count, matrix.col_count
    if not 2 <= m <= r:
        raise UsageError(f"需要 2 <= m <= r: r={r}, m={m}")
    if rank(matrix) != m:
        raise UsageError("矩阵秩不足")

    basis = _greedy_row_basis(matrix.rows)
    basis_rows = [matrix.rows[i] for i in basis]

    if matrix.rows[0]:
        # basis[0] == 0
        for x in range(1, 1 << m, 2):
            if popcount(combine_rows(x, basis_rows)) == 1:
                a = 0
                for k in range(m):
                    if (x >> k) & 1:
                        a |= 1 << basis[k]
                return BitVec(r, a)
        raise AssertionError("情形 (i) 未找到解")

    try:
        representations = invert(BitMatrix(tuple(basis_rows), m))
    except SingularMatrixError as e:
        raise AssertionError(f"基矩阵奇异: {e}")
    for x in representations.rows:
        # x 是 e_j 在基下的表示
        if popcount(x) <= m - 1:
            a = 1
            for k in range(m):
                if (x >> k) & 1:
                    a |= 1 << basis[k]
            return BitVec(r, a)
    raise AssertionError("情形 (ii) 未找到解")


def lower_bound(r: int, m: int) -> int:
    """F(r,m) >= r"""
    _check_bound_range(r, m)
    return r


def upper_bound_coefficient(m: int) -> float:
    """c_m = m / (−log2(1 − m·2^{−m}))"""
    if m < 1:
        raise UsageError(f"m 必须为正: {m}")
    return m / -math.log2(1 - m * 2.0 ** -m)


def upper_bound(r: int, m: int) -> Tuple[float, int]:
    """返回 (c_m, ⌈c_m·r⌉)"""
    _check_bound_range(r, m)
    coefficient = upper_bound_coefficient(m)
    return coefficient, math.ceil(coefficient * r)


def parity_pattern_matrix(v: BitVec, m: int) -> BitMatrix:
    """构造秩为 m 的 r×m 矩阵，第 i 行为奇重当且仅当 i ∈ supp(v)

    supp(v) 中的行依次取 e_1..e_m（之后重复 e_1）；其余行依次取
    e_1 + e_k 补足秩，之后取零行。与 v 正交的 a 使 aM 为偶重。
    """
    r = v.length
    if v.is_zero():
        raise UsageError("v 不能为零向量")
    _check_bound_range(r, m)

    odd_next = 0
    even_next = min(v.weight, m)
    rows = []
    for i in range(r):
        if (v.bits >> i) & 1:
            rows.append(1 << odd_next if odd_next < m else 1)
            odd_next += 1
        elif even_next < m:
            rows.append(1 | (1 << even_next))
            even_next += 1
        else:
            rows.append(0)
    return BitMatrix(tuple(rows), m)


def bound_report(r: int, m: int) -> BoundReport:
    """汇总下界、上界与显式构造规模

    m = 1 时通用性等价于张成 F_2^r，取一组基的规模 r。
    """
    coefficient, upper = upper_bound(r, m)
    construction_size = size_formula(r, m) if m >= 2 else r
    return BoundReport(r=r, m=m, lower=lower_bound(r, m), upper_coefficient=coefficient,
                       upper=upper, construction_size=construction_size)


__all__ = [
    'GenericSet', 'BoundReport', 'construct_arm', 'size_formula', 'construct_weber',
    'construct_full', 'weber_transform_matrix', 'apply_transform', 'find_covering_vector',
    'lower_bound', 'upper_bound', 'upper_bound_coefficient', 'parity_pattern_matrix', 'bound_report'
]
