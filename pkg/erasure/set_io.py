"""文本文件读写

集合文件、校验矩阵文件与校验集合文件共用同一行格式：每行一个
'0'/'1' 字符串，坐标 1 在最左边，UTF-8 编码，以换行结尾。
"""

import logging
from pathlib import Path
from typing import List, Sequence, Union

from erasure.decoder import CheckCollection, Code
from erasure.exceptions import FormatError
from erasure.gensets import GenericSet
from erasure.gf2_core import BitMatrix, BitVec
from utils import ensure_dir_exists

logger = logging.getLogger('erasure_sets')

PathLike = Union[str, Path]
ENCODING = 'utf-8'


def _read_vectors(path: PathLike, expected_length: int = None) -> List[BitVec]:
    """读取非空行并解析为等长向量"""
    text = Path(path).read_text(encoding=ENCODING)
    vectors = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            vector = BitVec.from_string(line)
        except FormatError as e:
            raise FormatError(f"{path}:{line_no}: {e}") from e
        length = expected_length if expected_length is not None else (
            vectors[0].length if vectors else vector.length)
        if vector.length != length:
            raise FormatError(f"{path}:{line_no}: 长度 {vector.length}，应为 {length}")
        vectors.append(vector)
    return vectors


def _write_lines(path: PathLike, lines: Sequence[str]):
    path = Path(path)
    ensure_dir_exists(str(path.parent))
    path.write_text(''.join(f"{line}\n" for line in lines), encoding=ENCODING)


def read_set(path: PathLike, r: int = None) -> GenericSet:
    """读取集合文件

    Args:
        path: 文件路径
        r: 期望的向量长度，为None时取第一行的长度

    Raises:
        FormatError: 字符非法、长度不一致、含零向量或文件为空
    """
    vectors = _read_vectors(path, r)
    if not vectors:
        if r is None:
            raise FormatError(f"{path}: 集合文件为空且未指定 r")
        return GenericSet(r, frozenset())
    if any(v.is_zero() for v in vectors):
        raise FormatError(f"{path}: 集合不能包含零向量")
    members = [v.bits for v in vectors]
    if len(set(members)) != len(members):
        logger.warning(f"{path}: 去掉 {len(members) - len(set(members))} 个重复向量")
    return GenericSet(vectors[0].length, frozenset(members))


def write_set(path: PathLike, generic_set: GenericSet):
    """按整数编码升序写出集合"""
    _write_lines(path, generic_set.to_lines())
    logger.debug(f"写出 {len(generic_set)} 个向量到 {path}")


def read_matrix(path: PathLike) -> BitMatrix:
    vectors = _read_vectors(path)
    if not vectors:
        raise FormatError(f"{path}: 矩阵文件为空")
    return BitMatrix.from_vectors(vectors)


def read_code(path: PathLike) -> Code:
    """读取校验矩阵文件；不满秩时 Code 抛出 UsageError"""
    return Code(read_matrix(path))


def write_matrix(path: PathLike, matrix: BitMatrix):
    _write_lines(path, matrix.to_strings())


def read_checks(path: PathLike) -> CheckCollection:
    """读取校验集合文件，零行与重复行被丢弃"""
    vectors = _read_vectors(path)
    if not vectors:
        raise FormatError(f"{path}: 校验集合文件为空")
    checks = CheckCollection.from_vectors(vectors[0].length, vectors)
    if len(checks) != len(vectors):
        logger.warning(f"{path}: 丢弃 {len(vectors) - len(checks)} 个零向量或重复向量")
    return checks


def write_checks(path: PathLike, checks: CheckCollection):
    _write_lines(path, checks.to_lines())


__all__ = [
    'read_set', 'write_set', 'read_matrix', 'read_code', 'write_matrix', 'read_checks',
    'write_checks'
]
