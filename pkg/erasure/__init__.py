# -*- coding: utf-8 -*-
"""
通用纠删集合模块初始化文件

导出构造、验证与译码的常用入口
"""

from erasure.decoder import (
    CheckCollection, Code, ReceivedWord, generate_checks, is_m_erasure_decoding,
    is_m_erasure_reducing, peel_decode
)
from erasure.exceptions import ErasureSetError, FormatError, SingularMatrixError, UsageError
from erasure.gensets import GenericSet, construct_arm, construct_weber, size_formula
from erasure.verifier import VerificationReport, random_search, verify_generic

__all__ = [
    'CheckCollection',
    'Code',
    'ReceivedWord',
    'generate_checks',
    'is_m_erasure_decoding',
    'is_m_erasure_reducing',
    'peel_decode',
    'ErasureSetError',
    'FormatError',
    'SingularMatrixError',
    'UsageError',
    'GenericSet',
    'construct_arm',
    'construct_weber',
    'size_formula',
    'VerificationReport',
    'random_search',
    'verify_generic'
]
