"""异常定义

纠删集合工具包使用的具体异常类型。
"""


class ErasureSetError(Exception):
    """工具包异常基类"""


class UsageError(ErasureSetError, ValueError):
    """参数范围、维度或前置条件不满足"""


class SingularMatrixError(ErasureSetError, ArithmeticError):
    """矩阵在GF(2)上不可逆"""


class FormatError(UsageError):
    """文件或字符串格式错误"""


__all__ = ['ErasureSetError', 'UsageError', 'SingularMatrixError', 'FormatError']
