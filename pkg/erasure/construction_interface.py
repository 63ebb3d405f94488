"""集合构造接口定义

定义所有显式构造必须实现的基础接口，供构造工厂统一注册和调度。
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List

from erasure.exceptions import UsageError
from erasure.gensets import GenericSet


class ConstructionInterface(ABC):
    """显式构造基础接口

    所有构造都必须继承此接口并实现相应方法
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """构造名称（即命令行中的 --kind）"""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """构造描述"""
        pass

    @property
    @abstractmethod
    def version(self) -> str:
        """构造版本"""
        pass

    @property
    def uses_m(self) -> bool:
        """构造是否依赖参数 m"""
        return True

    @abstractmethod
    def validate_parameters(self, r: int, m: int) -> None:
        """检查参数范围

        Args:
            r: 维数
            m: 纠删数

        Raises:
            UsageError: 参数不在构造的适用范围内
        """
        pass

    @abstractmethod
    def build(self, r: int, m: int) -> GenericSet:
        """生成集合

        Args:
            r: 维数
            m: 纠删数

        Returns:
            GenericSet: 生成的通用纠删集合
        """
        pass

    def expected_size(self, r: int, m: int) -> int:
        """构造的规模，默认直接生成后计数"""
        return len(self.build(r, m))


class ConstructionMetadata:
    """构造元数据

    用于描述构造的详细信息
    """

    def __init__(self,
                 name: str,
                 description: str,
                 version: str,
                 parameters: List[str] = None,
                 min_r: int = 1):
        self.name = name
        self.description = description
        self.version = version
        self.parameters = parameters or ['r', 'm']
        self.min_r = min_r

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'name': self.name,
            'description': self.description,
            'version': self.version,
            'parameters': self.parameters,
            'min_r': self.min_r
        }


def check_range(r: int, m: int, min_r: int = 1, min_m: int = 1):
    """检查 min_m <= m <= r 且 r >= min_r"""
    if r < min_r:
        raise UsageError(f"需要 r >= {min_r}: r={r}")
    if not min_m <= m <= r:
        raise UsageError(f"需要 {min_m} <= m <= r: r={r}, m={m}")


__all__ = ['ConstructionInterface', 'ConstructionMetadata', 'check_range']
