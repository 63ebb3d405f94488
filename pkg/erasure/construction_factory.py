"""构造工厂

以工厂模式管理各种显式构造，命令行 genset 通过它按名称调度。
"""

import logging
from typing import Dict, List, Optional, Type

from erasure.construction_interface import ConstructionInterface, ConstructionMetadata, check_range
from erasure.exceptions import UsageError
from erasure.gensets import (
    GenericSet, construct_arm, construct_full, construct_weber, size_formula
)

logger = logging.getLogger('erasure_sets')


class ArmConstruction(ConstructionInterface):
    """A_{r,m}：首坐标为 1 且重量不超过 m 的全部向量"""

    @property
    def name(self) -> str:
        return "arm"

    @property
    def description(self) -> str:
        return "首坐标为 1、重量不超过 m 的向量集合"

    @property
    def version(self) -> str:
        return "1.0.0"

    def validate_parameters(self, r: int, m: int) -> None:
        check_range(r, m, min_r=2, min_m=2)

    def build(self, r: int, m: int) -> GenericSet:
        self.validate_parameters(r, m)
        return construct_arm(r, m)

    def expected_size(self, r: int, m: int) -> int:
        return size_formula(r, m)


class WeberConstruction(ConstructionInterface):
    """W_r：单位向量加上 e_1 + e_i + e_j，对 m = 3 通用"""

    @property
    def name(self) -> str:
        return "weber"

    @property
    def description(self) -> str:
        return "单位向量与 e_1+e_i+e_j 组成的 (r,3) 集合"

    @property
    def version(self) -> str:
        return "1.0.0"

    @property
    def uses_m(self) -> bool:
        return False

    def validate_parameters(self, r: int, m: int) -> None:
        if r < 3:
            raise UsageError(f"weber 构造需要 r >= 3: r={r}")
        if m is not None and m != 3:
            raise UsageError(f"weber 构造仅适用于 m = 3: m={m}")

    def build(self, r: int, m: int) -> GenericSet:
        self.validate_parameters(r, m)
        return construct_weber(r)

    def expected_size(self, r: int, m: int) -> int:
        return size_formula(r, 3)


class FullConstruction(ConstructionInterface):
    """F_2^r 的全部非零向量"""

    @property
    def name(self) -> str:
        return "full"

    @property
    def description(self) -> str:
        return "全部非零向量，对任意 m 通用"

    @property
    def version(self) -> str:
        return "1.0.0"

    @property
    def uses_m(self) -> bool:
        return False

    def validate_parameters(self, r: int, m: int) -> None:
        check_range(r, r if m is None else m)

    def build(self, r: int, m: int) -> GenericSet:
        self.validate_parameters(r, m)
        return construct_full(r)

    def expected_size(self, r: int, m: int) -> int:
        return (1 << r) - 1


class ConstructionFactory:
    """构造工厂类

    负责注册和创建各种构造实例
    """

    def __init__(self):
        self._constructions: Dict[str, Type[ConstructionInterface]] = {}
        self._metadata: Dict[str, ConstructionMetadata] = {}
        self._instances: Dict[str, ConstructionInterface] = {}
        self._register_builtin_constructions()

    def _register_builtin_constructions(self):
        self.register_construction(ArmConstruction, ConstructionMetadata(
            name="arm", description="A_{r,m}", version="1.0.0", min_r=2))
        self.register_construction(WeberConstruction, ConstructionMetadata(
            name="weber", description="W_r", version="1.0.0", parameters=['r'], min_r=3))
        self.register_construction(FullConstruction, ConstructionMetadata(
            name="full", description="F_2^r \\ {0}", version="1.0.0", parameters=['r']))

    def register_construction(self, construction_class: Type[ConstructionInterface],
                              metadata: ConstructionMetadata = None) -> bool:
        """注册构造

        Args:
            construction_class: 构造类
            metadata: 构造元数据，为None时从实例读取

        Returns:
            bool: 注册是否成功
        """
        if not (isinstance(construction_class, type)
                and issubclass(construction_class, ConstructionInterface)):
            logger.error(f"构造 {construction_class!r} 未实现 ConstructionInterface 接口")
            return False

        instance = construction_class()
        if metadata is None:
            metadata = ConstructionMetadata(name=instance.name,
                                            description=instance.description,
                                            version=instance.version)
        self._constructions[instance.name] = construction_class
        self._metadata[instance.name] = metadata
        self._instances.pop(instance.name, None)
        logger.debug(f"构造 '{instance.name}' 注册成功")
        return True

    def get_construction(self, name: str) -> ConstructionInterface:
        """获取构造实例

        Raises:
            UsageError: 构造未注册
        """
        if name not in self._constructions:
            raise UsageError(f"未知的构造 '{name}'，可选: {', '.join(self.available_constructions())}")
        if name not in self._instances:
            self._instances[name] = self._constructions[name]()
        return self._instances[name]

    def available_constructions(self) -> List[str]:
        return sorted(self._constructions)

    def get_metadata(self, name: str) -> Optional[ConstructionMetadata]:
        return self._metadata.get(name)

    def build(self, name: str, r: int, m: int) -> GenericSet:
        """按名称生成集合，规模与构造公式不符时记录警告"""
        construction = self.get_construction(name)
        generic_set = construction.build(r, m)
        expected = construction.expected_size(r, m)
        if len(generic_set) != expected:
            logger.warning(f"构造 {name} 生成 {len(generic_set)} 个向量，公式给出 {expected}")
        metadata = self.get_metadata(name)
        logger.info(f"构造 {name} v{metadata.version} (r={r}, m={m}) 生成 {len(generic_set)} 个向量")
        return generic_set


_construction_factory = None


def get_construction_factory() -> ConstructionFactory:
    """获取全局构造工厂实例"""
    global _construction_factory
    if _construction_factory is None:
        _construction_factory = ConstructionFactory()
    return _construction_factory


__all__ = [
    'ArmConstruction', 'WeberConstruction', 'FullConstruction', 'ConstructionFactory',
    'get_construction_factory'
]
