"""配置管理模块

提供统一的配置管理功能，支持参数外部化。
"""

import json
import logging
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Any, Dict, Optional

from config.config_validator import config_validator

logger = logging.getLogger(__name__)


@dataclass
class VerifierConfig:
    """验证器配置"""
    jobs: int = 0  # 0 表示使用全部CPU核心
    parallel_threshold: int = 20000
    partitions_per_job: int = 4


@dataclass
class SearchConfig:
    """随机搜索配置"""
    default_seed: int = 0
    default_restarts: int = 20


@dataclass
class DecoderConfig:
    """译码器配置"""
    max_stopping_set_length: int = 20


@dataclass
class ResearchConfig:
    """最小规模搜索配置"""
    max_min_size_r: int = 4
    default_size_limit: int = 8


@dataclass
class LoggingConfig:
    """日志配置"""
    level: str = "INFO"
    log_file: Optional[str] = None


@dataclass
class ErasureConfig:
    """总配置"""
    verifier: VerifierConfig = None
    search: SearchConfig = None
    decoder: DecoderConfig = None
    research: ResearchConfig = None
    logging: LoggingConfig = None

    def __post_init__(self):
        if self.verifier is None:
            self.verifier = VerifierConfig()
        if self.search is None:
            self.search = SearchConfig()
        if self.decoder is None:
            self.decoder = DecoderConfig()
        if self.research is None:
            self.research = ResearchConfig()
        if self.logging is None:
            self.logging = LoggingConfig()


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_dir: str = None):
        if config_dir is None:
            # 默认配置目录
            self.config_dir = Path(__file__).parent.parent / "config"
        else:
            self.config_dir = Path(config_dir)

        self.config_file = self.config_dir / "erasure_config.json"
        self._config = None

    def load_config(self) -> ErasureConfig:
        """加载配置"""
        if self._config is not None:
            return self._config

        try:
            if self.config_file.exists():
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    config_dict = json.load(f)
                self._config = self._dict_to_config(config_dict)
            else:
                logger.info(f"配置文件不存在，使用默认配置: {self.config_file}")
                self.reset_to_default()
        except (OSError, ValueError, TypeError) as e:
            logger.warning(f"配置加载失败，使用默认配置: {e}")
            self.reset_to_default()

        return self._config

    def save_config(self, config: ErasureConfig) -> bool:
        """保存配置"""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self._config_to_dict(config), f, indent=2, ensure_ascii=False)
            self._config = config
            return True
        except OSError as e:
            logger.error(f"配置保存失败: {e}")
            return False

    def update_config(self, **kwargs) -> ErasureConfig:
        """更新内存中的配置（不写盘）

        支持嵌套更新，例如 update_config(verifier={'jobs': 2})
        """
        config = self.load_config()
        for key, value in kwargs.items():
            if not hasattr(config, key):
                logger.warning(f"未知配置项: {key}")
                continue
            if isinstance(value, dict):
                sub_config = getattr(config, key)
                for sub_key, sub_value in value.items():
                    if hasattr(sub_config, sub_key):
                        setattr(sub_config, sub_key, sub_value)
                    else:
                        logger.warning(f"未知配置项: {key}.{sub_key}")
            else:
                setattr(config, key, value)
        return config

    def reset_to_default(self) -> ErasureConfig:
        """重置为默认配置（不写盘）"""
        self._config = ErasureConfig()
        return self._config

    def get_config(self) -> ErasureConfig:
        """获取当前配置"""
        return self.load_config()

    def export_config(self, export_path: str) -> bool:
        """导出配置到指定路径"""
        try:
            with open(export_path, 'w', encoding='utf-8') as f:
                json.dump(self._config_to_dict(self.load_config()), f, indent=2, ensure_ascii=False)
            return True
        except OSError as e:
            logger.error(f"配置导出失败: {e}")
            return False

    def import_config(self, import_path: str) -> ErasureConfig:
        """从指定路径导入配置（仅内存）"""
        with open(import_path, 'r', encoding='utf-8') as f:
            config_dict = json.load(f)
        self._config = self._dict_to_config(config_dict)
        return self._config

    def _config_to_dict(self, config: ErasureConfig) -> Dict[str, Any]:
        """配置对象转字典"""
        return {
            'verifier': asdict(config.verifier),
            'search': asdict(config.search),
            'decoder': asdict(config.decoder),
            'research': asdict(config.research),
            'logging': asdict(config.logging)
        }

    def _dict_to_config(self, config_dict: Dict[str, Any]) -> ErasureConfig:
        """字典转配置对象，先经过校验修复"""
        config_dict = config_validator.fix_config_issues(config_dict)
        return ErasureConfig(
            verifier=VerifierConfig(**config_dict.get('verifier', {})),
            search=SearchConfig(**config_dict.get('search', {})),
            decoder=DecoderConfig(**config_dict.get('decoder', {})),
            research=ResearchConfig(**config_dict.get('research', {})),
            logging=LoggingConfig(**config_dict.get('logging', {}))
        )


# 全局配置管理器实例
_config_manager = None


def get_config_manager() -> ConfigManager:
    """获取全局配置管理器实例"""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
    return _config_manager


def get_config() -> ErasureConfig:
    """获取当前配置"""
    return get_config_manager().load_config()
