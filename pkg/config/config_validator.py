"""配置验证模块

提供配置字典的验证与修复功能。
"""

import copy
import logging
from typing import Any, Dict

logger = logging.getLogger(__name__)


class ConfigValidator:
    """配置验证器

    负责验证和修复 erasure_config.json 的内容。
    """

    def __init__(self):
        """初始化配置验证器"""
        self.default_config = {
            "verifier": {"jobs": 0, "parallel_threshold": 20000, "partitions_per_job": 4},
            "search": {"default_seed": 0, "default_restarts": 20},
            "decoder": {"max_stopping_set_length": 20},
            "research": {"max_min_size_r": 4, "default_size_limit": 8},
            "logging": {"level": "INFO", "log_file": None}
        }

        self.validation_rules = {
            ("verifier", "jobs"): {"type": int, "min": 0, "max": 256},
            ("verifier", "parallel_threshold"): {"type": int, "min": 0},
            ("verifier", "partitions_per_job"): {"type": int, "min": 1, "max": 64},
            ("search", "default_seed"): {"type": int, "min": 0},
            ("search", "default_restarts"): {"type": int, "min": 1, "max": 100000},
            ("decoder", "max_stopping_set_length"): {"type": int, "min": 1, "max": 24},
            ("research", "max_min_size_r"): {"type": int, "min": 1, "max": 5},
            ("research", "default_size_limit"): {"type": int, "min": 1, "max": 31},
            ("logging", "level"): {"type": str, "choices": ["DEBUG", "INFO", "WARNING", "ERROR"]},
            ("logging", "log_file"): {"type": (str, type(None))}
        }

    def validate_config(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """验证配置

        Args:
            config: 配置字典

        Returns:
            验证结果字典，包含 valid 和 issues
        """
        result = {'valid': True, 'issues': []}
        for (section, field), rules in self.validation_rules.items():
            issue = self._check_field(config.get(section, {}).get(field, None), rules)
            if issue is not None:
                result['issues'].append({'field': f'{section}.{field}', 'issue': issue})
                result['valid'] = False
        logger.debug(f"配置验证完成: {len(result['issues'])} 个问题")
        return result

    def _check_field(self, value: Any, rules: Dict[str, Any]):
        """检查单个字段，返回问题描述或None"""
        expected_type = rules['type']
        # bool 是 int 的子类，需单独排除
        if isinstance(value, bool) or not isinstance(value, expected_type):
            if value is None and isinstance(expected_type, tuple) and type(None) in expected_type:
                return None
            return '缺失或类型错误'
        if 'min' in rules and value < rules['min']:
            return f'值过小，最小值为 {rules["min"]}'
        if 'max' in rules and value > rules['max']:
            return f'值过大，最大值为 {rules["max"]}'
        if 'choices' in rules and value not in rules['choices']:
            return f'无效的选择，可选值: {rules["choices"]}'
        return None

    def fix_config_issues(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """修复配置问题

        缺失或类型错误的字段使用默认值，越界的数值截断到边界。
        未知字段会被丢弃。

        Args:
            config: 原始配置

        Returns:
            修复后的配置
        """
        fixed_config = copy.deepcopy(self.default_config)
        for (section, field), rules in self.validation_rules.items():
            if field not in config.get(section, {}):
                continue
            value = config[section][field]
            issue = self._check_field(value, rules)
            if issue is None:
                fixed_config[section][field] = value
                continue
            if isinstance(value, (int, float)) and not isinstance(value, bool) and rules['type'] is int:
                if 'min' in rules and value < rules['min']:
                    fixed_config[section][field] = rules['min']
                elif 'max' in rules and value > rules['max']:
                    fixed_config[section][field] = rules['max']
            logger.warning(f"修复配置字段 {section}.{field}: {value!r} -> {fixed_config[section][field]!r} ({issue})")
        return fixed_config

    def get_default_config(self) -> Dict[str, Any]:
        """获取默认配置"""
        return copy.deepcopy(self.default_config)


# 创建全局实例
config_validator = ConfigValidator()
