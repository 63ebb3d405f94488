#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
纠删集合工具模块

包含项目所需的工具函数、配置信息和日志设置
"""

import os
import sys
import logging

# ==================== 配置信息 ====================

# 错误消息配置
ERROR_MESSAGES = {
    'usage': '参数错误',
    'format': '文件或字符串格式错误',
    'singular': '矩阵不可逆',
    'file_not_found': '文件不存在',
    'permission_denied': '没有权限访问文件或目录',
    'unknown_error': '发生未知错误'
}

# 应用程序配置
APP_CONFIG = {
    'name': 'erasure_sets',
    'version': '1.0.0',
    'author': '纠删集合项目组',
    'encoding': 'utf-8'
}

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(APP_CONFIG['name'])

# ==================== 工具函数 ====================


def ensure_dir_exists(directory):
    """
    确保目录存在，如果不存在则创建

    Args:
        directory (str): 目录路径

    Returns:
        bool: 创建成功返回True，失败返回False
    """
    if not directory or os.path.exists(directory):
        return True
    try:
        os.makedirs(directory)
        logger.info(f"创建目录: {directory}")
        return True
    except OSError as e:
        logger.error(f"创建目录失败: {directory}, 错误: {str(e)}")
        return False


def get_error_message(error_code):
    """
    根据错误代码获取错误消息

    Args:
        error_code (str): 错误代码

    Returns:
        str: 错误消息
    """
    return ERROR_MESSAGES.get(error_code, ERROR_MESSAGES['unknown_error'])


def get_app_info():
    """
    获取应用程序信息

    Returns:
        dict: 应用程序配置信息
    """
    return APP_CONFIG.copy()


def setup_logging(log_level=logging.INFO, log_file=None):
    """
    重新配置日志系统

    标准错误输出始终启用；只有指定日志文件时才写文件。

    Args:
        log_level: 日志级别（整数或级别名称）
        log_file (str, optional): 日志文件路径
    """
    if isinstance(log_level, str):
        log_level = getattr(logging, log_level.upper(), logging.INFO)

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        ensure_dir_exists(os.path.dirname(os.path.abspath(log_file)))
        handlers.append(logging.FileHandler(log_file, encoding=APP_CONFIG['encoding']))

    logging.basicConfig(
        level=log_level,
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )


__all__ = [
    'ERROR_MESSAGES',
    'APP_CONFIG',
    'LOG_FORMAT',
    'logger',
    'ensure_dir_exists',
    'get_error_message',
    'get_app_info',
    'setup_logging'
]
