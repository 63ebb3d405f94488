#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
通用纠删集合命令行工具

用法示例:
    python erasure_tool.py genset --kind arm --r 4 --m 3 --out a43.txt
    python erasure_tool.py verify a43.txt --r 4 --m 3
"""

import sys

from erasure.cli import main

if __name__ == "__main__":
    sys.exit(main())
