"""
命令行与验证套件
"""

from .verify import TARGETS, run_target
from .main import build_parser, check_quadric, main
