"""
报告与可视化模块
"""

from .summary import SubCheck, VerificationReport, jsonable, print_report, report_path, save_report
from .visualizer import close_all, plot_census, plot_check_summary
