"""
余迷向矩阵的参考转录
Reference Transcription of the 21 x 3 Coisotropy Matrix

第一列为 2P 的对称系数，第二列为 c_k，第三列为 Λ(Q)/2 的对称系数。
第三列保留发表时的项序，比较前先解析再按 grevlex 规范化。
"""

from typing import List

from grassmann.quadric import C_VARS
from poly.mpoly import MPoly

FIG1_FIRST_COLUMN = (0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0)

FIG1_THIRD_COLUMN = (
    "2*c0*c5 - 2*c1*c4 + 2*c2*c3",
    "c0*c10 - c1*c9 + c2*c8 + c3*c7 - c4*c6 + c1*c5",
    "c0*c14 - c1*c13 + c2*c12 + c3*c11 - c4*c7 + c2*c5",
    "c0*c17 - c1*c16 + c2*c15 + c3*c12 - c4*c8 + c3*c5",
    "c0*c19 - c1*c18 + c2*c16 + c3*c13 - c4*c9 + c4*c5",
    "c0*c20 - c1*c19 + c2*c17 + c3*c14 - c4*c10 + c5^2",
    "2*c1*c10 - 2*c6*c9 + 2*c7*c8",
    "c1*c14 - c6*c13 + c7*c12 + c8*c11 + c2*c10 - c7*c9",
    "c1*c17 - c6*c16 + c7*c15 + c8*c12 + c3*c10 - c8*c9",
    "c1*c19 - c6*c18 + c7*c16 + c8*c13 + c4*c10 - c9^2",
    "c1*c20 - c6*c19 + c7*c17 + c8*c14 - c9*c10 + c5*c10",
    "2*c2*c14 - 2*c7*c13 + 2*c11*c12",
    "c2*c17 - c7*c16 + c11*c15 + c3*c14 - c8*c13 + c12^2",
    "c2*c19 - c7*c18 + c11*c16 + c4*c14 + c12*c13 - c9*c13",
    "c2*c20 - c7*c19 + c11*c17 + c12*c14 + c5*c14 - c10*c13",
    "2*c3*c17 - 2*c8*c16 + 2*c12*c15",
    "c3*c19 - c8*c18 + c4*c17 + c12*c16 - c9*c16 + c13*c15",
    "c3*c20 - c8*c19 + c12*c17 + c5*c17 - c10*c16 + c14*c15",
    "2*c4*c19 - 2*c9*c18 + 2*c13*c16",
    "c4*c20 - c9*c19 + c5*c19 - c10*c18 + c13*c17 + c14*c16",
    "2*c5*c20 - 2*c10*c19 + 2*c14*c17",
)


def reference_rows() -> List[List[str]]:
    """每行三个规范文本"""
    rows = []
    for k, (first, third) in enumerate(zip(FIG1_FIRST_COLUMN, FIG1_THIRD_COLUMN)):
        rows.append([
            MPoly.constant(C_VARS, first).to_text(),
            C_VARS.var(k).to_text(),
            MPoly.from_text(C_VARS, third).to_text(),
        ])
    return rows


def matrix_rows_text(matrix) -> List[List[str]]:
    return [[entry.to_text() for entry in row] for row in matrix]


def fig1_mismatches(matrix) -> List[tuple]:
    """(行, 列, 计算文本, 参考文本)，一致时为空"""
    computed = matrix_rows_text(matrix)
    return [(r, col, computed[r][col], ref)
            for r, row in enumerate(reference_rows())
            for col, ref in enumerate(row)
            if computed[r][col] != ref]
