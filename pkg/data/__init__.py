"""
数据存档模块
"""

from .archive import (
    ArchiveStore, ParseError,
    generators_from_dict, generators_to_dict, load_generators, load_piece, load_quadric, load_witnesses,
    parse_quadric, quadric_to_dict, save_generators, save_piece, save_quadric, save_witnesses,
    witness_from_dict, witness_to_dict, write_json,
)

__all__ = [
    'ArchiveStore', 'ParseError',
    'generators_from_dict', 'generators_to_dict', 'load_generators', 'load_piece', 'load_quadric',
    'load_witnesses', 'parse_quadric', 'quadric_to_dict', 'save_generators', 'save_piece',
    'save_quadric', 'save_witnesses', 'witness_from_dict', 'witness_to_dict', 'write_json',
]
