"""
Ensemble files and run reports
"""

from .ensemble_file import (
    FILE_TOL,
    parse_ensemble,
    load_ensemble,
    ensemble_to_dict,
    save_ensemble,
)
from .report import (
    FORMATS,
    sanitize,
    build_report,
    failure_report,
    flatten_report,
    render_report,
    write_report,
    parse_tabular,
    load_report,
)

__all__ = [
    'FILE_TOL',
    'parse_ensemble',
    'load_ensemble',
    'ensemble_to_dict',
    'save_ensemble',
    'FORMATS',
    'sanitize',
    'build_report',
    'failure_report',
    'flatten_report',
    'render_report',
    'write_report',
    'parse_tabular',
    'load_report',
]
