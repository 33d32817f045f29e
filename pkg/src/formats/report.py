"""
Run reports: one nested document rendered as JSON or as key/value TSV

Both renderings format every number the same way: the shortest repr that
round-trips the double (at most 17 significant digits, often far fewer),
with infinities and NaN written as the strings "inf", "-inf", "nan". A
value read back from either output is bit-identical to the one written.
"""
import json
import math
import sys
from pathlib import Path

import numpy as np

from src import __version__
from src.errors import ParseError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

FORMATS = ('structured', 'tabular')


def sanitize(value):
    """
    Convert numpy scalars/arrays, tuples and non-finite floats to plain JSON values

    Args:
        value: Any nested combination of dicts, lists and scalars

    Returns:
        JSON-serializable copy
    """
    if isinstance(value, dict):
        return {str(k): sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(v) for v in value]
    if isinstance(value, np.ndarray):
        return sanitize(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    return value


def build_report(command, parameters, results, failures=None, diagnostics=None):
    """
    Assemble a run report

    Args:
        command: Command name
        parameters: Resolved parameters
        results: Command results
        failures: List of {'kind', 'message'} entries
        diagnostics: Non-fatal messages

    Returns:
        Sanitized report dictionary
    """
    return sanitize({
        'command': command,
        'version': __version__,
        'parameters': parameters or {},
        'results': results or {},
        'diagnostics': list(diagnostics or []),
        'failures': list(failures or []),
    })


def failure_report(command, failures, parameters=None):
    """Report carrying only the failure list"""
    return build_report(command, parameters, {}, failures=failures)


def _flatten(value, prefix, rows):
    if isinstance(value, dict):
        if not value:
            rows.append((prefix, '{}'))
        for key, item in value.items():
            _flatten(item, f"{prefix}.{key}" if prefix else key, rows)
    elif isinstance(value, list):
        if not value:
            rows.append((prefix, '[]'))
        for index, item in enumerate(value):
            _flatten(item, f"{prefix}[{index}]", rows)
    else:
        rows.append((prefix, _scalar_text(value)))


def _scalar_text(value):
    if isinstance(value, str):
        return value
    # same literal json.dumps writes in the structured output
    return json.dumps(value)


def flatten_report(report):
    """
    Flatten a report into (dotted.key[index], text) rows

    Returns:
        List of (key, value text) tuples in document order
    """
    rows = []
    _flatten(sanitize(report), '', rows)
    return rows


def render_structured(report):
    return json.dumps(sanitize(report), indent=2) + '\n'


def render_tabular(report):
    lines = ['key\tvalue']
    lines.extend(f"{key}\t{text}" for key, text in flatten_report(report))
    return '\n'.join(lines) + '\n'


def render_report(report, fmt='structured'):
    """
    Render a report

    Args:
        report: Report dictionary
        fmt: 'structured' (JSON) or 'tabular' (TSV)

    Returns:
        Text
    """
    if fmt == 'structured':
        return render_structured(report)
    if fmt == 'tabular':
        return render_tabular(report)
    raise ValueError(f"Unknown report format '{fmt}', expected one of {FORMATS}")


def write_report(report, output=None, fmt='structured'):
    """
    Write a rendered report to a file, or to stdout when no path is given

    Args:
        report: Report dictionary
        output: Output path (optional)
        fmt: Report format
    """
    text = render_report(report, fmt)
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"✓ Report written to: {output}")


def parse_tabular(text):
    """
    Read a tabular report back into a {key: value text} mapping

    Raises:
        ParseError: On a malformed header or row
    """
    lines = text.splitlines()
    if not lines or lines[0] != 'key\tvalue':
        raise ParseError("Tabular report must start with a 'key<TAB>value' header")
    rows = {}
    for number, line in enumerate(lines[1:], start=2):
        key, sep, value = line.partition('\t')
        if not sep:
            raise ParseError(f"line {number}: expected key<TAB>value")
        rows[key] = value
    return rows


def load_report(path):
    """
    Load a structured (JSON) report

    Raises:
        FileNotFoundError: If the file does not exist
        ParseError: On malformed JSON
    """
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Report file not found: {path}")
    try:
        return json.loads(file_path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e
