"""
Test ensemble files and run reports
"""
import json
import math
import tempfile
from pathlib import Path

import numpy as np
import pytest

from src.errors import NegativeEigenvalueError, ParseError, TraceError
from src.formats import (
    build_report, flatten_report, load_ensemble, load_report, parse_ensemble,
    parse_tabular, render_report, save_ensemble
)
from src.states import gen_ginibre_mixed, gen_haar_pure


def _write(text):
    with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
        f.write(text)
        return f.name


def test_load_pure_and_mixed_states():
    """Both entry types are parsed and validated"""
    temp_file = _write(json.dumps({
        'dim': 2,
        'states': [
            {'type': 'pure', 'amplitudes': [[1.0, 0.0], [0.0, 0.0]]},
            {'type': 'mixed', 'matrix': [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]},
        ],
    }))
    try:
        ensemble = load_ensemble(temp_file)
        assert ensemble.n == 2 and ensemble.dim == 2
        assert ensemble[0].is_pure
        assert ensemble[1].rank == 2
    finally:
        Path(temp_file).unlink()


def test_malformed_json_reports_line():
    """JSON syntax errors name the line"""
    temp_file = _write('{"dim": 2,\n "states": [}\n')
    try:
        with pytest.raises(ParseError, match='line 2'):
            load_ensemble(temp_file)
    finally:
        Path(temp_file).unlink()


def test_malformed_complex_pair_names_path():
    """A bad [re, im] pair is reported with its JSON path"""
    data = {'dim': 2, 'states': [
        {'type': 'pure', 'amplitudes': [[1.0, 0.0], [0.0, 0.0]]},
        {'type': 'pure', 'amplitudes': [[1.0], [0.0, 0.0]]},
    ]}
    with pytest.raises(ParseError, match=r'states\[1\]\.amplitudes\[0\]'):
        parse_ensemble(data)


def test_structural_errors():
    """Missing dim, unknown types and wrong lengths are parse errors"""
    with pytest.raises(ParseError):
        parse_ensemble({'states': []})
    with pytest.raises(ParseError, match='type'):
        parse_ensemble({'dim': 1, 'states': [{'type': 'thermal'}]})
    with pytest.raises(ParseError, match='amplitudes'):
        parse_ensemble({'dim': 2, 'states': [{'type': 'pure', 'amplitudes': [[1.0, 0.0]]}]})


def test_unnormalized_state_names_index():
    """No silent renormalization; the offending index is named"""
    data = {'dim': 2, 'states': [
        {'type': 'pure', 'amplitudes': [[1.0, 0.0], [0.0, 0.0]]},
        {'type': 'pure', 'amplitudes': [[1.0, 0.0], [1.0, 0.0]]},
    ]}
    with pytest.raises(TraceError, match=r'states\[1\]'):
        parse_ensemble(data)

    negative = {'dim': 2, 'states': [
        {'type': 'mixed', 'matrix': [[[1.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]]},
        {'type': 'pure', 'amplitudes': [[1.0, 0.0], [0.0, 0.0]]},
    ]}
    with pytest.raises(NegativeEigenvalueError, match=r'states\[0\]'):
        parse_ensemble(negative)


def test_missing_file():
    """A missing ensemble file raises FileNotFoundError"""
    with pytest.raises(FileNotFoundError):
        load_ensemble('/nonexistent/ensemble.json')


def test_save_and_load_preserves_doubles():
    """Written amplitudes and matrices read back bit-for-bit"""
    with tempfile.TemporaryDirectory() as tmp:
        for ensemble in (gen_haar_pure(5, 3, seed=7), gen_ginibre_mixed(3, 2, 2, seed=7)):
            path = Path(tmp) / 'ensemble.json'
            save_ensemble(path, ensemble)
            loaded = load_ensemble(path)
            for original, restored in zip(ensemble, loaded):
                assert np.array_equal(original.matrix, restored.matrix)


def test_save_is_reproducible():
    """Equal ensembles produce identical files"""
    with tempfile.TemporaryDirectory() as tmp:
        a, b = Path(tmp) / 'a.json', Path(tmp) / 'b.json'
        save_ensemble(a, gen_haar_pure(8, 8, seed=7))
        save_ensemble(b, gen_haar_pure(8, 8, seed=7))
        assert a.read_bytes() == b.read_bytes()


def test_report_sanitizes_numpy_and_infinity():
    """numpy values become plain JSON, infinities become strings"""
    report = build_report('pgm', {'n': np.int64(3)}, {
        'norm': np.float64(2.5),
        'inv_norm': math.inf,
        'diagonal': np.array([0.5, 0.25]),
        'pure': np.bool_(True),
    })
    assert report['parameters']['n'] == 3
    assert report['results']['inv_norm'] == 'inf'
    assert report['results']['diagonal'] == [0.5, 0.25]
    assert report['results']['pure'] is True
    assert report['failures'] == []
    json.dumps(report)


def test_structured_and_tabular_parity():
    """Every number appears with the same text in both formats"""
    report = build_report('bounds', {'delta': 0.01}, {
        'gram_norm': 1 / 3,
        'bounds': [{'bound_name': 'x', 'holds': True, 'slack': 1e-17}],
        'budget': None,
    })
    structured = json.loads(render_report(report, 'structured'))
    rows = parse_tabular(render_report(report, 'tabular'))

    assert rows['results.gram_norm'] == repr(1 / 3)
    assert float(rows['results.gram_norm']) == structured['results']['gram_norm']
    assert rows['results.bounds[0].holds'] == 'true'
    assert rows['results.bounds[0].slack'] == repr(1e-17)
    assert rows['results.budget'] == 'null'
    assert rows['failures'] == '[]'
    assert len(rows) == len(flatten_report(report))


def test_numbers_use_shortest_round_trip_text():
    """0.1 stays '0.1', awkward doubles use at most 17 digits and read back exactly"""
    values = [0.1, 1 / 3, 2 ** 0.5, 1e-17, 0.30000000000000004]
    rows = parse_tabular(render_report(build_report('bounds', {}, {'values': values}), 'tabular'))
    assert rows['results.values[0]'] == '0.1'
    for index, value in enumerate(values):
        text = rows[f'results.values[{index}]']
        assert text == repr(value)
        assert len(text.lstrip('-').split('e')[0].replace('.', '').lstrip('0')) <= 17
        assert float(text) == value


def test_parse_tabular_rejects_missing_header():
    """The key/value header is required"""
    with pytest.raises(ParseError):
        parse_tabular('a\tb\n')


def test_load_report():
    """Structured reports load back, malformed ones raise ParseError"""
    report = build_report('copies', {}, {'k': 3})
    temp_file = _write(render_report(report))
    bad_file = _write('{"command": ')
    try:
        assert load_report(temp_file) == report
        with pytest.raises(ParseError):
            load_report(bad_file)
    finally:
        Path(temp_file).unlink()
        Path(bad_file).unlink()
