"""
Test the command-line interface
"""
import json
import math
import tempfile
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from cli import cli
from src.errors import EXIT_BOUND_VIOLATION, EXIT_INPUT_ERROR, EXIT_OK, EXIT_UNSUPPORTED
from src.formats import load_ensemble, parse_tabular, save_ensemble
from src.states import Ensemble, gen_ginibre_mixed, validate_density


@pytest.fixture
def workdir():
    with tempfile.TemporaryDirectory() as tmp:
        yield Path(tmp)


def _run(args):
    return CliRunner().invoke(cli, [str(a) for a in args])


def _report(path):
    return json.loads(Path(path).read_text())


def _two_state_file(workdir, c=1 / math.sqrt(2)):
    path = workdir / 'two.json'
    save_ensemble(path, Ensemble.from_vectors([[1.0, 0.0], [c, math.sqrt(1 - c * c)]]))
    return path


def test_pgm_two_state(workdir):
    """Diagonal of the two-state PGM is (1 + sqrt(1 - c^2)) / 2"""
    out = workdir / 'report.json'
    result = _run(['pgm', '--input', _two_state_file(workdir), '--output', out])
    assert result.exit_code == EXIT_OK
    report = _report(out)
    assert report['command'] == 'pgm'
    assert report['results']['diagonal'][0] == pytest.approx(0.853553, abs=1e-6)
    assert report['results']['method_max_difference'] <= 1e-9
    assert report['parameters']['n'] == 2


def test_pgm_orthonormal(workdir):
    """Orthonormal states have P_E = 0"""
    path = workdir / 'basis.json'
    save_ensemble(path, Ensemble.from_vectors(np.eye(3)))
    out = workdir / 'report.json'
    assert _run(['pgm', '--input', path, '--output', out]).exit_code == EXIT_OK
    assert _report(out)['results']['worst_case_error'] == pytest.approx(0.0, abs=1e-12)


def test_pgm_malformed_pair(workdir):
    """Parse errors exit 2 with a failure report naming the path"""
    path = workdir / 'bad.json'
    path.write_text(json.dumps({'dim': 2, 'states': [
        {'type': 'pure', 'amplitudes': [[1.0, 0.0], [0.0]]},
        {'type': 'pure', 'amplitudes': [[0.0, 0.0], [1.0, 0.0]]},
    ]}))
    out = workdir / 'report.json'
    result = _run(['pgm', '--input', path, '--output', out])
    assert result.exit_code == EXIT_INPUT_ERROR
    failures = _report(out)['failures']
    assert failures[0]['kind'] == 'parse-error'
    assert 'states[0].amplitudes[1]' in failures[0]['message']


def test_pgm_missing_input(workdir):
    """A missing file is an input error"""
    out = workdir / 'report.json'
    assert _run(['pgm', '--input', workdir / 'nope.json', '--output', out]).exit_code == EXIT_INPUT_ERROR


def test_pgm_tabular_parity(workdir):
    """Tabular output carries the same numbers as the structured output"""
    path = _two_state_file(workdir)
    structured, tabular = workdir / 'r.json', workdir / 'r.tsv'
    assert _run(['pgm', '--input', path, '--output', structured]).exit_code == EXIT_OK
    assert _run(['pgm', '--input', path, '--output', tabular, '--format', 'tabular']).exit_code == EXIT_OK
    report = _report(structured)
    rows = parse_tabular(tabular.read_text())
    assert float(rows['results.worst_case_error']) == report['results']['worst_case_error']
    assert float(rows['results.confusion_gram[1][0]']) == report['results']['confusion_gram'][1][0]


def test_bounds_equal_overlap(workdir):
    """Generated equal-overlap states make the Gram norm bound tight"""
    path = workdir / 'eq.json'
    assert _run(['gen', '--kind', 'equal-overlap', '--n', 8, '--c', 0.5, '--output', path]).exit_code == EXIT_OK
    out = workdir / 'bounds.json'
    result = _run(['bounds', '--input', path, '--output', out, '--delta', 0.01])
    assert result.exit_code == EXIT_OK
    report = _report(out)
    upper = next(b for b in report['results']['bounds'] if b['bound_name'] == 'gram_norm_upper')
    assert upper['slack'] == pytest.approx(0.0, abs=1e-9)
    assert report['results']['chain']['holds']
    budgets = report['results']['copy_budgets']
    assert budgets['joint_pgm']['k'] >= 1
    assert budgets['two_stage']['total'] == budgets['two_stage']['k'] * (budgets['two_stage']['l'] + 1)


def test_bounds_duplicate_states(workdir):
    """epsilon = 0 is diagnosed and copy budgets are omitted"""
    path = workdir / 'dup.json'
    save_ensemble(path, Ensemble.from_vectors([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    out = workdir / 'bounds.json'
    result = _run(['bounds', '--input', path, '--output', out])
    assert result.exit_code == EXIT_OK
    report = _report(out)
    assert report['results']['copy_budgets'] is None
    assert any('epsilon = 0' in d for d in report['diagnostics'])
    assert report['parameters']['epsilon_fidelity'] == 0.0


def test_bounds_maximally_mixed(workdir):
    """rho_i = I/n: the purity lower bound is tight at 1/n"""
    n = 3
    path = workdir / 'mixed.json'
    save_ensemble(path, Ensemble([validate_density(np.eye(n) / n) for _ in range(n)]))
    out = workdir / 'bounds.json'
    assert _run(['bounds', '--input', path, '--output', out]).exit_code == EXIT_OK
    lower = [b for b in _report(out)['results']['bounds'] if b['bound_name'].startswith('purity_sandwich_lower')]
    assert len(lower) == n
    for entry in lower:
        assert entry['bound_value'] == pytest.approx(1.0 / n, abs=1e-12)


def test_simulate_mixed_unsupported(workdir):
    """Mixed ensembles exit 3"""
    path = workdir / 'mixed.json'
    save_ensemble(path, gen_ginibre_mixed(3, 2, 3, seed=1))
    out = workdir / 'sim.json'
    result = _run(['simulate', '--input', path, '--output', out, '--seed', 1, '--trials', 100])
    assert result.exit_code == EXIT_UNSUPPORTED
    assert _report(out)['failures'][0]['kind'] == 'unsupported'


def test_simulate_refuses_few_trials_and_missing_seed(workdir):
    """trials below the minimum and a missing seed are input errors"""
    path = _two_state_file(workdir)
    out = workdir / 'sim.json'
    assert _run(['simulate', '--input', path, '--output', out, '--seed', 1, '--trials', 10]).exit_code == EXIT_INPUT_ERROR
    assert _run(['simulate', '--input', path, '--output', out, '--trials', 100]).exit_code == EXIT_INPUT_ERROR


def test_simulate_deterministic_across_workers(workdir):
    """Same seed gives byte-identical reports for any worker count"""
    path = workdir / 'haar.json'
    assert _run(['gen', '--kind', 'haar', '--d', 8, '--n', 4, '--seed', 3, '--output', path]).exit_code == EXIT_OK
    first, second = workdir / 'a.json', workdir / 'b.json'
    base = ['simulate', '--input', path, '--seed', 9, '--trials', 100, '--delta', 0.1]
    assert _run(base + ['--output', first, '--workers', 1]).exit_code == EXIT_OK
    assert _run(base + ['--output', second, '--workers', 3]).exit_code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()

    diff_out = workdir / 'diff.json'
    assert _run(['diff', first, second, '--output', diff_out]).exit_code == EXIT_OK
    assert _report(diff_out)['results']['identical']


def test_diff_detects_changes(workdir):
    """Reports on different ensembles give a non-zero diff exit status"""
    first, second = workdir / 'a.json', workdir / 'b.json'
    _run(['pgm', '--input', _two_state_file(workdir, 0.5), '--output', first])
    _run(['pgm', '--input', _two_state_file(workdir, 0.8), '--output', second])
    diff_out = workdir / 'diff.json'
    result = _run(['diff', first, second, '--output', diff_out])
    assert result.exit_code == EXIT_BOUND_VIOLATION
    report = _report(diff_out)
    assert not report['results']['identical']
    assert report['failures'][0]['kind'] == 'report-mismatch'


def test_gen_equal_overlap_orthonormal(workdir):
    """c = 0 parses back to an orthonormal ensemble"""
    path = workdir / 'basis.json'
    assert _run(['gen', '--kind', 'equal-overlap', '--n', 4, '--c', 0.0, '--output', path]).exit_code == EXIT_OK
    ensemble = load_ensemble(path)
    assert np.allclose(np.abs(ensemble.pure_vectors()), np.eye(4), atol=1e-12)


def test_gen_haar_reproducible(workdir):
    """Two runs with the same seed write identical files"""
    a, b = workdir / 'a.json', workdir / 'b.json'
    for path in (a, b):
        assert _run(['gen', '--kind', 'haar', '--d', 8, '--n', 8, '--seed', 7, '--output', path]).exit_code == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_gen_ginibre_rank_one_pure(workdir):
    """rank = 1 states re-validate as pure"""
    path = workdir / 'g.json'
    assert _run(['gen', '--kind', 'ginibre', '--d', 3, '--n', 3, '--rank', 1,
                 '--seed', 2, '--output', path]).exit_code == EXIT_OK
    assert all(state.is_pure for state in load_ensemble(path))


def test_gen_requires_seed(workdir):
    """Random generators refuse to run without a seed"""
    result = _run(['gen', '--kind', 'haar', '--d', 4, '--n', 3, '--output', workdir / 'x.json'])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert not (workdir / 'x.json').exists()


def test_copies_command(workdir):
    """Copy formulas without an ensemble"""
    out = workdir / 'copies.json'
    result = _run(['copies', '--epsilon', 0.5, '--delta', 0.01, '--n', 4, '--gram-norm', 1.0, '--output', out])
    assert result.exit_code == EXIT_OK
    results = _report(out)['results']
    assert results['joint_pgm']['k'] == 24
    assert results['two_stage']['k'] == math.ceil(math.log(200))


def test_copies_degenerate_epsilon(workdir):
    """epsilon = 0 is an input error"""
    out = workdir / 'copies.json'
    result = _run(['copies', '--epsilon', 0.0, '--n', 4, '--output', out])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert _report(out)['failures'][0]['kind'] == 'degenerate-ensemble'


def test_multicopy_command(workdir):
    """Explicit copy counts are evaluated with the Gram power"""
    out = workdir / 'multi.json'
    result = _run(['multicopy', '--input', _two_state_file(workdir, 0.5), '--copies', 1,
                   '--copies', 3, '--output', out])
    assert result.exit_code == EXIT_OK
    entries = _report(out)['results']['multicopy']
    assert [e['k'] for e in entries] == [1, 3]
    assert entries[0]['worst_case_error'] == pytest.approx((1 - math.sqrt(1 - 0.25)) / 2, abs=1e-9)
    assert entries[1]['method'] == 'gram-power'
    assert entries[1]['worst_case_error'] < entries[0]['worst_case_error']


def test_invalid_config_file(workdir):
    """A configuration that fails validation is an input error"""
    config = workdir / 'config.yaml'
    config.write_text("numerics:\n  support_cutoff: -1\n")
    result = _run(['--config', config, 'copies', '--epsilon', 0.5, '--n', 4])
    assert result.exit_code == EXIT_INPUT_ERROR


def test_unexpected_error_is_reported(workdir, mocker):
    """Unexpected exceptions exit 1 with a failure report"""
    mocker.patch('cli.run_pgm', side_effect=RuntimeError('boom'))
    out = workdir / 'report.json'
    result = _run(['pgm', '--input', _two_state_file(workdir), '--output', out])
    assert result.exit_code == EXIT_BOUND_VIOLATION
    assert _report(out)['failures'] == [{'kind': 'RuntimeError', 'message': 'boom'}]


def test_negative_seed_is_input_error(workdir):
    """A negative seed is rejected before any generator runs"""
    result = _run(['gen', '--kind', 'haar', '--d', 4, '--n', 3, '--seed', -1, '--output', workdir / 'x.json'])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert not (workdir / 'x.json').exists()

    out = workdir / 'sim.json'
    result = _run(['simulate', '--input', _two_state_file(workdir), '--output', out,
                   '--seed', -1, '--trials', 100])
    assert result.exit_code == EXIT_INPUT_ERROR
    assert _report(out)['failures'][0]['kind'] == 'validation-error'
