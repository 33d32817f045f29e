"""
Desk-scale acceptance runs

Run with: pytest -m slow
"""
import math

import numpy as np
import pytest

from src.bounds import (
    equal_overlap_diagonal, fidelity_corollary, fidelity_sum_chain, gram_norm_upper,
    joint_pgm_copies, measure_epsilon, purity_sandwich, sqrt_perturbation_check
)
from src.formats import build_report, render_report
from src.pgm import (
    build_gram, build_pgm, confusion_from_gram, confusion_matrix, gram_spectral, worst_case_error
)
from src.protocol import estimate_failure, multicopy_pgm_pure
from src.states import (
    Ensemble, gen_equal_overlap, gen_ginibre_mixed, gen_haar_pure, tensor_power, validate_density
)

pytestmark = pytest.mark.slow


def _mixed_ensembles(count=50, seed=2024):
    rng = np.random.default_rng(seed)
    for index in range(count):
        d = int(rng.integers(2, 9))
        n = int(rng.integers(2, 7))
        rank = int(rng.integers(1, d + 1))
        yield gen_ginibre_mixed(d, rank, n, seed=seed + index)


@pytest.fixture(scope='module')
def mixed_ensembles():
    return list(_mixed_ensembles())


def test_povm_completeness(mixed_ensembles):
    """sum_i mu_i equals the support projector on every instance"""
    for ensemble in mixed_ensembles:
        assert build_pgm(ensemble).completeness_error() <= 1e-10


def test_direct_and_gram_confusion_agree(mixed_ensembles):
    """tr mu_i rho_j and ||sqrt(G)^(ij)||_F^2 agree entrywise"""
    for ensemble in mixed_ensembles:
        direct = confusion_matrix(ensemble, 'direct')
        via_gram = confusion_from_gram(build_gram(ensemble))
        assert np.max(np.abs(direct.entries - via_gram.entries)) <= 1e-9


def test_fidelity_chain_holds(mixed_ensembles):
    """Every link of the fidelity-sum chain holds"""
    for ensemble in mixed_ensembles:
        chain = fidelity_sum_chain(ensemble, tol=1e-8)
        assert chain.holds, chain.to_dict()


def test_fidelity_corollary_instance():
    """Four pure states with overlaps <= 1/(3 n^2) have P_E <= 1/3"""
    n = 4
    report = fidelity_corollary(gen_equal_overlap(n, 1.0 / (3 * n * n)))
    assert report.premise_holds
    assert report.holds
    assert report.measured_value <= 1.0 / 3.0


def test_purity_sandwich_pure_ensembles():
    """Sandwich holds on random pure ensembles and is tight for orthonormal states"""
    for seed in range(10):
        for report in purity_sandwich(gen_haar_pure(6, 4, seed=seed)):
            assert report.holds

    for report in purity_sandwich(Ensemble.from_vectors(np.eye(5))):
        assert report.bound_value == pytest.approx(1.0, abs=1e-12)
        assert report.measured_value == pytest.approx(1.0, abs=1e-12)


def test_purity_sandwich_maximally_mixed():
    """rho_i = I/n: lower bound exactly 1/n with ||G|| = 1"""
    n = 4
    ensemble = Ensemble([validate_density(np.eye(n) / n) for _ in range(n)])
    gram = build_gram(ensemble)
    assert gram_spectral(gram).op_norm == pytest.approx(1.0, abs=1e-12)
    lower = [r for r in purity_sandwich(ensemble, gram=gram) if r.name.startswith('purity_sandwich_lower')]
    for report in lower:
        assert report.bound_value == pytest.approx(1.0 / n, abs=1e-12)
        assert report.holds


def test_two_state_closed_form():
    """Diagonal (1 + sqrt(1 - c^2)) / 2 for c = 1/sqrt(2)"""
    c = 1 / math.sqrt(2)
    ensemble = Ensemble.from_vectors([[1.0, 0.0], [c, math.sqrt(1 - c * c)]])
    expected = (1 + math.sqrt(1 - c * c)) / 2
    assert expected == pytest.approx(0.8535534, abs=1e-7)
    for method in ('direct', 'gram'):
        diagonal = confusion_matrix(ensemble, method).success_probabilities
        assert np.allclose(diagonal, expected, atol=1e-9, rtol=0)


def test_joint_pgm_budget_reaches_delta():
    """Haar n = d = 8: the joint PGM on the budgeted k copies fails with probability <= 0.01"""
    delta = 0.01
    ensemble = gen_haar_pure(8, 8, seed=11)
    epsilon = measure_epsilon(ensemble).epsilon_fidelity
    budget = joint_pgm_copies(ensemble.n, epsilon, delta)
    _, p_e = multicopy_pgm_pure(build_gram(ensemble), budget.k)
    assert p_e <= delta


def test_gram_power_exactness():
    """Powered Gram and explicit tensor powers agree for n = d = 4"""
    ensemble = gen_haar_pure(4, 4, seed=13)
    gram = build_gram(ensemble)
    for k in (2, 3):
        _, p_e = multicopy_pgm_pure(gram, k)
        powered = Ensemble([tensor_power(state, k) for state in ensemble])
        assert p_e == pytest.approx(worst_case_error(confusion_matrix(powered, 'direct')), abs=1e-8)


def test_two_stage_monte_carlo():
    """n = 16 Haar states in d = 32, delta = 0.1, 2000 trials per index"""
    ensemble = gen_haar_pure(32, 16, seed=17)
    report = estimate_failure(ensemble, 0.1, None, 2000, seed=17, workers=4)
    assert report.worst_case_failure <= 0.1 + 3 * report.ci_halfwidth
    assert report.worst_case_failure <= 0.13
    assert report.mean_copies_used <= report.budget.total


def test_sqrt_perturbation_property():
    """||sqrt(A) - sqrt(B)||_F <= sqrt(||A - B||_1) on 100 random PSD pairs"""
    rng = np.random.default_rng(19)
    d = 8
    for _ in range(100):
        pair = []
        for _ in range(2):
            rank = int(rng.integers(1, d + 1))
            x = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
            m = x @ x.conj().T
            pair.append((m + m.conj().T) / 2)
        assert sqrt_perturbation_check(*pair).holds


def test_gram_norm_concentration():
    """n = d = 64 Haar ensembles: ||G|| concentrates near 4"""
    norms = [gram_spectral(build_gram(gen_haar_pure(64, 64, seed=seed))).op_norm for seed in range(100)]
    assert 3.2 <= np.median(norms) <= 4.8
    assert np.percentile(norms, 95) <= 5.5


def test_equal_overlap_norm_bound_is_tight():
    """c = 0.5, n = 64: the Gram norm bound is tight while the diagonal stays near 1 - c"""
    n, c = 64, 0.5
    ensemble = gen_equal_overlap(n, c)
    gram = build_gram(ensemble)
    assert gram_norm_upper(gram).slack == pytest.approx(0.0, abs=1e-9)

    diagonal = confusion_from_gram(gram).success_probabilities
    assert np.min(diagonal) >= 1 - c - 5.0 / n
    assert np.allclose(diagonal, equal_overlap_diagonal(n, c) ** 2, atol=1e-9, rtol=0)


def test_simulation_reports_are_byte_identical():
    """Equal seeds render identical reports across worker counts"""
    ensemble = gen_haar_pure(16, 8, seed=23)
    rendered = []
    for workers in (1, 2, 4):
        report = estimate_failure(ensemble, 0.1, None, 200, seed=23, workers=workers)
        rendered.append(render_report(build_report('simulate', {'seed': 23}, report.to_dict())))
    assert rendered[0] == rendered[1] == rendered[2]
