"""
Test copy-count formulas and budget reports
"""
import math

import pytest

from src.bounds import (
    CopyBudget, copies_to_flatten_gram, exact_ceil, joint_error_bound,
    joint_pgm_copies, powered_gram_norm_bound, two_stage_copies
)
from src.errors import DegenerateEnsembleError, ValidationError


def test_joint_pgm_copies_examples():
    """k = ceil((2/eps) ln(n/delta))"""
    budget = joint_pgm_copies(4, 0.5, 0.01)
    assert budget.k == math.ceil(4 * math.log(400))
    assert budget.k == 24
    assert budget.l == 0
    assert budget.total == budget.k


def test_joint_pgm_copies_exact_integer():
    """(2/1) ln(e) is exactly 2, not 3"""
    assert joint_pgm_copies(2, 1.0, 2 / math.e).k == 2


def test_two_stage_copies_examples():
    """k = ceil(||G|| ln(2/delta)), l = ceil(ln(2k/delta)/eps)"""
    budget = two_stage_copies(1.0, 0.5, 0.1)
    assert budget.k == 3
    assert budget.l == math.ceil(math.log(60) / 0.5)
    assert budget.l == 9
    assert budget.total == 3 * 10


def test_two_stage_copies_scales_with_gram_norm():
    """Larger ||G|| needs more PGM copies"""
    assert two_stage_copies(4.0, 0.5, 0.1).k == math.ceil(4 * math.log(20))
    assert two_stage_copies(4.0, 0.5, 0.1).k > two_stage_copies(1.0, 0.5, 0.1).k


def test_copies_degenerate_epsilon():
    """epsilon = 0 has no finite budget"""
    with pytest.raises(DegenerateEnsembleError):
        joint_pgm_copies(4, 0.0, 0.01)
    with pytest.raises(DegenerateEnsembleError):
        two_stage_copies(1.0, 0.0, 0.01)


def test_copies_invalid_parameters_listed():
    """All invalid parameters are reported together"""
    with pytest.raises(ValidationError) as exc_info:
        joint_pgm_copies(4, 1.5, 2.0)
    message = str(exc_info.value)
    assert 'epsilon' in message and 'delta' in message


def test_two_stage_rejects_small_gram_norm():
    """||G|| >= 1 always"""
    with pytest.raises(ValidationError):
        two_stage_copies(0.5, 0.5, 0.1)


def test_exact_ceil():
    """Noise above an integer is ignored, genuine fractions round up"""
    assert exact_ceil(2.0 + 1e-13) == 2
    assert exact_ceil(2.1) == 3
    assert exact_ceil(3.0) == 3


def test_exact_ceil_snaps_only_rounding_noise():
    """Excess beyond a few thousand ulps above an integer still rounds up"""
    assert exact_ceil(2.0000000000000004) == 2
    assert exact_ceil(2.0 * math.log(math.e)) == 2
    assert exact_ceil(3.0 + 1e-10) == 4
    assert exact_ceil(3.0 + 1e-6) == 4
    assert exact_ceil(1e6 + 1e-4) == 1000001
    assert exact_ceil(2.9999999999999996) == 3


def test_powered_gram_norm_and_flattening():
    """1 + (n - 1) c^k and the least k bringing it under 1 + eta"""
    assert powered_gram_norm_bound(0.5, 8, 2) == pytest.approx(1 + 7 * 0.25)
    k = copies_to_flatten_gram(8, 0.5, 0.1)
    assert powered_gram_norm_bound(0.5, 8, k) <= 1.1
    assert powered_gram_norm_bound(0.5, 8, k - 1) > 1.1
    assert copies_to_flatten_gram(8, 0.0, 0.1) == 1
    with pytest.raises(DegenerateEnsembleError):
        copies_to_flatten_gram(8, 1.0, 0.1)


def test_joint_error_bound():
    """n(n - 1) F^k <= n^2 exp(-k (1 - F))"""
    tight, loose = joint_error_bound(4, 0.5, 10)
    assert tight == pytest.approx(12 * 0.5 ** 10)
    assert tight <= loose


def test_copy_budget_dict():
    """Budget serializes k, l and total"""
    entry = CopyBudget(3, 9, 0.5, 0.1, rule='two-stage').to_dict()
    assert entry == {'rule': 'two-stage', 'k': 3, 'l': 9, 'total': 30, 'epsilon': 0.5, 'delta': 0.1}
    with pytest.raises(ValidationError):
        CopyBudget(0, 1, 0.5, 0.1, rule='two-stage')
