"""
Multi-copy PGM evaluation and two-stage protocol simulation
"""

from .multicopy import (
    MulticopyResult,
    multicopy_pgm_pure,
    multicopy_pgm,
)
from .simulator import (
    FAIL,
    MIN_TRIALS,
    TrialOutcome,
    ProtocolReport,
    trial_rng,
    pgm_sample,
    run_two_stage_trial,
    estimate_failure,
)

__all__ = [
    'MulticopyResult',
    'multicopy_pgm_pure',
    'multicopy_pgm',
    'FAIL',
    'MIN_TRIALS',
    'TrialOutcome',
    'ProtocolReport',
    'trial_rng',
    'pgm_sample',
    'run_two_stage_trial',
    'estimate_failure',
]
