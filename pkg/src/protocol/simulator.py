"""
Monte Carlo simulation of the two-stage pure-state discrimination protocol

Stage 1 applies the single-copy PGM to k copies, giving outcomes i_1..i_k.
Stage 2 walks those outcomes in order and spends l fresh copies on the
accept/reject test "project onto |psi_{i_j}>" for each; the first group in
which all l tests accept decides the answer, otherwise the protocol outputs
FAIL. Groups after the first acceptance are not tested.
"""
import hashlib
import math
from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np
from tqdm import tqdm

from src.bounds import measure_epsilon, two_stage_copies
from src.errors import UnsupportedEnsembleError, ValidationError
from src.pgm import build_gram, confusion_from_gram, gram_spectral
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

FAIL = 'FAIL'
MIN_TRIALS = 100
Z_95 = 1.959963984540054


def trial_rng(seed, true_index, trial):
    """
    Generator for one trial, derived from (seed, true_index, trial) only

    Returns:
        numpy Generator
    """
    digest = hashlib.sha256(f"{seed}|{true_index}|{trial}".encode('utf-8')).hexdigest()
    return np.random.default_rng(int(digest[:16], 16))


def pgm_sample(confusion, true_index, rng, size=None):
    """
    Born-rule sample of the PGM outcome on input rho_{true_index}

    Args:
        confusion: ConfusionMatrix
        true_index: Index of the actual state
        rng: numpy Generator
        size: Number of independent outcomes (None for a single int)

    Returns:
        Outcome index i with probability C[i][true_index] (array when size is given)
    """
    p = np.clip(confusion.column(true_index), 0.0, None)
    p = p / p.sum()
    outcome = rng.choice(confusion.n, size=size, p=p)
    if size is None:
        return int(outcome)
    return [int(x) for x in outcome]


class TrialOutcome:
    """Trace of one protocol run"""

    def __init__(self, true_index, reported, pgm_outcomes, copies_used, accepted_group, groups_tested):
        self.true_index = true_index
        self.reported = reported
        self.pgm_outcomes = list(pgm_outcomes)
        self.copies_used = copies_used
        self.accepted_group = accepted_group
        self.groups_tested = groups_tested

    @property
    def failed(self):
        return self.reported != self.true_index

    @property
    def stage1_miss(self):
        return self.true_index not in self.pgm_outcomes

    def to_dict(self):
        return {
            'true_index': self.true_index,
            'reported': self.reported,
            'pgm_outcomes': self.pgm_outcomes,
            'copies_used': self.copies_used,
            'accepted_group': self.accepted_group,
        }


def run_two_stage_trial(ensemble, true_index, budget, dedup, rng, confusion=None, overlaps=None):
    """
    One run of the two-stage protocol

    Args:
        ensemble: Pure Ensemble
        true_index: Index of the state actually supplied
        budget: CopyBudget from two_stage_copies
        dedup: Test each distinct PGM outcome once instead of once per outcome
        rng: numpy Generator
        confusion: Precomputed ConfusionMatrix (optional)
        overlaps: Precomputed |<psi_i|psi_j>|^2 matrix (optional)

    Returns:
        TrialOutcome
    """
    if confusion is None:
        confusion = confusion_from_gram(build_gram(ensemble))
    if overlaps is None:
        overlaps = ensemble.overlap_matrix()

    outcomes = pgm_sample(confusion, true_index, rng, size=budget.k)
    candidates = list(dict.fromkeys(outcomes)) if dedup else outcomes

    copies = budget.k
    groups_tested = 0
    for group, candidate in enumerate(candidates):
        groups_tested += 1
        copies += budget.l
        if candidate == true_index:
            accept_probability = 1.0
        else:
            accept_probability = float(overlaps[candidate, true_index])
        # uniform draws lie in [0, 1), so probability 1 always accepts
        if np.all(rng.random(budget.l) < accept_probability):
            return TrialOutcome(true_index, candidate, outcomes, copies, group, groups_tested)

    return TrialOutcome(true_index, FAIL, outcomes, copies, None, groups_tested)


class ProtocolReport:
    """Aggregated Monte Carlo estimate of the protocol's failure probabilities"""

    def __init__(self, tallies, trials, seed, budget, dedup, gram_norm, epsilon_used, epsilon_measured, warnings):
        n = len(tallies)
        self.trials = trials
        self.seed = seed
        self.budget = budget
        self.dedup = dedup
        self.gram_norm = gram_norm
        self.epsilon_used = epsilon_used
        self.epsilon_measured = epsilon_measured
        self.warnings = list(warnings)

        self.per_index_failure = [t['failures'] / trials for t in tallies]
        self.per_index_ci = [_halfwidth(p, trials) for p in self.per_index_failure]
        worst = int(np.argmax(self.per_index_failure))
        self.worst_index = worst
        self.worst_case_failure = self.per_index_failure[worst]
        self.ci_halfwidth = self.per_index_ci[worst]

        total = trials * n
        self.mean_copies_used = sum(t['copies'] for t in tallies) / total
        self.max_copies_used = max(t['max_copies'] for t in tallies)
        self.stage1_miss_rate = sum(t['stage1_misses'] for t in tallies) / total
        self.stage1_miss_bound = (1.0 - 1.0 / gram_norm) ** budget.k
        self.false_accept_rate = sum(t['wrong'] for t in tallies) / total
        self.fail_output_rate = sum(t['fails'] for t in tallies) / total

    @property
    def guarantee_holds(self):
        """Empirical worst case within delta plus three CI half-widths"""
        return self.worst_case_failure <= self.budget.delta + 3 * self.ci_halfwidth

    def to_dict(self):
        return {
            'budget': self.budget.to_dict(),
            'trials': self.trials,
            'seed': self.seed,
            'dedup': self.dedup,
            'gram_norm': self.gram_norm,
            'epsilon_used': self.epsilon_used,
            'epsilon_measured': self.epsilon_measured,
            'per_index_failure': self.per_index_failure,
            'per_index_ci_halfwidth': self.per_index_ci,
            'worst_index': self.worst_index,
            'worst_case_failure': self.worst_case_failure,
            'ci_halfwidth': self.ci_halfwidth,
            'guarantee_holds': self.guarantee_holds,
            'mean_copies_used': self.mean_copies_used,
            'max_copies_used': self.max_copies_used,
            'stage1_miss_rate': self.stage1_miss_rate,
            'stage1_miss_bound': self.stage1_miss_bound,
            'false_accept_rate': self.false_accept_rate,
            'fail_output_rate': self.fail_output_rate,
            'warnings': self.warnings,
        }


def _halfwidth(p, trials):
    """95% normal-approximation half-width"""
    return Z_95 * math.sqrt(p * (1.0 - p) / trials)


def _run_index(ensemble, true_index, budget, dedup, trials, seed, confusion, overlaps):
    tally = {'failures': 0, 'wrong': 0, 'fails': 0, 'stage1_misses': 0, 'copies': 0, 'max_copies': 0}
    for trial in range(trials):
        outcome = run_two_stage_trial(ensemble, true_index, budget, dedup,
                                      trial_rng(seed, true_index, trial), confusion, overlaps)
        if outcome.failed:
            tally['failures'] += 1
            if outcome.reported == FAIL:
                tally['fails'] += 1
            else:
                tally['wrong'] += 1
        if outcome.stage1_miss:
            tally['stage1_misses'] += 1
        tally['copies'] += outcome.copies_used
        tally['max_copies'] = max(tally['max_copies'], outcome.copies_used)
    return tally


def estimate_failure(ensemble, delta, epsilon, trials, seed, dedup=False,
                     workers=1, progress=False, min_trials=MIN_TRIALS):
    """
    Estimate the protocol's per-index and worst-case failure probabilities

    Every trial draws from its own generator derived from (seed, true_index,
    trial), so the report does not depend on the worker count or schedule.
    A failure is any answer other than the true index, FAIL included.

    Args:
        ensemble: Pure Ensemble
        delta: Target failure probability
        epsilon: Overlap gap for the budget; None uses the measured value
        trials: Trials per true index (>= min_trials)
        seed: Master seed
        dedup: Merge duplicate PGM outcomes in stage 2
        workers: Thread pool size
        progress: Show a tqdm progress bar
        min_trials: Smallest accepted trial count

    Raises:
        UnsupportedEnsembleError: For mixed ensembles
        DegenerateEnsembleError: If epsilon is 0
        ValidationError: If trials < min_trials

    Returns:
        ProtocolReport
    """
    if not ensemble.is_pure:
        raise UnsupportedEnsembleError(
            "The two-stage protocol is defined for pure ensembles only; "
            "use the joint multi-copy PGM (multicopy command) for mixed ensembles"
        )
    if int(trials) != trials or trials < min_trials:
        raise ValidationError(f"trials must be an integer >= {min_trials}, got {trials}")
    trials = int(trials)

    warnings = []
    measured = measure_epsilon(ensemble)
    if epsilon is None:
        epsilon = measured.epsilon_overlap
    elif measured.max_overlap > 1.0 - epsilon + 1e-12:
        message = (f"epsilon={epsilon} is inconsistent with the ensemble: "
                   f"max overlap {measured.max_overlap:.6g} > 1 - epsilon")
        logger.warning(message)
        warnings.append(message)

    gram = build_gram(ensemble)
    gram_norm = gram_spectral(gram).op_norm
    budget = two_stage_copies(gram_norm, epsilon, delta)
    confusion = confusion_from_gram(gram)
    overlaps = ensemble.overlap_matrix()
    logger.info(f"Simulating {trials} trials x {ensemble.n} indices with {budget}")

    tallies = [None] * ensemble.n
    with ThreadPoolExecutor(max_workers=max(1, int(workers))) as executor:
        futures = {
            executor.submit(_run_index, ensemble, i, budget, dedup, trials, seed, confusion, overlaps): i
            for i in range(ensemble.n)
        }
        with tqdm(total=ensemble.n, desc="Protocol trials", unit="index", disable=not progress) as pbar:
            for future in as_completed(futures):
                index = futures[future]
                tallies[index] = future.result()
                pbar.update(1)

    report = ProtocolReport(tallies, trials, seed, budget, dedup, gram_norm,
                            epsilon, measured.epsilon_overlap, warnings)
    logger.info(f"✓ Worst-case failure {report.worst_case_failure:.4g} "
                f"(+/- {report.ci_halfwidth:.2g}) at delta={delta}")
    return report
