"""
Report types for bound checks and copy budgets
"""
import math

from src.errors import ValidationError

SLACK_TOL = 1e-9

UPPER = 'upper'
LOWER = 'lower'
EQUAL = 'equal'


def _number(value):
    value = float(value)
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


class BoundReport:
    """
    A computed bound next to the measured quantity it constrains

    direction 'upper' asserts measured <= bound, 'lower' asserts bound <= measured.
    slack is positive when the inequality holds with room to spare. A report
    on a probability is vacuous when an upper bound is >= 1; any infinite
    bound is vacuous. Vacuous reports never count as failures.
    """

    def __init__(self, name, bound_value, measured_value, direction=UPPER,
                 probability=False, tol=SLACK_TOL, note=None):
        self.name = name
        self.bound_value = float(bound_value)
        self.measured_value = float(measured_value)
        self.direction = direction
        self.note = note

        if direction == UPPER:
            self.slack = self.bound_value - self.measured_value
        elif direction == LOWER:
            self.slack = self.measured_value - self.bound_value
        else:
            raise ValidationError(f"Unknown bound direction: {direction}")

        self.vacuous = math.isinf(self.bound_value) or (
            probability and direction == UPPER and self.bound_value >= 1.0
        )
        if math.isinf(self.bound_value):
            self.holds = True
        else:
            self.holds = bool(self.slack >= -tol)

    def to_dict(self):
        entry = {
            'bound_name': self.name,
            'direction': self.direction,
            'bound_value': _number(self.bound_value),
            'measured_value': _number(self.measured_value),
            'slack': _number(self.slack),
            'holds': self.holds,
            'vacuous': self.vacuous,
        }
        if self.note:
            entry['note'] = self.note
        return entry

    def __repr__(self):
        state = 'holds' if self.holds else 'VIOLATED'
        return f"BoundReport({self.name}: bound={self.bound_value:.6g}, measured={self.measured_value:.6g}, {state})"


class CopyBudget:
    """
    Copy counts for a discrimination protocol

    k copies fed to the PGM, l accept/reject tests per group (0 when the
    protocol has no second stage), total = k (l + 1).
    """

    def __init__(self, k, l, epsilon, delta, rule):
        if k < 1:
            raise ValidationError(f"Copy budget needs k >= 1, got {k}")
        self.k = int(k)
        self.l = int(l)
        self.epsilon = float(epsilon)
        self.delta = float(delta)
        self.rule = rule

    @property
    def total(self):
        return self.k * (self.l + 1)

    def to_dict(self):
        return {
            'rule': self.rule,
            'k': self.k,
            'l': self.l,
            'total': self.total,
            'epsilon': self.epsilon,
            'delta': self.delta,
        }

    def __repr__(self):
        return f"CopyBudget({self.rule}: k={self.k}, l={self.l}, total={self.total})"


class EpsilonReport:
    """
    Distinguishability gaps measured from an ensemble

    epsilon_fidelity = 1 - max_{i!=j} F(rho_i, rho_j) feeds the joint PGM budget;
    epsilon_overlap = 1 - max_{i!=j} tr(rho_i rho_j) feeds the two-stage budget.
    For pure states tr(rho_i rho_j) = F^2, so the two differ.
    """

    def __init__(self, max_fidelity, max_overlap, duplicates):
        self.max_fidelity = float(max_fidelity)
        self.max_overlap = float(max_overlap)
        self.duplicates = bool(duplicates)

    @property
    def epsilon_fidelity(self):
        return 0.0 if self.duplicates else max(0.0, 1.0 - self.max_fidelity)

    @property
    def epsilon_overlap(self):
        return 0.0 if self.duplicates else max(0.0, 1.0 - self.max_overlap)

    def to_dict(self):
        return {
            'max_fidelity': self.max_fidelity,
            'max_overlap': self.max_overlap,
            'epsilon_fidelity': self.epsilon_fidelity,
            'epsilon_overlap': self.epsilon_overlap,
            'duplicates': self.duplicates,
        }


class ChainLink:
    """One inequality (or equality) between consecutive chain values"""

    def __init__(self, left_name, right_name, left, right, relation, tol):
        self.left_name = left_name
        self.right_name = right_name
        self.left = float(left)
        self.right = float(right)
        self.relation = relation
        if relation == EQUAL:
            self.holds = abs(self.left - self.right) <= tol
        else:
            self.holds = self.left <= self.right + tol

    def to_dict(self):
        symbol = '=' if self.relation == EQUAL else '<='
        return {
            'link': f"{self.left_name} {symbol} {self.right_name}",
            'left': self.left,
            'right': self.right,
            'holds': self.holds,
        }


class ChainReport:
    """Every intermediate value of the fidelity-sum argument and each link between them"""

    def __init__(self, values, links):
        self.values = dict(values)
        self.links = list(links)

    @property
    def holds(self):
        return all(link.holds for link in self.links)

    def failed_links(self):
        return [link for link in self.links if not link.holds]

    def to_dict(self):
        return {
            'values': {k: float(v) for k, v in self.values.items()},
            'links': [link.to_dict() for link in self.links],
            'holds': self.holds,
        }
