"""
Diff command implementation
"""
from src.config import analyze_report_diff
from src.formats import build_report, load_report
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def run_diff(old_path, new_path):
    """
    Compare two structured reports

    Args:
        old_path: First report file
        new_path: Second report file

    Returns:
        Tuple (report dictionary, changes from analyze_report_diff); the
        report has a failure when results differ
    """
    changes = analyze_report_diff(load_report(old_path), load_report(new_path))

    failures = []
    if not changes['identical']:
        count = len(changes['numeric_changes']) + len(changes['structural_changes'])
        failures.append({'kind': 'report-mismatch', 'message': f"{count} difference(s) between reports"})
    else:
        logger.info("✓ Reports carry identical results")

    results = {
        'identical': changes['identical'],
        'numeric_changes': len(changes['numeric_changes']),
        'structural_changes': len(changes['structural_changes']),
        'parameter_changes': len(changes['parameter_changes']),
        'max_abs_diff': max((c['abs_diff'] for c in changes['numeric_changes']), default=0.0),
    }
    parameters = {'old': str(old_path), 'new': str(new_path)}
    return build_report('diff', parameters, results, failures=failures), changes
