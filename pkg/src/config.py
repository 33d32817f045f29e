"""
Configuration management
"""
import copy
import os
from pathlib import Path

import yaml
from deepdiff import DeepDiff

from src.errors import ValidationError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_CONFIG = {
    'numerics': {
        'support_cutoff': 1e-12,
        'file_tol': 1e-8,
        'slack_tol': 1e-9,
        'chain_tol': 1e-8,
        'tensor_size_limit': 2 ** 20,
    },
    'simulation': {
        'min_trials': 100,
        'workers': 4,
        'progress': True,
    },
    'defaults': {
        'delta': 0.01,
        'trials': 1000,
        'format': 'structured',
    },
    'logging': {
        'level': 'INFO',
        'file': None,
    },
}

# Environment variable -> (section, key, type)
ENV_OVERRIDES = {
    'PGM_WORKERS': ('simulation', 'workers', int),
    'PGM_LOG_LEVEL': ('logging', 'level', str),
}


def _merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _apply_env(config):
    for var, (section, key, cast) in ENV_OVERRIDES.items():
        raw = os.environ.get(var)
        if raw is None or raw == '':
            continue
        try:
            config[section][key] = cast(raw)
        except ValueError:
            raise ValidationError(f"Environment variable {var}={raw!r} is not a valid {cast.__name__}")
        logger.debug(f"{section}.{key} overridden by {var}")
    return config


def load_config(config_file=None):
    """
    Load configuration from YAML file merged over the defaults

    The file defaults to $PGM_CONFIG; with neither, the defaults are used.
    PGM_WORKERS and PGM_LOG_LEVEL override the file.

    Args:
        config_file: Path to config file (optional)

    Raises:
        FileNotFoundError: If an explicit config file does not exist

    Returns:
        Configuration dictionary
    """
    config_file = config_file or os.environ.get('PGM_CONFIG')
    loaded = {}

    if config_file:
        config_path = Path(config_file)
        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_file}")
        with open(config_path, 'r') as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ValidationError(f"Configuration file must contain a mapping: {config_file}")
        logger.debug(f"Configuration loaded from: {config_file}")

    return _apply_env(_merge(DEFAULT_CONFIG, loaded))


def save_config(config_file, config):
    """
    Save configuration to YAML file

    Args:
        config_file: Path to config file
        config: Configuration dictionary
    """
    config_path = Path(config_file)
    config_path.parent.mkdir(parents=True, exist_ok=True)

    with open(config_path, 'w') as f:
        yaml.dump(config, f, default_flow_style=False, sort_keys=False)

    logger.info(f"Configuration saved to: {config_file}")


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def analyze_report_diff(old_report, new_report):
    """
    Classify the differences between two run reports

    Args:
        old_report: First report dictionary
        new_report: Second report dictionary

    Returns:
        Dictionary with numeric_changes, parameter_changes, structural_changes
        and an identical flag (no numeric or structural change in results)
    """
    diff = DeepDiff(old_report, new_report, ignore_order=False, verbose_level=2)

    changes = {
        'numeric_changes': [],
        'parameter_changes': [],
        'structural_changes': [],
        'identical': False,
    }

    for change_type in ('values_changed', 'type_changes'):
        for path, value in diff.get(change_type, {}).items():
            change_info = {
                'path': path,
                'old': value.get('old_value'),
                'new': value.get('new_value'),
            }
            if "['parameters']" in path or "['version']" in path:
                changes['parameter_changes'].append(change_info)
            elif _is_number(change_info['old']) and _is_number(change_info['new']):
                change_info['abs_diff'] = abs(change_info['new'] - change_info['old'])
                changes['numeric_changes'].append(change_info)
            else:
                changes['structural_changes'].append(change_info)

    for change_type in ('dictionary_item_added', 'dictionary_item_removed',
                        'iterable_item_added', 'iterable_item_removed'):
        for path in diff.get(change_type, {}):
            changes['structural_changes'].append({'path': path, 'change': change_type})

    changes['identical'] = not changes['numeric_changes'] and not changes['structural_changes']
    return changes


def format_report_diff(changes):
    """
    Human-readable summary of analyze_report_diff output

    Args:
        changes: Changes dictionary from analyze_report_diff

    Returns:
        Text
    """
    lines = ["=" * 70, "Report Differences Summary", "=" * 70]

    if changes['numeric_changes']:
        lines.append("\nNumeric changes:")
        for change in changes['numeric_changes']:
            lines.append(f"  • {change['path']}")
            lines.append(f"    Old: {change['old']!r}")
            lines.append(f"    New: {change['new']!r}  (|diff| = {change['abs_diff']:.3g})")

    if changes['structural_changes']:
        lines.append("\nStructural changes:")
        for change in changes['structural_changes']:
            lines.append(f"  • {change['path']}")

    if changes['parameter_changes']:
        lines.append("\nParameter changes:")
        for change in changes['parameter_changes']:
            lines.append(f"  • {change['path']}: {change['old']!r} -> {change['new']!r}")

    if changes['identical']:
        lines.append("\n✓ Results are identical")

    lines.append("=" * 70)
    return "\n".join(lines) + "\n"
