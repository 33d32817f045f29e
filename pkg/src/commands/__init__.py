"""
CLI command implementations: one run_* function per pgm-cli command
"""
