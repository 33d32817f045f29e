"""
Pretty good measurement toolkit

Numerical construction of the PGM for finite ensembles of density matrices,
the bounds that control its error, and a seeded simulator of the two-stage
pure-state discrimination protocol.
"""

__version__ = '1.0.0'
