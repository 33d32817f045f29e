"""
Test suite for the PGM toolkit
"""
