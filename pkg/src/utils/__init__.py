"""
Logging and parameter validation helpers
"""
