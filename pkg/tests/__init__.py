"""
blaschke-conformal test suite
"""

# Version of the test suite
__version__ = "0.1.0"
