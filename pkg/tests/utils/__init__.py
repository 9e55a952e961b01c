"""
blaschke-conformal test utilities package.

This package contains common utilities used by the tests.
"""
