"""
Basic tests for blaschke-conformal.

These tests cover the solvers, the product layer, model construction, figures and the CLI.
"""
