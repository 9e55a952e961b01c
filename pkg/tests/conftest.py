#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Configuration and fixtures for the blaschke-conformal test suite.
"""

import numpy as np
import pytest
from pathlib import Path

from blaschke_conformal.modeler import model

# Get the path to the project root directory
@pytest.fixture(scope="session")
def project_root():
    """Return the project root directory as a Path object."""
    return Path(__file__).parent.parent.absolute()

@pytest.fixture
def rng():
    """Seeded generator; every test starts from the same state."""
    return np.random.default_rng(20240601)

@pytest.fixture(scope="session")
def worked_blaschke():
    """The worked degree three example with zeros 0, 3/4 and 1/4 + 7i/8."""
    from tests.utils.blaschke_factory import worked_example
    return worked_example()

# Modeling the worked example tracks three seeds; share the result
@pytest.fixture(scope="session")
def worked_model(worked_blaschke):
    """Conformal model of the worked example."""
    return model(worked_blaschke)

@pytest.fixture
def cli_workspace(project_root):
    """Create a temporary directory for command-line runs."""
    from tests.utils.cli_workspace import CliWorkspace
    workspace = CliWorkspace(project_root)
    yield workspace
    # Cleanup happens automatically in CliWorkspace's __del__ method
