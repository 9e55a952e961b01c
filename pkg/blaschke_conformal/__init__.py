#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Polynomial conformal models for finite Blaschke products.
"""

__version__ = "0.1.0"

from .blaschke import FiniteBlaschkeProduct, MobiusDisk
from .config import DEFAULT_TOLERANCES, Tolerances
from .continuation import PolarGridSpec
from .errors import BlaschkeConformalError
from .modeler import ConformalModel, ModelCase, model
from .verify import VerificationReport, verify_model

__all__ = [
    "BlaschkeConformalError",
    "ConformalModel",
    "DEFAULT_TOLERANCES",
    "FiniteBlaschkeProduct",
    "MobiusDisk",
    "ModelCase",
    "PolarGridSpec",
    "Tolerances",
    "VerificationReport",
    "model",
    "verify_model",
]
