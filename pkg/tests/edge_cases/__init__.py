#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Edge case tests: invalid input, numerical failures and exit codes.
"""
