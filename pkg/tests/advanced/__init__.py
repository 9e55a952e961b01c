#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Advanced tests: continuation, random pipelines, figure topology and negative controls.
"""
