"""
Test package for harmonicqc.

This package contains all test modules for the harmonicqc application.
"""
