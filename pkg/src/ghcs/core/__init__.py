"""
ghcs.core
=========

Configuration, error hierarchy and shared result types.
"""
