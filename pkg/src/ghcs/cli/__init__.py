"""
ghcs.cli
========

Command-line front end: eval, omega, verify, scan, presets.
"""
