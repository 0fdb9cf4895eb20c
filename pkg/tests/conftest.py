"""Keeps the tests directory importable (helpers.py) under pytest."""
