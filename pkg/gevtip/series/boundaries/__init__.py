"""Boundaries of the series subpackage."""
