"""Boundaries of the cli subpackage."""
