"""Entities of the series subpackage."""
