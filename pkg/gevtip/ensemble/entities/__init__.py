"""Entities of the ensemble subpackage."""
