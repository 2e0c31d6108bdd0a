"""Entities of the cli subpackage."""
