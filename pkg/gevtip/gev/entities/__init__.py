"""Entities of the gev subpackage."""
