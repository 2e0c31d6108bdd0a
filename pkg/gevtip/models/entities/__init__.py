"""Entities of the models subpackage."""
