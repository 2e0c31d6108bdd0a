"""Controllers of the cli subpackage."""
