"""Controllers of the series subpackage."""
