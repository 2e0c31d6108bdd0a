"""Controllers of the ensemble subpackage."""
