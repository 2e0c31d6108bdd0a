"""Controllers of the models subpackage."""
