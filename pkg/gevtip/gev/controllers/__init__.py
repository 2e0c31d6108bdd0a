"""Controllers of the gev subpackage."""
