"""
*Command-line interface.*

The command-line interface is available as console script ``gevtip`` and
as ``python -m gevtip``. It provides subcommands for fitting single series,
scanning models and ingested data, rescaled scans, simulations, bin-length
sensitivity tables, and Kramers escape-time statistics.

All outputs are data files (CSV and JSON). Floats are written with 17
significant digits, and each run writes its fully resolved configuration
to ``config.json`` next to its outputs.

"""
