"""
*Writing results to CSV and JSON files.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Tables (scan points, extremes, histograms, sensitivity rows) are written as
CSV files, structured summaries (fits, thresholds, run summaries) as JSON
files. Both formats are language-neutral and can be compared with
standard diff tools.


Number formats
==============

Floats in CSV files are written with 17 significant digits, guaranteeing
exact round trips of double-precision numbers. JSON files contain the
shortest representation that round-trips exactly, hence the same values.
Non-finite floats (*e.g.* the confidence interval of a fit with singular
information matrix) are written as ``null`` to JSON files, to keep them
valid JSON, and as ``nan``, ``inf``, or ``-inf`` to CSV files.

The data written are plot-ready, *i.e.* the columns correspond to the
quantities typically displayed. Rendering is left to external tools.


Module documentation
====================

"""

import json
import logging
import math

import numpy as np
import pandas as pd

from gevtip.ensemble.entities.scan import SCAN_COLUMNS
from gevtip.series.boundaries.series import FLOAT_FORMAT

logger = logging.getLogger(__name__)

RESCALE_COLUMNS = ("m", "epsilon", "n_bins_requested", "rescaling_constant")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def _format(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    if value is None:
        return ""
    return str(value)


def write_json(data=None, path=""):
    """
    Write data to a JSON file.

    Parameters
    ----------
    data : :class:`dict`
        Data to write, may contain numpy scalars and arrays

    path : :class:`str`
        Name of the file

    """
    with open(path, "w", encoding="utf8") as file:
        json.dump(_jsonable(data), file, indent=2, allow_nan=False)
        file.write("\n")
    logger.info("Wrote %s", path)


def write_table_csv(rows=None, path="", columns=None):
    """
    Write rows of a table to a CSV file.

    Parameters
    ----------
    rows : :class:`list`
        Rows as dictionaries

    path : :class:`str`
        Name of the file

    columns : :class:`list`
        Names of the columns, in order.

        If not given, the keys of all rows are used, in order of first
        appearance. Missing values are written as empty cells.

    """
    rows = rows or []
    if columns is None:
        columns = list(dict.fromkeys(key for row in rows for key in row))
    frame = pd.DataFrame(
        [[_format(row.get(column)) for column in columns] for row in rows],
        columns=columns,
        dtype=object,
    )
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf8")
    logger.info("Wrote %s", path)


def write_fit_json(fits=None, path="", **metadata):
    """
    Write fits of the extremes of one series to a JSON file.

    Parameters
    ----------
    fits : :class:`dict`
        :class:`gevtip.gev.entities.gev.GevFit` objects, with the tails as
        keys

    path : :class:`str`
        Name of the file

    metadata
        Additional entries, such as bin length and number of samples

    """
    data = dict(metadata)
    data.update({tail: fit.to_dict() for tail, fit in (fits or {}).items()})
    write_json(data, path)


def write_extremes_csv(extremes=None, path=""):
    """
    Write the extremes of one series to a CSV file.

    The table is in long format, with columns ``tail``, ``bin``, and
    ``value``. Minima are written with reversed sign, as fitted.

    Parameters
    ----------
    extremes : :class:`dict`
        Arrays of extremes, with the tails as keys

    path : :class:`str`
        Name of the file

    """
    rows = [
        {"tail": tail, "bin": index, "value": value}
        for tail, values in (extremes or {}).items()
        for index, value in enumerate(values)
    ]
    write_table_csv(rows, path, columns=["tail", "bin", "value"])


def write_scan_csv(points=None, path=""):
    """
    Write scan points to a CSV file, one row per control value.

    Parameters
    ----------
    points : :class:`list`
        :class:`gevtip.ensemble.entities.scan.ScanPoint` objects

    path : :class:`str`
        Name of the file

    """
    write_table_csv(
        [point.to_dict() for point in points or []],
        path,
        columns=list(SCAN_COLUMNS),
    )


def write_threshold_json(analysis=None, path=""):
    """
    Write the threshold estimate of a scan to a JSON file.

    Parameters
    ----------
    analysis : :class:`gevtip.ensemble.entities.scan.ScanAnalysis`
        Analysed scan

    path : :class:`str`
        Name of the file

    """
    write_json(analysis.threshold_dict(), path)


def write_rescale_csv(curves=None, path=""):
    """
    Write the scan points of rescaled curves to a CSV file.

    The table is in long format, with one row per curve and tilt. Curves
    whose scan failed contribute no rows.

    Parameters
    ----------
    curves : :class:`list`
        :class:`gevtip.ensemble.entities.scan.RescaledCurve` objects

    path : :class:`str`
        Name of the file

    """
    rows = []
    for curve in curves or []:
        for point in curve.points:
            row = {
                "m": curve.bin_length,
                "epsilon": curve.epsilon,
                "n_bins_requested": curve.n_bins,
                "rescaling_constant": curve.rescaling_constant,
            }
            row.update(point.to_dict())
            rows.append(row)
    write_table_csv(
        rows, path, columns=list(RESCALE_COLUMNS) + list(SCAN_COLUMNS)
    )


def format_json(data=None):
    """
    Return data as compact JSON string, as printed by the command line.

    Parameters
    ----------
    data : :class:`dict`
        Data to format, may contain numpy scalars and arrays

    Returns
    -------
    text : :class:`str`
        JSON representation, with non-finite floats as ``null``

    """
    return json.dumps(_jsonable(data), allow_nan=False)
