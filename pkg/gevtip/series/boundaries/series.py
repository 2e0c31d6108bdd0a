"""
*Reading time series from and writing them to files.*

.. sidebar:: Contents

    .. contents::
        :local:
        :depth: 1

Time series produced outside this package, *e.g.* by direct numerical
simulations of a flow or by experiments, are ingested from CSV files or
HDF5 datasets. Series produced by the models of this package are written
to CSV files that can be read back without loss of precision.


CSV format
==========

A series CSV file consists of:

* optional metadata lines starting with ``#``, containing ``key=value``
  pairs. Known keys are ``dt``, ``control_value``, and ``label``, all other
  keys are stored in :attr:`TimeSeries.metadata
  <gevtip.series.entities.series.TimeSeries.metadata>`.

* an optional header row. Unless told explicitly, the first non-comment
  row is treated as header if (and only if) its value column does not
  parse as a number.

* one row per sample, with the values in one (configurable) column,
  by default the last one.

An example:

.. code-block:: text

    # dt=0.01
    # control_value=300
    t,E
    0,0.12
    0.01,0.13

Floats are written with 17 significant digits, guaranteeing exact round
trips of double-precision numbers.


HDF5 datasets
=============

Series can be read from one-dimensional HDF5 datasets or from one column
of two-dimensional datasets. The attributes ``dt``, ``control_value``, and
``label`` of the dataset are used as metadata, if present.


Module documentation
====================

"""

import logging
import os
import re

import h5py
import numpy as np
import pandas as pd

from gevtip.exceptions import (
    EmptySeriesError,
    NonFiniteValueError,
    ParseError,
)
from gevtip.series.controllers.preprocessing import Subsample
from gevtip.series.entities.series import SeriesImporter, TimeSeries

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _metadata_float(key, value, line=None):
    try:
        return float(value)
    except ValueError as exc:
        raise ParseError(
            f"Cannot parse metadata {key}={value!r} in line {line}",
            line=line,
        ) from exc


def _apply_metadata(series, metadata, line=None):
    for key, value in metadata.items():
        if key == "dt":
            series.dt = _metadata_float(key, value, line)
        elif key == "control_value":
            series.control_value = _metadata_float(key, value, line)
        elif key == "label":
            series.label = value
        else:
            series.metadata[key] = value


def _override_metadata(series, importer):
    if importer.dt is not None:
        series.dt = float(importer.dt)
    if importer.control_value is not None:
        series.control_value = float(importer.control_value)
    if importer.label is not None:
        series.label = importer.label


def _check_source(source):
    if not os.path.exists(source):
        raise FileNotFoundError(f"File {source!r} does not exist")


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


class CsvSeriesImporter(SeriesImporter):
    """
    Load time series from CSV files.

    Explicitly set attributes :attr:`dt`, :attr:`control_value`, and
    :attr:`label` take precedence over the metadata comments of the file.


    Attributes
    ----------
    source : :class:`str`
        Name of the CSV file

    column : :class:`int`
        Index of the value column, negative indices count from the end.

        Default: -1

    dt : :class:`float`
        Sampling step, overriding the metadata of the file

    control_value : :class:`float`
        Control value, overriding the metadata of the file

    label : :class:`str`
        Label, overriding the metadata and header of the file

    header : :class:`bool`
        Whether the first data row is a header.

        If ``None``, the first row is taken as header if its value cell
        does not parse as a number. A warning is logged if such a row
        starts with a number, as it may be a data row with a corrupt
        value.

        Default: None

    Raises
    ------
    FileNotFoundError
        Raised if the file does not exist.

    ParseError
        Raised if a row cannot be parsed, carrying the line number.

    NonFiniteValueError
        Raised if a value is not finite, carrying the line number.

    EmptySeriesError
        Raised if the file contains no values.


    Examples
    --------
    .. code-block::

        importer = CsvSeriesImporter(source="energy.csv", control_value=300)
        series = importer.load()

    """

    def __init__(
        self,
        source="",
        column=-1,
        dt=None,
        control_value=None,
        label=None,
        header=None,
    ):
        super().__init__(source=source)
        self.column = column
        self.dt = dt
        self.control_value = control_value
        self.label = label
        self.header = header

    def _load(self):
        _check_source(self.source)
        series = TimeSeries()
        data_lines = self._read_comments(series)
        table = self._read_table()
        if table.empty:
            raise EmptySeriesError(f"No values in file {self.source!r}")
        if len(data_lines) != len(table):
            data_lines = [None] * len(table)
        cells = self._value_cells(table, data_lines)
        if self._has_header(table, cells, data_lines):
            series.label = cells[0]
            cells, data_lines = cells[1:], data_lines[1:]
        if cells.size == 0:
            raise EmptySeriesError(f"No values in file {self.source!r}")
        self._check_cells(cells, data_lines)
        series.values = cells.astype(float)
        _override_metadata(series, self)
        return series

    def _read_comments(self, series):
        data_lines = []
        with open(self.source, encoding="utf8") as file:
            for line_number, line in enumerate(file, start=1):
                line = line.strip()
                if line.startswith("#"):
                    self._parse_comment(series, line, line_number)
                elif line:
                    data_lines.append(line_number)
        return data_lines

    def _read_table(self):
        try:
            return pd.read_csv(
                self.source,
                header=None,
                dtype=str,
                comment="#",
                na_filter=False,
                skipinitialspace=True,
                encoding="utf8",
            )
        except pd.errors.EmptyDataError:
            return pd.DataFrame()
        except pd.errors.ParserError as exc:
            match = re.search(r"line (\d+)", str(exc))
            line = int(match.group(1)) if match else None
            raise ParseError(
                f"Cannot parse file {self.source!r}: {exc}", line=line
            ) from exc

    @staticmethod
    def _parse_comment(series, line, line_number):
        content = line.lstrip("#").strip()
        if "=" not in content:
            return
        key, value = (part.strip() for part in content.split("=", 1))
        _apply_metadata(series, {key: value}, line=line_number)

    def _value_cells(self, table, data_lines):
        try:
            cells = table.iloc[:, self.column]
        except IndexError as exc:
            raise ParseError(
                f"No column {self.column} in line {data_lines[0]}",
                line=data_lines[0],
            ) from exc
        return cells.fillna("").str.strip().to_numpy(dtype=object)

    def _has_header(self, table, cells, data_lines):
        if self.header is not None:
            return bool(self.header)
        if _is_number(cells[0]):
            return False
        if _is_number(str(table.iloc[0, 0]).strip()):
            logger.warning(
                "Row in line %s taken as header although its first cell "
                "is numeric, set header=False to read it as data",
                data_lines[0],
            )
        return True

    @staticmethod
    def _check_cells(cells, data_lines):
        numbers = pd.to_numeric(pd.Series(cells), errors="coerce")
        invalid = np.flatnonzero(~np.isfinite(numbers.to_numpy(dtype=float)))
        if not invalid.size:
            return
        cell, line = cells[invalid[0]], data_lines[invalid[0]]
        if _is_number(cell) and not np.isfinite(float(cell)):
            raise NonFiniteValueError(
                f"Non-finite value {cell!r} in line {line}", line=line
            )
        raise ParseError(
            f"Cannot parse value {cell!r} in line {line}", line=line
        )


class HDF5SeriesImporter(SeriesImporter):
    """
    Load time series from HDF5 datasets.

    Attributes
    ----------
    source : :class:`str`
        Name of the HDF5 file

    item : :class:`str`
        The dataset within the HDF5 file.

        Datasets are addressed by a path-like string, with slashes
        separating the hierarchy levels in the file.

    column : :class:`int`
        Index of the value column of two-dimensional datasets.

        Default: -1

    dt : :class:`float`
        Sampling step, overriding the attribute of the dataset

    control_value : :class:`float`
        Control value, overriding the attribute of the dataset

    label : :class:`str`
        Label, overriding the attribute and name of the dataset

    Raises
    ------
    ValueError
        Raised upon load if no item is provided or the dataset has more
        than two dimensions.


    Examples
    --------
    .. code-block::

        importer = HDF5SeriesImporter(source="dns.h5", item="/R300/energy")
        series = importer.load()

    """

    def __init__(
        self,
        source="",
        item="",
        column=-1,
        dt=None,
        control_value=None,
        label=None,
    ):
        super().__init__(source=source)
        self.item = item
        self.column = column
        self.dt = dt
        self.control_value = control_value
        self.label = label

    def load(self, source="", item=""):
        """
        Load series from source.

        Parameters
        ----------
        source : :class:`str`
            Name of the HDF5 file

        item : :class:`str`
            The dataset within the HDF5 file

        Returns
        -------
        series : :class:`gevtip.series.entities.series.TimeSeries`
            Series loaded from the dataset

        """
        if item:
            self.item = item
        if not self.item:
            raise ValueError("No item to load series from.")
        return super().load(source=source)

    def _load(self):
        _check_source(self.source)
        with h5py.File(self.source, "r") as file:
            dataset = file[self.item]
            data = np.asarray(dataset[...], dtype=float)
            attributes = {
                key: value.decode() if isinstance(value, bytes) else value
                for key, value in dataset.attrs.items()
            }
        if data.ndim == 2:
            data = data[:, self.column]
        elif data.ndim != 1:
            raise ValueError(
                f"Dataset {self.item!r} needs to have one or two dimensions"
            )
        series = TimeSeries(values=data)
        _apply_metadata(
            series,
            {
                key: str(value)
                for key, value in attributes.items()
                if key in ("dt", "control_value", "label")
            },
        )
        if not series.label:
            series.label = self.item.rsplit("/", 1)[-1]
        _override_metadata(series, self)
        return series


class SeriesExporter:
    """
    Write time series to CSV files.

    The file contains metadata comments (``dt``, ``control_value`` if set,
    ``label``), a header ``t,<label>``, and one row per sample with time
    and value, both with 17 significant digits.

    Attributes
    ----------
    target : :class:`str`
        Name of the CSV file to write to


    Examples
    --------
    .. code-block::

        exporter = SeriesExporter(target="series.csv")
        exporter.save(series)

    """

    def __init__(self, target=""):
        self.target = target

    def save(self, series=None, target=""):
        """
        Write series to CSV file.

        Parameters
        ----------
        series : :class:`gevtip.series.entities.series.TimeSeries`
            Series to write

        target : :class:`str`
            Name of the CSV file to write to

        Raises
        ------
        ValueError
            Raised if no target is provided.

        """
        if target:
            self.target = target
        if not self.target:
            raise ValueError("No target provided to save series to.")
        label = series.label or "value"
        frame = pd.DataFrame(
            np.column_stack([series.times, series.values]),
            columns=["t", label],
        )
        with open(self.target, "w", newline="", encoding="utf8") as file:
            file.write(f"# dt={FLOAT_FORMAT % series.dt}\n")
            if series.control_value is not None:
                file.write(
                    f"# control_value={FLOAT_FORMAT % series.control_value}\n"
                )
            file.write(f"# label={label}\n")
            frame.to_csv(
                file,
                index=False,
                float_format=FLOAT_FORMAT,
                lineterminator="\n",
            )
        logger.info("Wrote series to %s", self.target)


def _preprocessing(stride):
    if stride is not None and stride != 1:
        return [Subsample(stride=stride)]
    return []


def ingest_csv(
    path="", column=-1, dt=None, control_value=None, stride=1, header=None
):
    """
    Read a time series from a CSV file.

    Parameters
    ----------
    path : :class:`str`
        Name of the CSV file

    column : :class:`int`
        Index of the value column

    dt : :class:`float`
        Sampling step, overriding the metadata of the file

    control_value : :class:`float`
        Control value, overriding the metadata of the file

    stride : :class:`int`
        Keep only every ``stride``-th sample

    header : :class:`bool`
        Whether the first data row is a header, inferred if ``None``

    Returns
    -------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Validated series

    """
    importer = CsvSeriesImporter(
        source=path,
        column=column,
        dt=dt,
        control_value=control_value,
        header=header,
    )
    importer.preprocessing = _preprocessing(stride)
    return importer.load()


def ingest_hdf5(
    path="", item="", column=-1, dt=None, control_value=None, stride=1
):
    """
    Read a time series from an HDF5 dataset.

    Parameters
    ----------
    path : :class:`str`
        Name of the HDF5 file

    item : :class:`str`
        Path of the dataset within the file

    column : :class:`int`
        Index of the value column of two-dimensional datasets

    dt : :class:`float`
        Sampling step, overriding the attribute of the dataset

    control_value : :class:`float`
        Control value, overriding the attribute of the dataset

    stride : :class:`int`
        Keep only every ``stride``-th sample

    Returns
    -------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Validated series

    """
    importer = HDF5SeriesImporter(
        source=path,
        item=item,
        column=column,
        dt=dt,
        control_value=control_value,
    )
    importer.preprocessing = _preprocessing(stride)
    return importer.load()


def write_series_csv(series=None, path=""):
    """
    Write a time series to a CSV file.

    Parameters
    ----------
    series : :class:`gevtip.series.entities.series.TimeSeries`
        Series to write

    path : :class:`str`
        Name of the CSV file

    """
    SeriesExporter(target=path).save(series)
