"""
CSV output for sweep tables.

Values are computed in nats; the bits toggle only rescales the listed columns
when a table is serialized.
"""

from __future__ import annotations

import logging
import math
import sys
from typing import Iterable, Optional, TextIO

import pandas as pd
import pyarrow as pa

from fadecap.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

UNITS = ("nats", "bits")
FLOAT_FORMAT = "%.12g"


def scale_units(table: pa.Table, columns: Iterable[str], units: str = "nats") -> pa.Table:
    """Return ``table`` with ``columns`` converted from nats to ``units``."""
    if units not in UNITS:
        raise ConfigurationError(f"units must be one of {UNITS}, got {units!r}", setting="units")
    if units == "nats":
        return table
    factor = 1.0 / math.log(2.0)
    for name in columns:
        if name not in table.column_names:
            continue
        index = table.column_names.index(name)
        scaled = pa.array([None if v is None else v * factor for v in table[name].to_pylist()],
                          type=pa.float64())
        table = table.set_column(index, name, scaled)
    return table


def table_to_frame(table: pa.Table) -> pd.DataFrame:
    return table.to_pandas()


def write_table(
    table: pa.Table,
    path: Optional[str] = None,
    units: str = "nats",
    nat_columns: Iterable[str] = (),
    stream: TextIO = None,
) -> None:
    """
    Write ``table`` as CSV with a header row and 12 significant digits.

    Args:
        table: Result table
        path: Output file; stdout (or ``stream``) when omitted
        units: "nats" or "bits"
        nat_columns: Columns holding information quantities

    Raises:
        ConfigurationError: unwritable path or unknown units
    """
    frame = table_to_frame(scale_units(table, nat_columns, units))
    if path is None:
        frame.to_csv(stream or sys.stdout, index=False, float_format=FLOAT_FORMAT)
        return
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as e:
        raise ConfigurationError(f"Cannot write output file {path}: {e}", setting="output")
    logger.info("Wrote %d rows to %s", len(frame), path)
