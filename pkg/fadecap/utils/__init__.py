"""fadecap Utils Package"""

from fadecap.utils.sweep import ParallelSweeper, batch_sizes, records_to_arrow
from fadecap.utils.output import scale_units, table_to_frame, write_table

__all__ = [
    "ParallelSweeper",
    "batch_sizes",
    "records_to_arrow",
    "scale_units",
    "table_to_frame",
    "write_table",
]
