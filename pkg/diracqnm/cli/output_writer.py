from __future__ import annotations

import json
import math
import sys
from typing import Any, Dict, List, Optional, TextIO

import numpy as np
from pandas import DataFrame

from .run_config import OutputFormat

FLOAT_FORMAT = "%.17g"


def _json_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "null" if not math.isfinite(value) else FLOAT_FORMAT % float(value)
    return json.dumps(str(value))


def records_to_json(records: List[Dict[str, Any]]) -> str:
    """A JSON array of flat records with every float written to 17 significant digits."""
    lines = []
    for record in records:
        fields = ", ".join(f"{json.dumps(str(key))}: {_json_value(value)}" for key, value in record.items())
        lines.append("{" + fields + "}")
    if not lines:
        return "[]\n"
    return "[\n  " + ",\n  ".join(lines) + "\n]\n"


def format_frame(frame: DataFrame, output_format: OutputFormat) -> str:
    if output_format is OutputFormat.CSV:
        return str(frame.to_csv(index=False, float_format=FLOAT_FORMAT))
    records = [{str(key): value for key, value in row.items()} for row in frame.to_dict(orient="records")]
    return records_to_json(records)


def write_frame(frame: DataFrame, output_format: OutputFormat, output: Optional[str] = None) -> None:
    """Write `frame` to the file `output`, or to stdout when it is None."""
    text = format_frame(frame, output_format)
    if output is None:
        _write(sys.stdout, text)
        return
    with open(output, "w", encoding="utf-8", newline="") as f:
        _write(f, text)


def _write(stream: TextIO, text: str) -> None:
    stream.write(text)
    stream.flush()
