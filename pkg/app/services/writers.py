"""
CSV and JSON serialization of computation results.

Row builders return native values (float, int, str or None); the CSV
renderer formats floats with round-trip precision and leaves None empty,
the JSON renderer emits the same rows as records.
"""

import csv
import io
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO, Tuple

from app.config import settings
from app.entities.diagnostics import DeltaMap, FisherZeroLine, RateSeries
from app.entities.observables import EntropyProfile, PhaseSeries, WindingSeries
from app.utils.logger import get_logger

logger = get_logger(__name__)

Row = List[Any]

RATE_HEADER = ["t", "lambda"]
ZEROS_HEADER = ["n", "k", "tau", "t", "flag"]
ZEROS_FAMILY_HEADER = ["r"] + ZEROS_HEADER
SCAN_HEADER = ["r", "phi", "delta"]
PHASE_HEADER = ["t", "phi_total", "phi_dyn", "phi_geo", "nu"]
ENTROPY_HEADER = ["k", "entropy"]
PAIRING_HEADER = ["d", "J"]


def format_value(value: Any) -> str:
    """Format one CSV field: round-trip floats, plain ints, empty for None."""
    if value is None:
        return ""
    if isinstance(value, bool) or isinstance(value, str):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(float(value), settings.CSV_FLOAT_FORMAT)


@contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    """Open ``path`` for writing with LF newlines; ``None`` or ``-`` means stdout."""
    if path in (None, "-"):
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="\n") as handle:
        yield handle
    logger.info(f"Wrote {target}")


def render_csv(header: Sequence[str], rows: Sequence[Row]) -> str:
    buffer = io.StringIO(newline="")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([format_value(v) for v in row] for row in rows)
    return buffer.getvalue()


def render_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def table_payload(header: Sequence[str], rows: Sequence[Row]) -> Dict[str, Any]:
    """JSON form of a table: column names plus one record per row."""
    return {
        "columns": list(header),
        "rows": [dict(zip(header, row)) for row in rows],
    }


def write_table(
    path: Optional[str], header: Sequence[str], rows: Sequence[Row], fmt: str = "csv"
) -> None:
    """Write a table as CSV or JSON to ``path`` or stdout."""
    text = render_json(table_payload(header, rows)) if fmt == "json" else render_csv(header, rows)
    with open_output(path) as handle:
        handle.write(text)


def write_json(path: Optional[str], payload: Dict[str, Any]) -> None:
    """Write ``payload`` as sorted, indented JSON."""
    with open_output(path) as handle:
        handle.write(render_json(payload))


# ============================================================================
# Row builders
# ============================================================================

def rate_rows(series: RateSeries) -> List[Row]:
    return [[float(t), float(v)] for t, v in zip(series.times, series.values)]


def _zero_row(n: int, sample) -> Row:
    return [n, sample.k, sample.tau, sample.t, "unbounded" if sample.unbounded else "bounded"]


def zero_rows(lines: Sequence[FisherZeroLine]) -> List[Row]:
    return [_zero_row(line.n, sample) for line in lines for sample in line.samples]


def zero_family_rows(family: Sequence[Tuple[float, FisherZeroLine]]) -> List[Row]:
    """Fisher-zero rows tagged with the squeezing strength of their line."""
    return [[float(r)] + _zero_row(line.n, sample) for r, line in family for sample in line.samples]


def scan_rows(delta_map: DeltaMap) -> List[Row]:
    return [
        [float(r), float(phi), float(delta_map.delta[i, j])]
        for i, r in enumerate(delta_map.r_values)
        for j, phi in enumerate(delta_map.phi_values)
    ]


def phase_rows(phases: PhaseSeries, winding: Optional[WindingSeries] = None) -> List[Row]:
    return [
        [
            float(t),
            float(phases.phi_total[i]),
            float(phases.phi_dyn[i]),
            float(phases.phi_geo[i]),
            None if winding is None else int(winding.nu[i]),
        ]
        for i, t in enumerate(phases.times)
    ]


def entropy_rows(profile: EntropyProfile) -> List[Row]:
    return [[float(k), float(s)] for k, s in zip(profile.momenta, profile.entropy)]


def pairing_rows(table: Sequence[Tuple[int, float]]) -> List[Row]:
    return [[int(d), float(j)] for d, j in table]


__all__ = [
    "RATE_HEADER",
    "ZEROS_HEADER",
    "ZEROS_FAMILY_HEADER",
    "SCAN_HEADER",
    "PHASE_HEADER",
    "ENTROPY_HEADER",
    "PAIRING_HEADER",
    "format_value",
    "open_output",
    "render_csv",
    "render_json",
    "table_payload",
    "write_table",
    "write_json",
    "rate_rows",
    "zero_rows",
    "zero_family_rows",
    "scan_rows",
    "phase_rows",
    "entropy_rows",
    "pairing_rows",
]
