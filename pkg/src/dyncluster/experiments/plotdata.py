"""Long-format plot series from a finished report directory."""

import csv
import logging
from pathlib import Path

from ..models.schemas import ALGORITHM_ORDER
from ..protocols.ledger import RUN_COLUMNS

logger = logging.getLogger(__name__)

PLOT_COLUMNS = ("series", "tau", "value")
METRICS = {"comm": "comm_cumulative", "ncut": "ncut"}


def emit_plotdata(report_dir: str | Path, out_dir: str | Path | None = None) -> list[Path]:
    """Write ``plot_<metric>.csv`` files with ``series,tau,value`` rows.

    One series per algorithm CSV found in ``report_dir``, in the canonical
    algorithm order, rows sorted by tau. Undefined NCut values stay blank.

    Args:
        report_dir: Directory holding ``<algorithm>.csv`` run files
        out_dir: Destination, defaults to ``report_dir``

    Returns:
        Paths of the written files

    Raises:
        FileNotFoundError: If the directory holds no run files
        ValueError: If a run file has the wrong header
    """
    src = Path(report_dir)
    dest = Path(out_dir) if out_dir is not None else src
    run_files = [src / f"{name}.csv" for name in ALGORITHM_ORDER if (src / f"{name}.csv").is_file()]
    if not run_files:
        raise FileNotFoundError(f"No algorithm run files in {src}")

    series: dict[str, list[dict[str, str]]] = {}
    for path in run_files:
        with path.open("r", newline="", encoding="utf-8") as f:
            reader = csv.DictReader(f)
            if tuple(reader.fieldnames or ()) != RUN_COLUMNS:
                raise ValueError(f"{path} does not have columns {','.join(RUN_COLUMNS)}")
            series[path.stem] = sorted(reader, key=lambda row: int(row["tau"]))

    dest.mkdir(parents=True, exist_ok=True)
    written = []
    for metric, column in METRICS.items():
        out = dest / f"plot_{metric}.csv"
        with out.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(PLOT_COLUMNS)
            for name, rows in series.items():
                writer.writerows([name, row["tau"], row[column]] for row in rows)
        written.append(out)
    logger.info(f"Wrote plot data for {len(series)} series to {dest}")
    return written
