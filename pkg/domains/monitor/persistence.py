"""
Run folders: series.csv, meta.json and checkpoints.

runs/<name>/series.csv    one row per recorded step, columns = MonitorRecord fields
runs/<name>/meta.json     config echo, constant provenance, verdict
runs/<name>/checkpoints/  AXRG checkpoint files
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from config.settings import settings
from domains.grid.checkpoint import write_checkpoint
from domains.grid.fields import AxisymState
from .schemas import MonitorRecord

logger = logging.getLogger(__name__)

SERIES_FILE = "series.csv"
META_FILE = "meta.json"
CHECKPOINT_DIR = "checkpoints"

COLUMNS = list(MonitorRecord.model_fields)
# 17 significant digits round-trip every double
FLOAT_FORMAT = "%.17g"
NA_REP = "nan"


def run_dir(name: str, parent: Optional[Union[str, Path]] = None) -> Path:
    if not name or "/" in name or name in (".", ".."):
        raise ValueError(f"invalid run name {name!r}")
    return Path(parent or settings.runs_dir) / name


class SeriesWriter:
    """Append-only CSV writer; each row is flushed so a crash keeps the prefix."""

    def __init__(self, path: Path):
        path.parent.mkdir(parents=True, exist_ok=True)
        self.path = path
        self._file = path.open("w", newline="")
        self.rows = 0
        self._append(pd.DataFrame(columns=COLUMNS), header=True)

    def _append(self, frame: pd.DataFrame, header: bool = False) -> None:
        frame.to_csv(self._file, header=header, index=False, float_format=FLOAT_FORMAT, na_rep=NA_REP)
        self._file.flush()

    def write(self, record: MonitorRecord) -> None:
        self._append(pd.DataFrame([record.model_dump()], columns=COLUMNS))
        self.rows += 1

    def write_status(self, t: float, status: str) -> None:
        """Terminal row after a failure: NaN everywhere except t and status."""
        row: Dict[str, Any] = {k: math.nan for k in COLUMNS}
        row.update(t=float(t), status=status)
        self._append(pd.DataFrame([row], columns=COLUMNS))
        logger.warning(f"Run stopped at t={t}: {status}")

    def close(self) -> None:
        self._file.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


def read_series(path: Union[str, Path]) -> List[MonitorRecord]:
    """Rows of a series.csv, terminal status row included."""
    path = Path(path)
    frame = pd.read_csv(path, dtype={"status": str}, float_precision="round_trip")
    if list(frame.columns) != COLUMNS:
        raise ValueError(f"{path} columns do not match MonitorRecord: {list(frame.columns)}")
    return [MonitorRecord(**row) for row in frame.to_dict(orient="records")]


def write_meta(directory: Path, meta: Dict[str, Any]) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / META_FILE
    path.write_text(json.dumps(meta, indent=2, default=str))
    return path


def read_meta(directory: Path) -> Dict[str, Any]:
    path = directory / META_FILE
    if not path.exists():
        raise FileNotFoundError(f"no {META_FILE} in {directory}")
    return json.loads(path.read_text())


def save_checkpoint(directory: Path, state: AxisymState, step_index: int) -> Path:
    path = directory / CHECKPOINT_DIR / f"step_{step_index:07d}.axrg"
    path.parent.mkdir(parents=True, exist_ok=True)
    write_checkpoint(path, state.grid, state.t, state.u_r.values, state.u_theta.values,
                     state.u_z.values, state.pressure.values)
    logger.debug(f"Checkpoint {path.name} at t={state.t:.6g}")
    return path


def load_run(name: str, parent: Optional[Union[str, Path]] = None):
    """(meta, records) of a stored run."""
    directory = run_dir(name, parent)
    if not directory.is_dir():
        raise FileNotFoundError(f"run {name!r} not found under {directory.parent}")
    return read_meta(directory), read_series(directory / SERIES_FILE)


def stored_constant(meta: Dict[str, Any]) -> Optional[float]:
    """C recorded in meta.json, None when the run had none."""
    constant = meta.get("constant")
    return None if not constant else constant.get("value")
