"""Constant excess-loss fit (e.g. foliage loss) over free space from link records."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .core import DomainError
from .geometry import fspl

CSV_FIELDS = ("distance_m", "tx_power_dbm", "tx_gain_dbi", "rx_gain_dbi", "rx_power_dbm",
              "frequency_ghz")


@dataclass(frozen=True)
class MeasurementRecord:
    distance_m: float
    tx_power_dbm: float
    tx_gain_dbi: float
    rx_gain_dbi: float
    rx_power_dbm: float
    frequency_ghz: float

    def __post_init__(self):
        for name in CSV_FIELDS:
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not self.distance_m > 0:
            raise DomainError(f"distance_m must be > 0, got {self.distance_m}")
        if not self.frequency_ghz > 0:
            raise DomainError(f"frequency_ghz must be > 0, got {self.frequency_ghz}")


@dataclass(frozen=True)
class ExcessLossFit:
    mean_excess_db: float
    std_dev_db: float
    n_records: int


def excess_loss(rec: MeasurementRecord) -> float:
    """Measured path loss minus free-space loss, in dB."""
    measured = rec.tx_power_dbm + rec.tx_gain_dbi + rec.rx_gain_dbi - rec.rx_power_dbm
    return measured - fspl(rec.frequency_ghz, rec.distance_m)


def fit_excess_loss(records: Iterable[MeasurementRecord]) -> ExcessLossFit:
    """Least-squares constant offset over FSPL and its population spread.

    All records must share a carrier within 1 GHz. The standard deviation
    uses divisor n; multiply by sqrt(n/(n-1)) for the sample estimate.
    """
    records = list(records)
    if not records:
        raise DomainError("fit_excess_loss needs at least one record")
    freqs = [r.frequency_ghz for r in records]
    if max(freqs) - min(freqs) > 1.0:
        raise DomainError(f"records span {min(freqs)}-{max(freqs)} GHz; fit one carrier at a time")
    x = np.array([excess_loss(r) for r in records])
    mean = float(np.mean(x))
    return ExcessLossFit(mean, float(np.sqrt(np.mean((x - mean) ** 2))), len(records))


def read_records(path: str | Path) -> list[MeasurementRecord]:
    """Read records from a CSV whose header is exactly ``CSV_FIELDS``."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CSV_FIELDS:
            raise DomainError(f"{path}: header must be {','.join(CSV_FIELDS)}")
        out = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(CSV_FIELDS):
                raise DomainError(f"{path}:{lineno}: expected {len(CSV_FIELDS)} fields")
            try:
                out.append(MeasurementRecord(*(float(c) for c in row)))
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: {exc}") from None
    return out
