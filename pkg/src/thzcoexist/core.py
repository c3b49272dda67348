"""Shared constants, errors and decibel arithmetic."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

# Rounded value used by the radiometer interference budget; the CODATA value
# (1.380649e-23) shifts the TEMPEST-D threshold by ~0.002 dB.
BOLTZMANN = 1.38e-23  # J/K
SPEED_OF_LIGHT = 299_792_458.0  # m/s
EARTH_RADIUS_KM = 6371.0


class DomainError(ValueError):
    """An input lies outside the validity range of a model or operation."""


@dataclass(frozen=True)
class DecibelQuantity:
    """A level in dB (relative) or dBm (absolute power).

    Arithmetic follows the usual link-budget rules: absolute +/- relative
    gives absolute, relative +/- relative gives relative, and the difference
    of two absolute levels is a relative ratio. Adding two absolute levels is
    meaningless and raises ``TypeError`` (use :func:`power_sum_db`).
    Plain numbers are treated as relative dB.
    """

    value: float
    absolute: bool = False

    @classmethod
    def dbm(cls, value: float) -> "DecibelQuantity":
        return cls(float(value), absolute=True)

    @classmethod
    def db(cls, value: float) -> "DecibelQuantity":
        return cls(float(value), absolute=False)

    @property
    def unit(self) -> str:
        return "dBm" if self.absolute else "dB"

    def __float__(self) -> float:
        return float(self.value)

    def __neg__(self) -> "DecibelQuantity":
        if self.absolute:
            raise TypeError("cannot negate an absolute power level")
        return DecibelQuantity(-self.value, False)

    def __add__(self, other) -> "DecibelQuantity":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.absolute and o.absolute:
            raise TypeError("adding two absolute power levels; use power_sum_db")
        return DecibelQuantity(self.value + o.value, self.absolute or o.absolute)

    __radd__ = __add__

    def __sub__(self, other) -> "DecibelQuantity":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.absolute and not self.absolute:
            raise TypeError("cannot subtract an absolute level from a relative one")
        # dBm - dBm is a ratio
        return DecibelQuantity(self.value - o.value, self.absolute and not o.absolute)

    def __rsub__(self, other) -> "DecibelQuantity":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __str__(self) -> str:
        return f"{self.value:.1f} {self.unit}"


def _coerce(x) -> DecibelQuantity:
    if isinstance(x, DecibelQuantity):
        return x
    if isinstance(x, (int, float, np.floating, np.integer)):
        return DecibelQuantity(float(x), False)
    return NotImplemented


def _as_dbm(x) -> float:
    if isinstance(x, DecibelQuantity):
        if not x.absolute:
            raise TypeError("expected an absolute level in dBm, got relative dB")
        return x.value
    return float(x)


def dbm_from_watts(p: float) -> DecibelQuantity:
    """Convert a power in watts to dBm."""
    p = float(p)
    if not p > 0 or not math.isfinite(p):
        raise DomainError(f"power must be positive and finite, got {p} W")
    return DecibelQuantity.dbm(10.0 * math.log10(p * 1e3))


def watts_from_dbm(x: DecibelQuantity) -> float:
    """Convert an absolute dBm level to watts."""
    if not isinstance(x, DecibelQuantity) or not x.absolute:
        raise TypeError("watts_from_dbm needs an absolute DecibelQuantity (dBm)")
    return 10.0 ** (x.value / 10.0) * 1e-3


def power_sum_db(levels: Iterable) -> DecibelQuantity:
    """Non-coherent (power) sum of absolute levels.

    Plain floats are accepted and read as dBm. Uses a log-sum-exp form so
    that very small levels (e.g. -300 dBm) do not underflow.
    """
    vals = np.array([_as_dbm(v) for v in levels], dtype=float)
    if vals.size == 0:
        raise DomainError("power_sum_db needs at least one level")
    peak = vals.max()
    total = peak + 10.0 * math.log10(np.sum(10.0 ** ((vals - peak) / 10.0)))
    return DecibelQuantity.dbm(total)


def check_frequency(f_ghz, lo: float = 1.0, hi: float = 1000.0, what: str = "model"):
    """Raise DomainError unless every frequency lies in [lo, hi] GHz."""
    arr = np.asarray(f_ghz, dtype=float)
    if arr.size == 0 or not np.all(np.isfinite(arr)) or np.any(arr < lo) or np.any(arr > hi):
        raise DomainError(
            f"frequency outside the {what} validity range [{lo:g}, {hi:g}] GHz: {f_ghz}"
        )
    return arr
