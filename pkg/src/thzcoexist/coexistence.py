"""Passive-radiometer protection: thresholds, aggregate emitters, antenna leakage."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .core import BOLTZMANN, DecibelQuantity, DomainError, _as_dbm
from .geometry import MIN_ELEVATION_DEG
from .ntn import NtnLinkConfig, ntn_path_loss


@dataclass(frozen=True)
class RadiometerSpec:
    """Radiometric sensitivity ``delta_t_kelvin`` over ``bandwidth_hz``.

    ``protection_margin_db`` is how far below k*dT*B interference must stay.
    """

    delta_t_kelvin: float
    bandwidth_hz: float
    protection_margin_db: float = 0.0

    def __post_init__(self):
        if not self.delta_t_kelvin > 0:
            raise DomainError("delta_t_kelvin must be > 0")
        if not self.bandwidth_hz > 0:
            raise DomainError("bandwidth_hz must be > 0")
        if not self.protection_margin_db >= 0:
            raise DomainError("protection_margin_db must be >= 0")


# TEMPEST-D 165 GHz channel
TEMPEST_D = RadiometerSpec(delta_t_kelvin=0.1, bandwidth_hz=200e6, protection_margin_db=7.0)


@dataclass(frozen=True)
class AntennaPattern:
    """Parabolic-in-dB mainlobe clamped at a flat sidelobe floor."""

    boresight_gain_dbi: float
    hpbw_deg: float
    sidelobe_floor_dbi: float = -10.0

    def __post_init__(self):
        if not self.hpbw_deg > 0:
            raise DomainError("hpbw_deg must be > 0")
        if not self.sidelobe_floor_dbi < self.boresight_gain_dbi:
            raise DomainError("sidelobe floor must lie below the boresight gain")


@dataclass(frozen=True)
class DeviceBudget:
    """How many identical emitters fit under a threshold."""

    count: float
    whole: int
    exceeded: bool


def interference_threshold(spec: RadiometerSpec) -> DecibelQuantity:
    """Permissible interference 10*log10(k*dT*B*1e3) - margin, in dBm."""
    level = 10.0 * math.log10(BOLTZMANN * spec.delta_t_kelvin * spec.bandwidth_hz * 1e3)
    return DecibelQuantity.dbm(level - spec.protection_margin_db)


def aggregate_interference(i_single_dbm, n: float) -> DecibelQuantity:
    """Power sum of ``n`` emitters each received at ``i_single_dbm``."""
    if not n >= 1:
        raise DomainError(f"need at least one emitter, got n={n}")
    return DecibelQuantity.dbm(_as_dbm(i_single_dbm) + 10.0 * math.log10(n))


def max_devices(i_single_dbm, threshold_dbm) -> DeviceBudget:
    """Number of emitters whose summed power reaches ``threshold_dbm``.

    If one emitter already reaches the threshold the count is 0 and
    ``exceeded`` is set.
    """
    headroom = _as_dbm(threshold_dbm) - _as_dbm(i_single_dbm)
    if headroom <= 0:
        return DeviceBudget(0.0, 0, True)
    count = 10.0 ** (headroom / 10.0)
    return DeviceBudget(count, int(math.floor(count)), False)


def pattern_gain(p: AntennaPattern, off_boresight_deg: float) -> float:
    """Gain [dBi] at an angle off boresight: G0 - 12*(theta/HPBW)^2, floored."""
    theta = abs(float(off_boresight_deg))
    return max(p.boresight_gain_dbi - 12.0 * (theta / p.hpbw_deg) ** 2, p.sidelobe_floor_dbi)


def uplink_interference_at_satellite(
    tx_power_dbm: float,
    pattern: AntennaPattern,
    pointing_elevation_deg: float,
    satellite_elevation_deg: float,
    cfg: NtnLinkConfig,
    rx_gain_dbi: float = 0.0,
) -> DecibelQuantity:
    """Level received by the satellite from one ground emitter.

    The emitter points its main beam at ``pointing_elevation_deg`` while the
    satellite is seen at ``satellite_elevation_deg``; the path loss is
    evaluated along the latter with the rest of ``cfg`` unchanged.
    """
    for name, el in (("pointing", pointing_elevation_deg), ("satellite", satellite_elevation_deg)):
        if not MIN_ELEVATION_DEG <= el <= 90:
            raise DomainError(f"{name} elevation must lie in [{MIN_ELEVATION_DEG}, 90] deg")
    offset = abs(satellite_elevation_deg - pointing_elevation_deg)
    pl = ntn_path_loss(replace(cfg, elevation_deg=satellite_elevation_deg))
    gain = pattern_gain(pattern, offset)
    return DecibelQuantity.dbm(tx_power_dbm) + gain + rx_gain_dbi - pl.total_db
