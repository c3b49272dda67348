"""Non-terrestrial link budget: PL = PL_b + PL_g + PL_s with
PL_b = FSPL(h/sin(el), f) + SF + CL (3GPP TR 38.811 form)."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .atmosphere import STANDARD, AtmosphereProfile
from .core import DecibelQuantity, DomainError
from .geometry import (
    MIN_ELEVATION_DEG,
    PathLossBreakdown,
    SlantPath,
    earth_space_distance_m,
    fspl,
    slant_gas_attenuation,
)


@dataclass(frozen=True)
class NtnLinkConfig:
    """Geometry and loss terms of a ground-to-satellite link.

    ``gas_db_override`` replaces the computed slant gas attenuation with a
    fixed value, e.g. a measured or externally published figure.
    """

    freq_ghz: float
    h_sat_km: float
    elevation_deg: float
    shadow_fading_db: float = 0.0
    clutter_loss_db: float = 0.0
    scintillation_db: float = 0.0
    profile: AtmosphereProfile = STANDARD
    gas_db_override: float | None = None

    def __post_init__(self):
        if not self.freq_ghz > 0:
            raise DomainError("freq_ghz must be > 0")
        if not self.h_sat_km > 0:
            raise DomainError("h_sat_km must be > 0")
        if not MIN_ELEVATION_DEG <= self.elevation_deg <= 90:
            raise DomainError(f"elevation must lie in [{MIN_ELEVATION_DEG}, 90] deg")
        for name in ("shadow_fading_db", "clutter_loss_db", "scintillation_db"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be finite and >= 0, got {v}")
        if self.gas_db_override is not None and not self.gas_db_override >= 0:
            raise DomainError("gas_db_override must be >= 0")

    @classmethod
    def line_of_sight(cls, freq_ghz: float, h_sat_km: float, elevation_deg: float,
                      **kwargs) -> "NtnLinkConfig":
        """LOS link: clutter loss is negligible and set to zero."""
        kwargs["clutter_loss_db"] = 0.0
        return cls(freq_ghz, h_sat_km, elevation_deg, **kwargs)

    def with_shadow_fading(self, sigma_db: float, seed: int) -> "NtnLinkConfig":
        """Copy with SF drawn from N(0, sigma) dB using an explicit seed.

        Draws below zero are clipped to 0 dB so the loss ledger stays
        non-negative; the median draw is therefore 0 dB as in the
        deterministic case.
        """
        if not sigma_db >= 0:
            raise DomainError("sigma_db must be >= 0")
        draw = np.random.default_rng(seed).normal(0.0, sigma_db)
        return replace(self, shadow_fading_db=max(0.0, float(draw)))


@dataclass(frozen=True)
class TransmitterSpec:
    tx_power_dbm: float
    antenna_gain_dbi: float

    def __post_init__(self):
        if not (math.isfinite(self.tx_power_dbm) and math.isfinite(self.antenna_gain_dbi)):
            raise DomainError("transmitter power and gain must be finite")

    @property
    def eirp_dbm(self) -> float:
        return self.tx_power_dbm + self.antenna_gain_dbi


def ntn_path_loss(cfg: NtnLinkConfig, subdivisions: int = 1) -> PathLossBreakdown:
    """Itemised ground-to-satellite loss for ``cfg``."""
    if cfg.gas_db_override is not None:
        gas = float(cfg.gas_db_override)
    else:
        path = SlantPath(0.0, cfg.h_sat_km, cfg.elevation_deg)
        gas = slant_gas_attenuation(cfg.freq_ghz, cfg.profile, path, subdivisions)
    return PathLossBreakdown(
        fspl_db=fspl(cfg.freq_ghz, earth_space_distance_m(cfg.h_sat_km, cfg.elevation_deg)),
        gas_db=gas,
        shadow_db=cfg.shadow_fading_db,
        clutter_db=cfg.clutter_loss_db,
        scintillation_db=cfg.scintillation_db,
    )


def received_power(tx: TransmitterSpec, pl: PathLossBreakdown | float,
                   rx_gain_dbi: float = 0.0) -> DecibelQuantity:
    """Received level P_tx + G_tx + G_rx - PL in dBm.

    The receive gain defaults to 0 dBi. A real radiometer antenna has tens of
    dBi of gain, so the default understates interference.
    """
    loss = pl.total_db if isinstance(pl, PathLossBreakdown) else float(pl)
    vals = (tx.tx_power_dbm, tx.antenna_gain_dbi, rx_gain_dbi, loss)
    if not all(math.isfinite(v) for v in vals):
        raise DomainError("received_power inputs must be finite")
    return DecibelQuantity.dbm(tx.tx_power_dbm) + tx.antenna_gain_dbi + rx_gain_dbi - loss
