"""Reference atmosphere (ITU-R P.835 mean annual global) and slant-path layering.

Pressure and temperature follow the layered closed forms of the mean annual
global reference atmosphere. Water vapour decays exponentially from its
surface value with a 2 km scale height. Pressure is the *total* pressure;
the absorption model splits off the water-vapour partial pressure itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError

WATER_VAPOUR_SCALE_HEIGHT_KM = 2.0
TOP_OF_ATMOSPHERE_KM = 100.0

_GEOPOTENTIAL_RADIUS = 6356.766  # km


@dataclass(frozen=True)
class AtmosphericState:
    """Pressure [hPa], temperature [K] and water-vapour density [g/m^3]."""

    pressure: float
    temperature: float
    water_vapor_density: float

    def __post_init__(self):
        if not self.pressure > 0:
            raise DomainError(f"pressure must be > 0 hPa, got {self.pressure}")
        if not self.temperature > 0:
            raise DomainError(f"temperature must be > 0 K, got {self.temperature}")
        if not self.water_vapor_density >= 0:
            raise DomainError(f"water vapour density must be >= 0, got {self.water_vapor_density}")

    @property
    def vapor_pressure(self) -> float:
        """Water-vapour partial pressure e = rho*T/216.7 [hPa]."""
        return self.water_vapor_density * self.temperature / 216.7


@dataclass(frozen=True)
class AtmosphereProfile:
    """Vertical profile selected by its surface water-vapour density.

    ``pressure_scale`` multiplies the pressure everywhere; 0 turns the
    profile into vacuum, which is only useful for testing integrators.
    """

    surface_water_vapor_density: float = 7.5
    profile_kind: str = "reference_mean_annual"
    pressure_scale: float = 1.0

    def __post_init__(self):
        if not self.surface_water_vapor_density >= 0:
            raise DomainError("surface water vapour density must be >= 0")
        if self.profile_kind != "reference_mean_annual":
            raise DomainError(f"unknown profile kind {self.profile_kind!r}")
        if not self.pressure_scale >= 0:
            raise DomainError("pressure_scale must be >= 0")

    @classmethod
    def standard(cls) -> "AtmosphereProfile":
        return cls(7.5)

    @classmethod
    def dry(cls) -> "AtmosphereProfile":
        return cls(0.0)

    @classmethod
    def named(cls, name: str, surface_vapor: float | None = None) -> "AtmosphereProfile":
        """Look up a preset by name; ``surface_vapor`` overrides its density."""
        presets = {"standard": 7.5, "dry": 0.0}
        if name not in presets:
            raise DomainError(f"unknown atmosphere {name!r}; choose from {sorted(presets)}")
        rho = presets[name] if surface_vapor is None else surface_vapor
        return cls(float(rho))


STANDARD = AtmosphereProfile.standard()
DRY = AtmosphereProfile.dry()


def _temperature_pressure(z):
    """Vectorised mean annual reference T [K] and P [hPa] at geometric height z [km]."""
    z = np.asarray(z, dtype=float)
    h = _GEOPOTENTIAL_RADIUS * z / (_GEOPOTENTIAL_RADIUS + z)
    hc = lambda lo, hi: np.clip(h, lo, hi)  # noqa: E731  keeps unused branches finite

    conds = [
        h <= 11, h <= 20, h <= 32, h <= 47, h <= 51, h <= 71, z < 86,
    ]
    temps = [
        288.15 - 6.5 * hc(0, 11),
        np.full_like(h, 216.65),
        216.65 + (hc(20, 32) - 20),
        228.65 + 2.8 * (hc(32, 47) - 32),
        np.full_like(h, 270.65),
        270.65 - 2.8 * (hc(51, 71) - 51),
        214.65 - 2.0 * (hc(71, 84.852) - 71),
    ]
    pressures = [
        1013.25 * (288.15 / (288.15 - 6.5 * hc(0, 11))) ** (-34.1632 / 6.5),
        226.3226 * np.exp(-34.1632 * (hc(11, 20) - 11) / 216.65),
        54.74980 * (216.65 / (216.65 + (hc(20, 32) - 20))) ** 34.1632,
        8.680422 * (228.65 / (228.65 + 2.8 * (hc(32, 47) - 32))) ** (34.1632 / 2.8),
        1.109106 * np.exp(-34.1632 * (hc(47, 51) - 47) / 270.65),
        0.6694167 * (270.65 / (270.65 - 2.8 * (hc(51, 71) - 51))) ** (-34.1632 / 2.8),
        0.03956649 * (214.65 / (214.65 - 2.0 * (hc(71, 84.852) - 71))) ** (-34.1632 / 2.0),
    ]
    # 86-100 km is specified on geometric height
    zu = np.clip(z, 86.0, 100.0)
    t_upper = np.where(
        zu <= 91,
        186.8673,
        263.1905 - 76.3232 * np.sqrt(np.clip(1 - ((zu - 91) / 19.9429) ** 2, 0, None)),
    )
    p_upper = np.exp(
        95.571899 - 4.011801 * zu + 6.424731e-2 * zu**2
        - 4.789660e-4 * zu**3 + 1.340543e-6 * zu**4
    )
    t = np.select(conds, temps, default=t_upper)
    p = np.select(conds, pressures, default=p_upper)
    return t, p


def _check_altitude(z):
    arr = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > TOP_OF_ATMOSPHERE_KM):
        raise DomainError(f"altitude must lie in [0, {TOP_OF_ATMOSPHERE_KM:g}] km, got {z}")
    return arr


def profile_arrays(profile: AtmosphereProfile, altitude_km):
    """Vectorised profile: (pressure hPa, temperature K, vapour density g/m^3)."""
    z = _check_altitude(altitude_km)
    t, p = _temperature_pressure(z)
    rho = profile.surface_water_vapor_density * np.exp(-z / WATER_VAPOUR_SCALE_HEIGHT_KM)
    return p * profile.pressure_scale, t, rho


def state_at(profile: AtmosphereProfile, altitude_km: float) -> AtmosphericState:
    """Atmospheric state at a geometric altitude in [0, 100] km."""
    p, t, rho = profile_arrays(profile, float(altitude_km))
    return AtmosphericState(float(p), float(t), float(rho))


def layer_boundaries(max_altitude_km: float) -> np.ndarray:
    """Layer edges 0 = z0 < z1 < ... <= max for slant-path integration.

    Layer i (1-based) is 0.1 m * exp((i-1)/100) thick, so resolution is
    ~0.1 m at the ground and ~1 km near 100 km. The sequence stops at the
    last edge not exceeding ``max_altitude_km``.
    """
    max_altitude_km = float(max_altitude_km)
    if not max_altitude_km > 0 or not math.isfinite(max_altitude_km):
        raise DomainError(f"max altitude must be > 0 km, got {max_altitude_km}")
    # edges form a geometric series; invert it for the layer count, plus slack
    ratio = math.exp(0.01)
    n = int(100.0 * math.log1p(max_altitude_km * (ratio - 1.0) / 1e-4)) + 2
    edges = np.concatenate(([0.0], np.cumsum(1e-4 * np.exp(np.arange(n) / 100.0))))
    return edges[edges <= max_altitude_km]
