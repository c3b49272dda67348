"""Free-space loss, spherical-earth slant paths and total path-loss assembly."""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import asdict, dataclass, fields

import numpy as np

from .atmosphere import (
    STANDARD,
    TOP_OF_ATMOSPHERE_KM,
    AtmosphereProfile,
    layer_boundaries,
    profile_arrays,
    state_at,
)
from .core import EARTH_RADIUS_KM, SPEED_OF_LIGHT, DomainError, check_frequency
from .gas import F_MAX_GHZ, F_MIN_GHZ, gamma_gas, specific_gas_attenuation
from .rain import specific_rain_attenuation

MIN_ELEVATION_DEG = 0.5


@dataclass(frozen=True)
class SlantPath:
    """Straight ray from ``ground_altitude_km`` up to ``top_altitude_km``."""

    ground_altitude_km: float
    top_altitude_km: float
    elevation_angle_deg: float

    def __post_init__(self):
        if not 0 <= self.ground_altitude_km < self.top_altitude_km:
            raise DomainError(
                f"need 0 <= ground < top, got {self.ground_altitude_km}, {self.top_altitude_km}"
            )
        if not MIN_ELEVATION_DEG <= self.elevation_angle_deg <= 90:
            raise DomainError(
                f"elevation must lie in [{MIN_ELEVATION_DEG}, 90] deg, got {self.elevation_angle_deg}"
            )


@dataclass(frozen=True)
class PathLossBreakdown:
    """Itemised path loss in dB. ``total_db`` is the sum of the components."""

    fspl_db: float = 0.0
    gas_db: float = 0.0
    rain_db: float = 0.0
    clutter_db: float = 0.0
    shadow_db: float = 0.0
    scintillation_db: float = 0.0

    def __post_init__(self):
        for fld in fields(self):
            v = getattr(self, fld.name)
            if not (math.isfinite(v) and v >= 0):
                raise DomainError(f"{fld.name} must be finite and >= 0, got {v}")

    @property
    def total_db(self) -> float:
        return (self.fspl_db + self.gas_db + self.rain_db + self.clutter_db
                + self.shadow_db + self.scintillation_db)

    def as_dict(self) -> dict[str, float]:
        d = asdict(self)
        d["total_db"] = self.total_db
        return d


def fspl(f_ghz, distance_m):
    """Friis free-space path loss 20*log10(4*pi*d*f/c) in dB."""
    d = np.asarray(distance_m, dtype=float)
    f = np.asarray(f_ghz, dtype=float)
    if np.any(~np.isfinite(d)) or np.any(d <= 0):
        raise DomainError(f"distance must be > 0 m, got {distance_m}")
    if np.any(~np.isfinite(f)) or np.any(f <= 0):
        raise DomainError(f"frequency must be > 0 GHz, got {f_ghz}")
    loss = 20.0 * np.log10(4.0 * math.pi * d * f * 1e9 / SPEED_OF_LIGHT)
    return float(loss) if np.ndim(loss) == 0 else loss


def _half_chord(r0: float, sin_el: float, cos_el: float, r):
    """sqrt(r^2 - (r0 cos el)^2): distance term of the ray/sphere intersection."""
    r = np.asarray(r, dtype=float)
    return np.sqrt(np.clip(r * r - (r0 * cos_el) ** 2, 0.0, None))


def geometric_length_through_shell(path: SlantPath, shell_lo_km, shell_hi_km):
    """Length [km] of the ray inside the spherical shell [lo, hi] km altitude.

    Uses the difference-of-squares form so that 0.1 m shells at the
    earth's surface keep full relative precision. Broadcasts over shells.
    """
    lo = np.asarray(shell_lo_km, dtype=float)
    hi = np.asarray(shell_hi_km, dtype=float)
    if np.any(lo >= hi):
        raise DomainError("shell bounds must satisfy lo < hi")
    eps = 1e-9
    if np.any(lo < path.ground_altitude_km - eps) or np.any(hi > path.top_altitude_km + eps):
        raise DomainError("shell lies outside the path's altitude span")
    el = math.radians(path.elevation_angle_deg)
    sin_el, cos_el = math.sin(el), math.cos(el)
    r0 = EARTH_RADIUS_KM + path.ground_altitude_km
    r_lo = EARTH_RADIUS_KM + lo
    r_hi = EARTH_RADIUS_KM + hi
    s_lo = _half_chord(r0, sin_el, cos_el, r_lo)
    s_hi = _half_chord(r0, sin_el, cos_el, r_hi)
    length = (hi - lo) * (r_hi + r_lo) / (s_hi + s_lo)
    return float(length) if np.ndim(length) == 0 else length


def chord_length(path: SlantPath) -> float:
    """Closed-form straight-ray length from ground to top altitude [km]."""
    el = math.radians(path.elevation_angle_deg)
    r0 = EARTH_RADIUS_KM + path.ground_altitude_km
    r1 = EARTH_RADIUS_KM + path.top_altitude_km
    return math.sqrt(r1 * r1 - (r0 * math.cos(el)) ** 2) - r0 * math.sin(el)


def integration_edges(path: SlantPath, subdivisions: int = 1) -> np.ndarray:
    """Layer edges between ground and min(top, 100 km).

    The exponential layering grid is shifted to start at the ground
    altitude; a final partial layer closes the gap to the top. Each layer
    is split into ``subdivisions`` equal sublayers.
    """
    if subdivisions < 1:
        raise DomainError("subdivisions must be >= 1")
    top = min(path.top_altitude_km, TOP_OF_ATMOSPHERE_KM)
    if top <= path.ground_altitude_km:
        return np.array([path.ground_altitude_km])
    span = top - path.ground_altitude_km
    edges = layer_boundaries(span)
    if edges[-1] < span:
        edges = np.append(edges, span)
    edges = edges + path.ground_altitude_km
    edges[-1] = top
    if subdivisions > 1:
        frac = np.arange(subdivisions) / subdivisions
        inner = edges[:-1, None] + np.diff(edges)[:, None] * frac
        edges = np.append(inner.ravel(), edges[-1])
    return edges


def slant_gas_attenuation(f_ghz: float, profile: AtmosphereProfile, path: SlantPath,
                          subdivisions: int = 1) -> float:
    """Gaseous attenuation [dB] accumulated along a slant path.

    Sums gamma(mid-layer state) * ray length in layer over the layered
    atmosphere. The atmosphere is vacuum above 100 km.
    """
    check_frequency(f_ghz, F_MIN_GHZ, F_MAX_GHZ, "gaseous attenuation")
    top = min(path.top_altitude_km, TOP_OF_ATMOSPHERE_KM)
    if top <= path.ground_altitude_km:
        return 0.0
    if subdivisions < 1:
        raise DomainError("subdivisions must be >= 1")
    lo, hi, gamma = _layer_gamma(float(f_ghz), profile, path.ground_altitude_km, top, subdivisions)
    return float(np.sum(gamma * geometric_length_through_shell(path, lo, hi)))


@lru_cache(maxsize=256)
def _layer_gamma(f_ghz, profile, ground_km, top_km, subdivisions):
    # gamma per layer does not depend on elevation; sweeps reuse it
    edges = integration_edges(SlantPath(ground_km, top_km, 90.0), subdivisions)
    lo, hi = edges[:-1], edges[1:]
    gamma = gamma_gas(f_ghz, *profile_arrays(profile, 0.5 * (lo + hi)))
    for a in (lo, hi, gamma):
        a.flags.writeable = False
    return lo, hi, gamma


def earth_space_distance_m(h_sat_km: float, elevation_deg: float) -> float:
    """Link distance h / sin(elevation), in metres."""
    return h_sat_km * 1e3 / math.sin(math.radians(elevation_deg))


def total_slant_loss(f_ghz: float, h_sat_km: float, elevation_deg: float,
                     profile: AtmosphereProfile = STANDARD,
                     subdivisions: int = 1) -> PathLossBreakdown:
    """Ground-to-satellite loss without antenna gains: FSPL + gases.

    FSPL uses the flat h/sin(el) distance; the gas integral uses spherical
    shells.
    """
    path = SlantPath(0.0, float(h_sat_km), float(elevation_deg))
    return PathLossBreakdown(
        fspl_db=fspl(f_ghz, earth_space_distance_m(h_sat_km, elevation_deg)),
        gas_db=slant_gas_attenuation(f_ghz, profile, path, subdivisions),
    )


def total_terrestrial_loss(f_ghz: float, distance_m: float, rain_rate_mm_h: float = 0.0,
                           profile: AtmosphereProfile = STANDARD,
                           pol: str = "horizontal") -> PathLossBreakdown:
    """Horizontal homogeneous sea-level path: FSPL + gases + rain."""
    d_km = float(distance_m) / 1e3
    free = fspl(f_ghz, distance_m)
    gas = specific_gas_attenuation(f_ghz, state_at(profile, 0.0)) * d_km
    rain = specific_rain_attenuation(f_ghz, rain_rate_mm_h, pol) * d_km
    return PathLossBreakdown(fspl_db=free, gas_db=gas, rain_db=rain)
