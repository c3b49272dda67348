"""Datasets behind the absorption, rain, slant-path and terrestrial loss plots.

Each builder returns ``(header, rows)``; rows hold plain floats/strings and
are ordered by grid index so the CSV is reproducible byte for byte.
"""
from __future__ import annotations

import numpy as np

from .atmosphere import DRY, STANDARD, profile_arrays
from .gas import frequency_grid, gamma_gas
from .geometry import PathLossBreakdown, total_slant_loss, total_terrestrial_loss
from .rain import DEFAULT_RAIN_RATES, specific_rain_attenuation

FIG4_FREQS_GHZ = (165.0, 183.0, 325.0, 425.0)
FIG4_ALTITUDES_KM = (400.0, 8000.0, 36000.0)
FIG4_ELEVATIONS_DEG = (0.5,) + tuple(float(x) for x in range(1, 91))
FIG6_FREQ_GHZ = 140.0
FIG6_RATES_MM_H = (0.0,) + DEFAULT_RAIN_RATES
FIG6_DISTANCES_M = tuple(float(10 ** (k / 10)) for k in range(0, 51))

BREAKDOWN_COLUMNS = ("fspl_db", "gas_db", "rain_db", "clutter_db", "shadow_db",
                     "scintillation_db", "total_db")

AVAILABLE = (2, 3, 4, 6)


def default_spectrum() -> np.ndarray:
    return frequency_grid(1.0, 1000.0, 1.0)


def figure2(freqs=None):
    freqs = default_spectrum() if freqs is None else np.asarray(freqs, dtype=float)
    header = ("frequency_ghz", "gamma_db_per_km", "altitude_km", "condition")
    rows = []
    for z in (0.0, 10.0):
        for name, profile in (("standard", STANDARD), ("dry", DRY)):
            p, t, rho = profile_arrays(profile, z)
            gamma = gamma_gas(freqs, p, t, rho)
            rows += [(f, g, z, name) for f, g in zip(freqs, gamma)]
    return header, rows


def figure3(freqs=None, rates=DEFAULT_RAIN_RATES, pol="horizontal"):
    freqs = default_spectrum() if freqs is None else np.asarray(freqs, dtype=float)
    header = ("frequency_ghz", "rate_mm_h", "gamma_db_per_km")
    rows = []
    for r in rates:
        gamma = specific_rain_attenuation(freqs, r, pol)
        rows += [(f, float(r), g) for f, g in zip(freqs, gamma)]
    return header, rows


def _breakdown_values(b: PathLossBreakdown):
    d = b.as_dict()
    return tuple(d[c] for c in BREAKDOWN_COLUMNS)


def figure4(freqs=FIG4_FREQS_GHZ, altitudes=FIG4_ALTITUDES_KM, elevations=FIG4_ELEVATIONS_DEG,
            profile=STANDARD):
    header = ("frequency_ghz", "sat_alt_km", "elevation_deg") + BREAKDOWN_COLUMNS
    rows = []
    for f in freqs:
        for h in altitudes:
            for el in elevations:
                b = total_slant_loss(float(f), float(h), float(el), profile)
                rows.append((float(f), float(h), float(el)) + _breakdown_values(b))
    return header, rows


def figure6(distances=FIG6_DISTANCES_M, rates=FIG6_RATES_MM_H, f_ghz=FIG6_FREQ_GHZ):
    header = ("distance_m", "fspl_db", "gas_db", "rain_db", "total_db", "rate_mm_h")
    rows = []
    for r in rates:
        for d in distances:
            b = total_terrestrial_loss(f_ghz, d, r)
            rows.append((float(d), b.fspl_db, b.gas_db, b.rain_db, b.total_db, float(r)))
    return header, rows


def figure(n: int, **kwargs):
    builders = {2: figure2, 3: figure3, 4: figure4, 6: figure6}
    if n not in builders:
        raise KeyError(n)
    return builders[n](**kwargs)
