"""Specific rain attenuation gamma_R = k * R**alpha (ITU-R P.838-3).

k and alpha come from the recommendation's log-Gaussian regressions in
log10(f). Circular polarization (and any horizontal path) combines the H and
V coefficients as k = (kH + kV)/2, alpha = (kH*aH + kV*aV) / (2k).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, check_frequency

F_MIN_GHZ = 1.0
F_MAX_GHZ = 1000.0

DEFAULT_RAIN_RATES = (0.25, 1.0, 4.0, 25.0, 50.0, 100.0, 150.0)

# (a_j, b_j, c_j) rows followed by (m, c) for each regression
_K_H = ([(-5.33980, -0.10008, 1.13098), (-0.35351, 1.26970, 0.45400),
         (-0.23789, 0.86036, 0.15354), (-0.94158, 0.64552, 0.16817)], (-0.18961, 0.71147))
_K_V = ([(-3.80595, 0.56934, 0.81061), (-3.44965, -0.22911, 0.51059),
         (-0.39902, 0.73042, 0.11899), (0.50167, 1.07319, 0.27195)], (-0.16398, 0.63297))
_ALPHA_H = ([(-0.14318, 1.82442, -0.55187), (0.29591, 0.77564, 0.19822),
             (0.32177, 0.63773, 0.13164), (-5.37610, -0.96230, 1.47828),
             (16.1721, -3.29980, 3.43990)], (0.67849, -1.95537))
_ALPHA_V = ([(-0.07771, 2.33840, -0.76284), (0.56727, 0.95545, 0.54039),
             (-0.20238, 1.14520, 0.26809), (-48.2991, 0.791669, 0.116226),
             (48.5833, 0.791459, 0.116479)], (-0.053739, 0.83433))

_POLARIZATIONS = {"h": "horizontal", "horizontal": "horizontal",
                  "v": "vertical", "vertical": "vertical",
                  "c": "circular", "circular": "circular"}


def _regression(table, f):
    terms, (m, c) = table
    x = np.log10(f)
    return sum(a * np.exp(-(((x - b) / cc) ** 2)) for a, b, cc in terms) + m * x + c


def normalize_polarization(pol: str) -> str:
    try:
        return _POLARIZATIONS[str(pol).lower()]
    except KeyError:
        raise DomainError(f"unknown polarization {pol!r}; use h, v or c") from None


@dataclass(frozen=True)
class RainCoefficients:
    k_coeff: float
    alpha_exp: float
    polarization: str


def _coefficients(f, pol):
    kh = 10.0 ** _regression(_K_H, f)
    kv = 10.0 ** _regression(_K_V, f)
    ah = _regression(_ALPHA_H, f)
    av = _regression(_ALPHA_V, f)
    if pol == "horizontal":
        return kh, ah
    if pol == "vertical":
        return kv, av
    k = (kh + kv) / 2.0
    return k, (kh * ah + kv * av) / (2.0 * k)


def rain_coefficients(f_ghz: float, pol: str = "horizontal") -> RainCoefficients:
    """Power-law coefficients k and alpha at a single frequency."""
    check_frequency(f_ghz, F_MIN_GHZ, F_MAX_GHZ, "rain attenuation")
    pol = normalize_polarization(pol)
    k, a = _coefficients(float(f_ghz), pol)
    return RainCoefficients(float(k), float(a), pol)


def specific_rain_attenuation(f_ghz, rain_rate_mm_h, pol: str = "horizontal"):
    """Rain specific attenuation in dB/km; broadcasts over f and R."""
    f = check_frequency(f_ghz, F_MIN_GHZ, F_MAX_GHZ, "rain attenuation")
    r = np.asarray(rain_rate_mm_h, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r < 0):
        raise DomainError(f"rain rate must be >= 0 mm/h, got {rain_rate_mm_h}")
    k, a = _coefficients(f, normalize_polarization(pol))
    g = k * r**a
    if np.ndim(g) == 0:
        return float(g)
    return g
