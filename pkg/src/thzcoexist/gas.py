"""Line-by-line gaseous specific attenuation, ITU-R P.676-12 Annex 1 (1-1000 GHz).

The oxygen and water-vapour line catalogues ship as CSV files in ``data/``.
All functions broadcast over numpy arrays, so a whole spectrum or a whole
stack of atmospheric layers is evaluated in one call.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

import numpy as np

from .atmosphere import AtmosphericState
from .core import DomainError, check_frequency

F_MIN_GHZ = 1.0
F_MAX_GHZ = 1000.0


@lru_cache(maxsize=None)
def _load_table(name: str) -> np.ndarray:
    with resources.files("thzcoexist.data").joinpath(name).open("r", encoding="utf-8") as fh:
        table = np.loadtxt(fh, delimiter=",", comments="#", skiprows=4, ndmin=2)
    table.setflags(write=False)
    return table


def oxygen_lines() -> np.ndarray:
    """Oxygen line table, columns f0, a1..a6 (read-only array)."""
    return _load_table("p676_oxygen.csv")


def water_vapour_lines() -> np.ndarray:
    """Water-vapour line table, columns f0, b1..b6 (read-only array)."""
    return _load_table("p676_water_vapour.csv")


def _line_shape(f, f0, width, delta):
    """Van Vleck-Weisskopf style line shape with interference correction."""
    return (f / f0) * (
        (width - delta * (f0 - f)) / ((f0 - f) ** 2 + width**2)
        + (width - delta * (f0 + f)) / ((f0 + f) ** 2 + width**2)
    )


def gas_components(f_ghz, pressure, temperature, water_vapor_density):
    """Imaginary refractivity terms (oxygen lines, dry continuum, water vapour).

    ``pressure`` is total pressure in hPa. Inputs broadcast against each
    other; a trailing line axis is added internally. Returns three arrays
    with the broadcast shape.
    """
    f = np.asarray(f_ghz, dtype=float)[..., None]
    total_p = np.asarray(pressure, dtype=float)[..., None]
    temp = np.asarray(temperature, dtype=float)[..., None]
    rho = np.asarray(water_vapor_density, dtype=float)[..., None]

    theta = 300.0 / temp
    e = rho * temp / 216.7
    p = np.clip(total_p - e, 0.0, None)

    f0, a1, a2, a3, a4, a5, a6 = oxygen_lines().T
    strength = a1 * 1e-7 * p * theta**3 * np.exp(a2 * (1.0 - theta))
    width = a3 * 1e-4 * (p * theta ** (0.8 - a4) + 1.1 * e * theta)
    width = np.sqrt(width**2 + 2.25e-6)  # Zeeman splitting
    delta = (a5 + a6 * theta) * 1e-4 * (p + e) * theta**0.8
    n_oxygen = np.sum(strength * _line_shape(f, f0, width, delta), axis=-1)

    # Debye spectrum of dry air plus pressure-induced nitrogen absorption
    fs = f[..., 0]
    th = theta[..., 0]
    pd = p[..., 0]
    d = 5.6e-4 * (pd + e[..., 0]) * th**0.8
    n_dry = fs * pd * th**2 * (
        6.14e-5 * d / (d**2 + fs**2)
        + 1.4e-12 * pd * th**1.5 / (1.0 + 1.9e-5 * fs**1.5)
    )

    f0, b1, b2, b3, b4, b5, b6 = water_vapour_lines().T
    strength = b1 * 1e-1 * e * theta**3.5 * np.exp(b2 * (1.0 - theta))
    width = b3 * 1e-4 * (p * theta**b4 + b5 * e * theta**b6)
    width = 0.535 * width + np.sqrt(0.217 * width**2 + 2.1316e-12 * f0**2 / theta)  # Doppler
    n_water = np.sum(strength * _line_shape(f, f0, width, 0.0), axis=-1)

    return n_oxygen, n_dry, n_water


def gamma_gas(f_ghz, pressure, temperature, water_vapor_density):
    """Specific attenuation [dB/km] from raw arrays; no range checks."""
    n_ox, n_dry, n_w = gas_components(f_ghz, pressure, temperature, water_vapor_density)
    return 0.1820 * np.asarray(f_ghz, dtype=float) * (n_ox + n_dry + n_w)


def specific_gas_attenuation(f_ghz, state: AtmosphericState):
    """Gaseous specific attenuation in dB/km at ``state``.

    ``f_ghz`` may be a scalar (returns float) or an array (returns ndarray).
    Valid from 1 to 1000 GHz.
    """
    f = check_frequency(f_ghz, F_MIN_GHZ, F_MAX_GHZ, "gaseous attenuation")
    if not isinstance(state, AtmosphericState):
        raise DomainError("state must be an AtmosphericState")
    g = gamma_gas(f, state.pressure, state.temperature, state.water_vapor_density)
    return float(g) if np.ndim(f_ghz) == 0 else g


def frequency_grid(f_lo: float, f_hi: float, step: float) -> np.ndarray:
    """Inclusive grid f_lo, f_lo+step, ... <= f_hi (+ half-step slack)."""
    if not step > 0:
        raise DomainError(f"grid step must be > 0, got {step}")
    if not f_lo < f_hi:
        raise DomainError(f"empty frequency range [{f_lo}, {f_hi}]")
    n = int(np.floor((f_hi - f_lo) / step + 0.5))
    return f_lo + step * np.arange(n + 1)


def find_absorption_peaks(f_lo: float, f_hi: float, state: AtmosphericState,
                          grid_step: float = 0.5) -> list[float]:
    """Grid points where gamma is a strict local maximum, ascending."""
    check_frequency([f_lo, f_hi], F_MIN_GHZ, F_MAX_GHZ, "gaseous attenuation")
    grid = frequency_grid(f_lo, f_hi, grid_step)
    g = specific_gas_attenuation(grid, state)
    inner = (g[1:-1] > g[:-2]) & (g[1:-1] > g[2:])
    return [float(x) for x in grid[1:-1][inner]]
