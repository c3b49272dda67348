"""Acceptance gate. Every check runs at its pinned tolerance and reports one line."""
import io
import math

import numpy as np
import pytest

from thzcoexist import figures
from thzcoexist.atmosphere import STANDARD, profile_arrays, state_at
from thzcoexist.cli import run
from thzcoexist.coexistence import (
    TEMPEST_D,
    AntennaPattern,
    interference_threshold,
    max_devices,
    uplink_interference_at_satellite,
)
from thzcoexist.core import EARTH_RADIUS_KM
from thzcoexist.fit import MeasurementRecord, fit_excess_loss
from thzcoexist.gas import find_absorption_peaks, gamma_gas, specific_gas_attenuation
from thzcoexist.geometry import (
    SlantPath,
    fspl,
    slant_gas_attenuation,
    total_slant_loss,
    total_terrestrial_loss,
)
from thzcoexist.ntn import NtnLinkConfig, TransmitterSpec, ntn_path_loss, received_power
from thzcoexist.rain import rain_coefficients, specific_rain_attenuation

F, H, EL = 165.0, 400.0, 10.0
TX = TransmitterSpec(10 * math.log10(200.0), 15.0)  # 200 mW
HORN = AntennaPattern(15.0, 8.0, -10.0)
SEA = state_at(STANDARD, 0.0)


# ---------------------------------------------------------------- 1

def test_c1_fspl(verdict):
    v = total_slant_loss(F, H, EL).fspl_db
    verdict("1 FSPL 165 GHz / 400 km / 10 deg", abs(v - 204.0) <= 0.1, f"{v:.3f} dB (204.0 +/- 0.1)")


def test_c1_slant_gas(verdict):
    v = total_slant_loss(F, H, EL).gas_db
    verdict("1 slant gas attenuation", abs(v - 35.2) <= 3.0, f"{v:.2f} dB (35.2 +/- 3)")


def test_c1_received_power_modelled(verdict):
    v = received_power(TX, ntn_path_loss(NtnLinkConfig(F, H, EL))).value
    verdict("1 received power, modelled gas", abs(v + 201.2) <= 3.1, f"{v:.2f} dBm (-201.2 +/- 3.1)")


def test_c1_received_power_pinned(verdict):
    v = received_power(TX, ntn_path_loss(NtnLinkConfig(F, H, EL, gas_db_override=35.2))).value
    verdict("1 received power, gas pinned to 35.2 dB", abs(v + 201.2) <= 0.1, f"{v:.2f} dBm (-201.2 +/- 0.1)")


def test_c1_threshold(verdict):
    v = interference_threshold(TEMPEST_D).value
    verdict("1 radiometer threshold", abs(v + 133.0) <= 0.5, f"{v:.2f} dBm (-133.0 +/- 0.5)")


def test_c1_max_devices(verdict):
    link = NtnLinkConfig(F, H, EL, gas_db_override=35.2)
    single = uplink_interference_at_satellite(TX.tx_power_dbm, HORN, EL, EL, link)
    n = max_devices(single, interference_threshold(TEMPEST_D)).count
    verdict("1 max devices (pinned gas)", abs(n / 6.6e6 - 1) <= 0.12, f"{n:.4g} (6.6e6 +/- 12%)")


# ---------------------------------------------------------------- 2

def test_c2_300ghz_sea_level(verdict):
    v = specific_gas_attenuation(300.0, SEA)
    verdict("2 gamma 300 GHz sea level", abs(v - 6.0) <= 2.0, f"{v:.3f} dB/km (6 +/- 2)")


def test_c2_300ghz_10km(verdict):
    v = specific_gas_attenuation(300.0, state_at(STANDARD, 10.0))
    verdict("2 gamma 300 GHz z=10 km", abs(v - 1.0) <= 0.7, f"{v:.4f} dB/km (1 +/- 0.7)")


def test_c2_800_900_minimum(verdict):
    v = float(np.min(specific_gas_attenuation(np.arange(800.0, 900.01, 0.1), SEA)))
    verdict("2 min gamma 800-900 GHz sea level", 50 <= v <= 200, f"{v:.1f} dB/km ([50, 200])")


# ---------------------------------------------------------------- 3

PEAKS = find_absorption_peaks(100.0, 1000.0, SEA, 0.5)


@pytest.mark.parametrize("target", [183, 325, 380, 450, 550, 760])
def test_c3_peak(verdict, target):
    near = min(PEAKS, key=lambda p: abs(p - target))
    verdict(f"3 absorption peak near {target} GHz", abs(near - target) <= 3.0,
            f"nearest maximum {near:.1f} GHz (+/- 3)")


# ---------------------------------------------------------------- 4

@pytest.mark.parametrize("rate", [4.0, 25.0, 50.0])
def test_c4_flat_above_100ghz(verdict, rate):
    g = specific_rain_attenuation(np.arange(100.0, 300.01, 1.0), rate)
    spread = (g.max() - g.min()) / g.min()
    verdict(f"4 rain flatness 100-300 GHz at {rate:g} mm/h", spread < 0.25, f"{100 * spread:.1f} % (< 25 %)")


def test_c4_increasing_in_rate(verdict):
    f = np.arange(1.0, 1000.01, 1.0)
    rates = (0.25, 1, 4, 25, 50, 100, 150)
    g = np.array([specific_rain_attenuation(f, r) for r in rates])
    ok = bool(np.all(np.diff(g, axis=0) > 0))
    verdict("4 rain strictly increasing in rate", ok, f"{len(rates)} rates x {f.size} frequencies")


@pytest.mark.parametrize("f, kh, ah, kv, av", [
    (10.0, 0.01217, 1.2571, 0.01129, 1.2156),
    (20.0, 0.09164, 1.0568, 0.09611, 0.9847),
    (30.0, 0.2403, 0.9485, 0.2291, 0.9129),
])
def test_c4_coefficient_table(verdict, f, kh, ah, kv, av):
    h, v = rain_coefficients(f, "h"), rain_coefficients(f, "v")
    errs = [abs(a / b - 1) for a, b in ((h.k_coeff, kh), (h.alpha_exp, ah), (v.k_coeff, kv), (v.alpha_exp, av))]
    verdict(f"4 rain coefficients at {f:g} GHz", max(errs) < 0.01, f"worst {100 * max(errs):.3f} % (< 1 %)")


# ---------------------------------------------------------------- 5

def test_c5_low_elevation_costs_more(verdict):
    bad = [(f, h) for f in figures.FIG4_FREQS_GHZ for h in figures.FIG4_ALTITUDES_KM
           if not total_slant_loss(f, h, 10.0).total_db > total_slant_loss(f, h, 90.0).total_db]
    verdict("5 total loss 10 deg > 90 deg on default grid", not bad, f"violations {bad}")


def test_c5_troposphere_wall(verdict):
    ratios = [total_slant_loss(f, h, 10.0).gas_db / total_slant_loss(f, h, 90.0).gas_db
              for f in figures.FIG4_FREQS_GHZ if f >= 165 for h in figures.FIG4_ALTITUDES_KM]
    verdict("5 gas 10 deg > 5x gas 90 deg", min(ratios) > 5, f"smallest ratio {min(ratios):.3f} (> 5)")


# ---------------------------------------------------------------- 6

def test_c6_clear_air(verdict):
    b = total_terrestrial_loss(140.0, 1000.0, 0.0)
    excess = b.total_db - b.fspl_db
    verdict("6 140 GHz 1 km clear-air excess", excess <= 2.0, f"{excess:.3f} dB (<= 2)")


def test_c6_heavy_rain(verdict):
    d = total_terrestrial_loss(140.0, 1000.0, 100.0).total_db - total_terrestrial_loss(140.0, 1000.0, 0.0).total_db
    verdict("6 140 GHz 1 km 100 mm/h over clear air", d > 10.0, f"{d:.2f} dB (> 10)")


# ---------------------------------------------------------------- 7

def test_c7_layer_doubling(verdict):
    path = SlantPath(0.0, H, EL)
    a = slant_gas_attenuation(F, STANDARD, path)
    b = slant_gas_attenuation(F, STANDARD, path, subdivisions=2)
    verdict("7 layer doubling", abs(a - b) < 0.1, f"|{a:.5f} - {b:.5f}| = {abs(a - b):.2e} dB (< 0.1)")


# ---------------------------------------------------------------- 8

def brute_force_slant_gas(f_ghz, elevation_deg):
    """1 m layers below 2 km, 100 m above, up to 100 km; straight ray, law of cosines."""
    edges = np.concatenate([np.arange(0.0, 2.0, 0.001), np.arange(2.0, 100.0 + 1e-9, 0.1)])
    r = EARTH_RADIUS_KM + edges
    c = math.cos(math.radians(elevation_deg))
    s = np.sqrt(r**2 - (EARTH_RADIUS_KM * c) ** 2) - EARTH_RADIUS_KM * math.sin(math.radians(elevation_deg))
    mid = 0.5 * (edges[:-1] + edges[1:])
    return float(np.sum(gamma_gas(f_ghz, *profile_arrays(STANDARD, mid)) * np.diff(s)))


def test_c8_brute_force_quadrature(verdict):
    a = slant_gas_attenuation(F, STANDARD, SlantPath(0.0, H, EL))
    b = brute_force_slant_gas(F, EL)
    verdict("8 slant gas vs brute-force quadrature", abs(a - b) < 0.2, f"{a:.4f} vs {b:.4f} dB (< 0.2)")


# ---------------------------------------------------------------- 9

def _corpus(offsets, f=142.0):
    d = np.geomspace(5.0, 200.0, len(offsets))
    return [MeasurementRecord(di, 10.0, 20.0, 20.0, 50.0 - fspl(f, di) - o, f) for di, o in zip(d, offsets)]


def test_c9_noiseless(verdict):
    fit = fit_excess_loss(_corpus(np.full(100, 7.1)))
    ok = abs(fit.mean_excess_db - 7.1) < 1e-9 and fit.std_dev_db < 1e-9
    verdict("9 noiseless fit", ok, f"{fit.mean_excess_db:.12f} dB, std {fit.std_dev_db:.1e}")


def test_c9_noisy(verdict):
    noise = np.random.default_rng(20240601).normal(0.0, 3.7, 100)
    fit = fit_excess_loss(_corpus(7.1 + noise))
    ok = abs(fit.mean_excess_db - 7.1) <= 0.5 and abs(fit.std_dev_db - 3.7) <= 0.5
    verdict("9 noisy fit n=100", ok, f"mean {fit.mean_excess_db:.3f} (7.1 +/- 0.5), std {fit.std_dev_db:.3f} (3.7 +/- 0.5)")


# ---------------------------------------------------------------- 10

@pytest.mark.parametrize("n", ["2", "3", "4", "6"])
def test_c10_determinism(verdict, n):
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        assert run(["figure", n], buf, io.StringIO()) == 0
        outs.append(buf.getvalue().encode())
    verdict(f"10 figure {n} byte-identical", outs[0] == outs[1], f"{len(outs[0])} bytes")
