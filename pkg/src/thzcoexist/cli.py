"""Command-line front end. Every subcommand writes CSV to stdout or ``--out``.

Exit status: 0 success, 1 domain error (input outside a model's range),
2 usage error (bad flags, malformed grids or config files).
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import figures
from .atmosphere import AtmosphereProfile, state_at
from .coexistence import (
    AntennaPattern,
    RadiometerSpec,
    interference_threshold,
    max_devices,
    pattern_gain,
    uplink_interference_at_satellite,
)
from .core import DomainError, dbm_from_watts
from .fit import fit_excess_loss, read_records
from .gas import find_absorption_peaks, specific_gas_attenuation
from .geometry import total_terrestrial_loss
from .ntn import NtnLinkConfig, TransmitterSpec, ntn_path_loss, received_power
from .rain import DEFAULT_RAIN_RATES, normalize_polarization, specific_rain_attenuation

MAX_SWEEP_POINTS = 10**7


class UsageError(Exception):
    """Malformed command line, grid or scenario file."""


# ---------------------------------------------------------------- grids

@dataclass(frozen=True)
class SweepSpec:
    """Inclusive sweep start:stop:step (stop is kept if within half a step)."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.start, self.stop, self.step)):
            raise UsageError("sweep bounds must be finite")
        if not self.step > 0:
            raise UsageError(f"sweep step must be > 0, got {self.step}")
        if self.start > self.stop:
            raise UsageError(f"sweep start {self.start} exceeds stop {self.stop}")
        if (self.stop - self.start) / self.step > MAX_SWEEP_POINTS:
            raise UsageError("sweep has more than 1e7 points")

    def values(self) -> np.ndarray:
        n = int(math.floor((self.stop - self.start) / self.step + 0.5))
        return self.start + self.step * np.arange(n + 1)


def parse_grid(text: str) -> list[float]:
    """Comma-separated values, each a number or ``start:stop:step``."""
    out: list[float] = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            raise UsageError(f"empty item in grid {text!r}")
        parts = item.split(":")
        try:
            nums = [float(p) for p in parts]
        except ValueError:
            raise UsageError(f"cannot parse grid item {item!r}") from None
        if len(nums) == 1:
            out.append(nums[0])
        elif len(nums) == 3:
            out.extend(float(v) for v in SweepSpec(*nums).values())
        else:
            raise UsageError(f"grid item {item!r} must be a number or start:stop:step")
        if len(out) > MAX_SWEEP_POINTS:
            raise UsageError("grid has more than 1e7 points")
    return out


# ---------------------------------------------------------------- config

class ScenarioConfig:
    """Flat ``key = value`` scenario file; unknown or repeated keys are errors."""

    def __init__(self, values: dict[str, str], allowed: set[str]):
        unknown = set(values) - allowed
        if unknown:
            raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        self.values = dict(values)

    @classmethod
    def parse(cls, text: str, allowed: set[str], source: str = "<config>") -> "ScenarioConfig":
        values: dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{source}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            if not key or not value:
                raise UsageError(f"{source}:{lineno}: empty key or value")
            if key in values:
                raise UsageError(f"{source}:{lineno}: duplicate key {key!r}")
            values[key] = value
        return cls(values, allowed)

    @classmethod
    def load(cls, path: str | Path, allowed: set[str]) -> "ScenarioConfig":
        text = Path(path).read_text(encoding="utf-8")
        return cls.parse(text, allowed, str(path))

    def get_float(self, key: str, default: float | None = None) -> float | None:
        if key not in self.values:
            return default
        try:
            return float(self.values[key])
        except ValueError:
            raise UsageError(f"config key {key!r}: not a number: {self.values[key]!r}") from None

    def get_str(self, key: str, default: str) -> str:
        return self.values.get(key, default)


COEXIST_KEYS = {
    "freq_ghz": 165.0,
    "sat_alt_km": 400.0,
    "sat_elev_deg": 10.0,
    "tx_power_dbm": float(dbm_from_watts(0.2)),
    "tx_gain_dbi": 15.0,
    "tx_hpbw_deg": 8.0,
    "sidelobe_floor_dbi": -10.0,
    "pointing_elev_deg": None,  # defaults to sat_elev_deg
    "delta_t_kelvin": 0.1,
    "bandwidth_hz": 200e6,
    "margin_db": 7.0,
    "atmosphere": "standard",
    "gas_db_override": None,
    "rx_gain_dbi": 0.0,
}


# ---------------------------------------------------------------- output

def _fmt(column: str, v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if column.endswith(("_db", "_dbm", "_dbi")):
        return f"{v:.2f}"
    if column.startswith("gamma"):
        return f"{v:.6g}"
    return f"{v:.10g}"


def write_csv(stream, header, rows) -> None:
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(c, v) for c, v in zip(header, row)) + "\n")


def write_quantities(stream, rows) -> None:
    """Write ``quantity,value,unit`` rows; values formatted by unit."""
    stream.write("quantity,value,unit\n")
    for name, value, unit in rows:
        col = name if unit not in ("dB", "dBm", "dBi") else "x_db"
        stream.write(f"{name},{_fmt(col, value)},{unit}\n")


def print_table(stream, title: str, rows) -> None:
    stream.write(f"{title}\n")
    width = max(len(r[0]) for r in rows)
    for name, value, unit in rows:
        if isinstance(value, float) and unit in ("dB", "dBm", "dBi"):
            shown = f"{value:.1f}"
        elif isinstance(value, float):
            shown = f"{value:.4g}"
        else:
            shown = str(value)
        stream.write(f"  {name:<{width}}  {shown:>12} {unit}\n")


# ---------------------------------------------------------------- commands

def _profile(args) -> AtmosphereProfile:
    return AtmosphereProfile.named(args.atmosphere, args.surface_vapor)


def cmd_gas(args, out):
    freqs = np.array(parse_grid(args.freq_ghz))
    gamma = np.atleast_1d(specific_gas_attenuation(freqs, state_at(_profile(args), args.altitude_km)))
    write_csv(out, ("frequency_ghz", "gamma_db_per_km"), zip(freqs, gamma))


def cmd_peaks(args, out):
    state = state_at(_profile(args), args.altitude_km)
    peaks = find_absorption_peaks(args.f_lo, args.f_hi, state, args.step)
    gamma = [specific_gas_attenuation(f, state) for f in peaks]
    write_csv(out, ("peak_frequency_ghz", "gamma_db_per_km"), zip(peaks, gamma))


def cmd_rain(args, out):
    freqs = np.array(parse_grid(args.freq_ghz))
    rates = parse_grid(args.rate_mm_h)
    pol = normalize_polarization(args.pol)
    rows = []
    for r in rates:
        gamma = np.atleast_1d(specific_rain_attenuation(freqs, r, pol))
        rows += [(f, r, g) for f, g in zip(freqs, gamma)]
    write_csv(out, ("frequency_ghz", "rate_mm_h", "gamma_db_per_km"), rows)


def cmd_slant(args, out):
    header, rows = figures.figure4(
        freqs=parse_grid(args.freq_ghz),
        altitudes=parse_grid(args.sat_alt_km),
        elevations=parse_grid(args.elev_deg),
        profile=_profile(args),
    )
    write_csv(out, header, rows)


def cmd_terrestrial(args, out):
    profile = _profile(args)
    header = ("frequency_ghz", "distance_m", "rate_mm_h") + figures.BREAKDOWN_COLUMNS
    rows = []
    for f in parse_grid(args.freq_ghz):
        for r in parse_grid(args.rate_mm_h):
            for d in parse_grid(args.dist_m):
                b = total_terrestrial_loss(f, d, r, profile, args.pol)
                rows.append((f, d, r) + figures._breakdown_values(b))
    write_csv(out, header, rows)


def _breakdown_rows(pl):
    return [(k, v, "dB") for k, v in pl.as_dict().items()]


def cmd_ntn_budget(args, out, err):
    cfg = NtnLinkConfig(
        freq_ghz=args.freq_ghz,
        h_sat_km=args.sat_alt_km,
        elevation_deg=args.elev_deg,
        shadow_fading_db=args.shadow_fading_db,
        clutter_loss_db=0.0 if args.los else args.clutter_loss_db,
        scintillation_db=args.scintillation_db,
        profile=_profile(args),
        gas_db_override=args.gas_db,
    )
    if args.shadow_sigma_db is not None:
        if args.seed is None:
            raise UsageError("--shadow-sigma-db needs an explicit --seed")
        cfg = cfg.with_shadow_fading(args.shadow_sigma_db, args.seed)
    pl = ntn_path_loss(cfg)
    tx = TransmitterSpec(args.tx_power_dbm, args.tx_gain_dbi)
    prx = received_power(tx, pl, args.rx_gain_dbi)
    rows = [
        ("frequency_ghz", cfg.freq_ghz, "GHz"),
        ("sat_alt_km", cfg.h_sat_km, "km"),
        ("elevation_deg", cfg.elevation_deg, "deg"),
        ("slant_distance_km", cfg.h_sat_km / math.sin(math.radians(cfg.elevation_deg)), "km"),
        *_breakdown_rows(pl),
        ("tx_power_dbm", tx.tx_power_dbm, "dBm"),
        ("tx_gain_dbi", tx.antenna_gain_dbi, "dBi"),
        ("rx_gain_dbi", args.rx_gain_dbi, "dBi"),
        ("received_power_dbm", prx.value, "dBm"),
    ]
    print_table(err, "NTN link budget", rows)
    write_quantities(out, rows)


def coexist_report(cfg: ScenarioConfig):
    """Budget rows for a coexistence scenario file."""
    g = lambda k: cfg.get_float(k, COEXIST_KEYS[k])  # noqa: E731
    sat_elev = g("sat_elev_deg")
    pointing = cfg.get_float("pointing_elev_deg", sat_elev)
    link = NtnLinkConfig(
        freq_ghz=g("freq_ghz"),
        h_sat_km=g("sat_alt_km"),
        elevation_deg=sat_elev,
        profile=AtmosphereProfile.named(cfg.get_str("atmosphere", "standard")),
        gas_db_override=g("gas_db_override"),
    )
    pattern = AntennaPattern(g("tx_gain_dbi"), g("tx_hpbw_deg"), g("sidelobe_floor_dbi"))
    radiometer = RadiometerSpec(g("delta_t_kelvin"), g("bandwidth_hz"), g("margin_db"))
    tx_power = g("tx_power_dbm")
    rx_gain = g("rx_gain_dbi")

    pl = ntn_path_loss(link)
    offset = abs(sat_elev - pointing)
    gain = pattern_gain(pattern, offset)
    single = uplink_interference_at_satellite(tx_power, pattern, pointing, sat_elev, link, rx_gain)
    threshold = interference_threshold(radiometer)
    budget = max_devices(single, threshold)
    return [
        ("frequency_ghz", link.freq_ghz, "GHz"),
        ("sat_alt_km", link.h_sat_km, "km"),
        ("sat_elev_deg", sat_elev, "deg"),
        ("pointing_elev_deg", pointing, "deg"),
        ("pointing_offset_deg", offset, "deg"),
        ("tx_power_dbm", tx_power, "dBm"),
        ("tx_gain_toward_satellite_dbi", gain, "dBi"),
        ("rx_gain_dbi", rx_gain, "dBi"),
        *_breakdown_rows(pl),
        ("single_device_interference_dbm", single.value, "dBm"),
        ("threshold_dbm", threshold.value, "dBm"),
        ("single_device_margin_db", threshold.value - single.value, "dB"),
        ("max_devices", budget.count, "devices"),
        ("max_devices_floor", budget.whole, "devices"),
        ("single_device_exceeds", budget.exceeded, "flag"),
    ]


def cmd_coexist(args, out, err):
    cfg = ScenarioConfig.load(args.config, set(COEXIST_KEYS))
    rows = coexist_report(cfg)
    print_table(err, f"Coexistence budget ({args.config})", rows)
    write_quantities(out, rows)


def cmd_fit(args, out, err):
    result = fit_excess_loss(read_records(args.input))
    print_table(err, f"Excess loss over free space ({args.input})", [
        ("mean_excess_db", result.mean_excess_db, "dB"),
        ("std_dev_db", result.std_dev_db, "dB"),
        ("n_records", result.n_records, ""),
    ])
    write_csv(out, ("mean_excess_db", "std_dev_db", "n_records"),
              [(result.mean_excess_db, result.std_dev_db, result.n_records)])


def cmd_figure(args, out):
    kwargs = {}
    if args.freq_ghz is not None:
        if args.number not in (2, 3):
            raise UsageError("--freq-ghz only applies to figures 2 and 3")
        kwargs["freqs"] = parse_grid(args.freq_ghz)
    header, rows = figures.figure(args.number, **kwargs)
    write_csv(out, header, rows)


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_atmosphere(p, altitude=False):
    p.add_argument("--atmosphere", choices=("standard", "dry"), default="standard")
    p.add_argument("--surface-vapor", type=float, default=None, metavar="G_M3",
                   help="surface water-vapour density overriding the preset")
    if altitude:
        p.add_argument("--altitude-km", type=float, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thzcoexist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gas", help="gaseous specific attenuation")
    p.add_argument("--freq-ghz", required=True, help="f, f1:f2:step or a comma list")
    _add_atmosphere(p, altitude=True)

    p = sub.add_parser("peaks", help="local maxima of gaseous attenuation")
    p.add_argument("--f-lo", type=float, default=100.0)
    p.add_argument("--f-hi", type=float, default=1000.0)
    p.add_argument("--step", type=float, default=0.5)
    _add_atmosphere(p, altitude=True)

    p = sub.add_parser("rain", help="rain specific attenuation")
    p.add_argument("--freq-ghz", required=True)
    p.add_argument("--rate-mm-h", default=",".join(f"{r:g}" for r in DEFAULT_RAIN_RATES))
    p.add_argument("--pol", choices=("h", "v", "c"), default="h")

    p = sub.add_parser("slant", help="ground-to-satellite loss grid")
    p.add_argument("--freq-ghz", required=True)
    p.add_argument("--sat-alt-km", required=True)
    p.add_argument("--elev-deg", required=True)
    _add_atmosphere(p)

    p = sub.add_parser("terrestrial", help="horizontal sea-level path loss grid")
    p.add_argument("--freq-ghz", default="140")
    p.add_argument("--dist-m", required=True)
    p.add_argument("--rate-mm-h", default="0")
    p.add_argument("--pol", choices=("h", "v", "c"), default="h")
    _add_atmosphere(p)

    p = sub.add_parser("ntn-budget", help="itemised satellite uplink budget")
    p.add_argument("--freq-ghz", type=float, required=True)
    p.add_argument("--sat-alt-km", type=float, required=True)
    p.add_argument("--elev-deg", type=float, required=True)
    p.add_argument("--shadow-fading-db", type=float, default=0.0)
    p.add_argument("--shadow-sigma-db", type=float, default=None,
                   help="draw SF from N(0, sigma) instead; needs --seed")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--clutter-loss-db", type=float, default=0.0)
    p.add_argument("--los", action="store_true", help="line of sight: clutter loss 0")
    p.add_argument("--scintillation-db", type=float, default=0.0)
    p.add_argument("--gas-db", type=float, default=None, help="fix gas attenuation instead of computing it")
    p.add_argument("--tx-power-dbm", type=float, default=float(dbm_from_watts(0.2)))
    p.add_argument("--tx-gain-dbi", type=float, default=15.0)
    p.add_argument("--rx-gain-dbi", type=float, default=0.0)
    _add_atmosphere(p)

    p = sub.add_parser("coexist", help="radiometer interference budget from a scenario file")
    p.add_argument("--config", required=True)

    p = sub.add_parser("fit", help="fit mean excess loss over free space")
    p.add_argument("--input", required=True)

    p = sub.add_parser("figure", help="regenerate a figure dataset")
    p.add_argument("number", type=int)
    p.add_argument("--freq-ghz", default=None)

    for action in sub.choices.values():
        action.add_argument("--out", default=None, help="write CSV here instead of stdout")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "figure" and args.number not in figures.AVAILABLE:
            raise UsageError(
                f"no dataset for figure {args.number}; choose from "
                f"{', '.join(map(str, figures.AVAILABLE))}"
            )
        out = open(args.out, "w", encoding="utf-8", newline="\n") if args.out else stdout
        try:
            handler = {
                "gas": cmd_gas, "peaks": cmd_peaks, "rain": cmd_rain, "slant": cmd_slant,
                "terrestrial": cmd_terrestrial, "figure": cmd_figure,
            }.get(args.command)
            if handler is not None:
                handler(args, out)
            else:
                {"ntn-budget": cmd_ntn_budget, "coexist": cmd_coexist,
                 "fit": cmd_fit}[args.command](args, out, stderr)
        finally:
            if args.out:
                out.close()
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 2
    except DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
