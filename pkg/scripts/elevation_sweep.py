"""Single-device interference and device budget versus satellite elevation."""
import argparse

from thzcoexist import (
    TEMPEST_D,
    AntennaPattern,
    NtnLinkConfig,
    interference_threshold,
    max_devices,
    ntn_path_loss,
    uplink_interference_at_satellite,
)

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--freq-ghz", type=float, default=165.0)
parser.add_argument("--sat-alt-km", type=float, default=400.0)
parser.add_argument("--tx-power-dbm", type=float, default=23.0103)
parser.add_argument("--pointing-elev-deg", type=float, default=None,
                    help="fixed terminal pointing; default tracks the satellite")
args = parser.parse_args()

horn = AntennaPattern(15.0, 8.0, -10.0)
threshold = interference_threshold(TEMPEST_D)
print("sat_elev_deg,gas_db,interference_dbm,max_devices")
for el in (5, 10, 15, 20, 30, 45, 60, 75, 90):
    link = NtnLinkConfig(args.freq_ghz, args.sat_alt_km, float(el))
    pointing = float(el) if args.pointing_elev_deg is None else args.pointing_elev_deg
    i = uplink_interference_at_satellite(args.tx_power_dbm, horn, pointing, float(el), link)
    gas = ntn_path_loss(link).gas_db
    print(f"{el},{gas:.2f},{i.value:.2f},{max_devices(i, threshold).count:.4g}")
