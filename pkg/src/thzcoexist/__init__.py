"""Propagation and spectrum-coexistence calculations above 100 GHz."""
from .atmosphere import DRY, STANDARD, AtmosphereProfile, AtmosphericState, layer_boundaries, state_at
from .coexistence import (
    TEMPEST_D,
    AntennaPattern,
    DeviceBudget,
    RadiometerSpec,
    aggregate_interference,
    interference_threshold,
    max_devices,
    pattern_gain,
    uplink_interference_at_satellite,
)
from .core import DecibelQuantity, DomainError, dbm_from_watts, power_sum_db, watts_from_dbm
from .fit import ExcessLossFit, MeasurementRecord, excess_loss, fit_excess_loss
from .gas import find_absorption_peaks, specific_gas_attenuation
from .geometry import (
    PathLossBreakdown,
    SlantPath,
    fspl,
    geometric_length_through_shell,
    slant_gas_attenuation,
    total_slant_loss,
    total_terrestrial_loss,
)
from .ntn import NtnLinkConfig, TransmitterSpec, ntn_path_loss, received_power
from .rain import RainCoefficients, rain_coefficients, specific_rain_attenuation

__version__ = "0.1.0"
