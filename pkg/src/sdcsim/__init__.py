"""Discrete-time simulator for orbital compute constellations under coupled
energy-thermal constraints, with bit-level vs semantic uplink analysis."""

from .geometry import (
    ContactTable,
    GroundStation,
    OrbitalElements,
    build_contact_table,
    build_walker_fleet,
    elevation,
    place_ground_stations,
    propagate,
    slant_range,
    slant_range_at_elevation,
)
from .link_budget import IslSpec, RfChannelSpec, capacity, fspl_db, required_tx_power
from .power_thermal import (
    EnvelopeResult,
    RadiatorSpec,
    SdcPowerProfile,
    calibrate_energy_per_bit,
    max_compute_power,
    max_data_volume,
    radiator_capacity,
)
from .scheduler import Demand, RunReport, SlotAllocation, allocate_slot, build_topology, run
from .traffic_codec import (
    BUILTIN_PROFILES,
    CodecProfile,
    RateRequirement,
    compression_stats,
    gs_power,
    load_codec_profile,
    required_rates,
)
from .experiment import (
    ConfigError,
    MetricsRow,
    ScenarioConfig,
    SweepPoint,
    emit_csv,
    evaluate_budget,
    sweep,
    validate,
)

__version__ = "0.1.0"
