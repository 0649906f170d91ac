"""Ground-space RF channel capacity, its inverse, and fixed-rate inter-satellite links."""

from __future__ import annotations

import math
from dataclasses import dataclass

BOLTZMANN_J_K = 1.380649e-23
SPEED_OF_LIGHT_M_S = 2.998e8


@dataclass(frozen=True)
class RfChannelSpec:
    carrier_freq_hz: float = 30.0e9
    bandwidth_hz: float = 2.0e9
    # Net of tx + rx antenna gains and every lumped loss (atmosphere, pointing,
    # implementation).  Kept low so the bit-level transmit term dominates the
    # semantic encoder draw across the whole default budget sweep.
    combined_gain_db: float = 15.0
    noise_temp_k: float = 300.0
    mimo_multiplier: float = 1.0

    def __post_init__(self):
        if self.carrier_freq_hz <= 0 or self.bandwidth_hz <= 0 or self.noise_temp_k <= 0:
            raise ValueError("carrier_freq_hz, bandwidth_hz and noise_temp_k must be > 0")
        if self.mimo_multiplier < 1.0:
            raise ValueError("mimo_multiplier must be >= 1")


@dataclass(frozen=True)
class IslSpec:
    capacity_bits_per_s: float = 4.0e11
    max_links_per_sat: int = 6
    max_range_km: float | None = None

    def __post_init__(self):
        if self.capacity_bits_per_s <= 0:
            raise ValueError("capacity_bits_per_s must be > 0")
        if self.max_links_per_sat < 1:
            raise ValueError("max_links_per_sat must be >= 1")


def fspl_db(freq_hz: float, distance_km: float) -> float:
    """Free-space path loss in dB."""
    if freq_hz <= 0 or distance_km <= 0:
        raise ValueError("freq_hz and distance_km must be > 0")
    d_m = distance_km * 1000.0
    return 20.0 * math.log10(4.0 * math.pi * d_m * freq_hz / SPEED_OF_LIGHT_M_S)


def _snr_denominator_w(spec: RfChannelSpec, distance_km: float) -> float:
    loss_lin = 10.0 ** (fspl_db(spec.carrier_freq_hz, distance_km) / 10.0)
    gain_lin = 10.0 ** (spec.combined_gain_db / 10.0)
    noise_w = BOLTZMANN_J_K * spec.noise_temp_k * spec.bandwidth_hz
    return loss_lin * noise_w / gain_lin


def capacity(spec: RfChannelSpec, p_tx_w: float, distance_km: float) -> float:
    """Shannon capacity (bits/s) of one channel at the given transmit power."""
    if p_tx_w <= 0:
        return 0.0
    snr = p_tx_w / _snr_denominator_w(spec, distance_km)
    return spec.mimo_multiplier * spec.bandwidth_hz * math.log2(1.0 + snr)


def required_tx_power(spec: RfChannelSpec, rate_bps: float, distance_km: float) -> float:
    """Transmit power (W) achieving the given rate; exact inverse of capacity()."""
    if rate_bps < 0:
        raise ValueError("rate_bps must be >= 0")
    if rate_bps == 0:
        return 0.0
    snr = 2.0 ** (rate_bps / (spec.mimo_multiplier * spec.bandwidth_hz)) - 1.0
    return snr * _snr_denominator_w(spec, distance_km)
