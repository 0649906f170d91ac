"""Bit-level vs semantic uplink traffic models and GS-side energy accounting."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .link_budget import RfChannelSpec, required_tx_power
from .power_thermal import EnvelopeResult

# Raw CIFAR-10 image: 32 x 32 pixels x 3 channels x 8 bits.
CIFAR10_RAW_BITS = 32 * 32 * 3 * 8


@dataclass(frozen=True)
class CodecProfile:
    name: str
    bits_per_item: int
    raw_bits_per_item: int
    task_accuracy: float
    encoder_energy_per_item_j: float = 0.0
    fixed_overhead_bits: int = 0

    def __post_init__(self):
        if not 0 < self.bits_per_item <= self.raw_bits_per_item:
            raise ValueError(
                f"need 0 < bits_per_item <= raw_bits_per_item, got "
                f"{self.bits_per_item}/{self.raw_bits_per_item}"
            )
        if self.fixed_overhead_bits > self.bits_per_item:
            raise ValueError("fixed_overhead_bits cannot exceed bits_per_item")
        if not 0.0 <= self.task_accuracy <= 1.0:
            raise ValueError("task_accuracy must be in [0, 1]")
        if self.encoder_energy_per_item_j < 0:
            raise ValueError("encoder_energy_per_item_j must be >= 0")

    @property
    def compression_ratio(self) -> float:
        return self.raw_bits_per_item / self.bits_per_item


BUILTIN_PROFILES = {
    "bitcom-cifar10": CodecProfile(
        name="bitcom-cifar10",
        bits_per_item=CIFAR10_RAW_BITS,
        raw_bits_per_item=CIFAR10_RAW_BITS,
        task_accuracy=1.0,
        encoder_energy_per_item_j=0.0,
        fixed_overhead_bits=0,
    ),
    "semcom-cifar10-256": CodecProfile(
        name="semcom-cifar10-256",
        bits_per_item=256,
        raw_bits_per_item=CIFAR10_RAW_BITS,
        task_accuracy=0.9443,
        encoder_energy_per_item_j=10e-3,
        fixed_overhead_bits=16,
    ),
}

_PROFILE_KEYS = {
    "name",
    "bits_per_item",
    "raw_bits_per_item",
    "task_accuracy",
    "encoder_energy_per_item_j",
    "fixed_overhead_bits",
}


def codec_profile_from_dict(doc: dict) -> CodecProfile:
    missing = _PROFILE_KEYS - doc.keys()
    if missing:
        raise ValueError(f"codec profile missing keys: {sorted(missing)}")
    return CodecProfile(
        name=str(doc["name"]),
        bits_per_item=int(doc["bits_per_item"]),
        raw_bits_per_item=int(doc["raw_bits_per_item"]),
        task_accuracy=float(doc["task_accuracy"]),
        encoder_energy_per_item_j=float(doc["encoder_energy_per_item_j"]),
        fixed_overhead_bits=int(doc["fixed_overhead_bits"]),
    )


def load_codec_profile(ref: str | Path) -> CodecProfile:
    """Load a codec profile from 'builtin:<name>' or a JSON file path."""
    ref = str(ref)
    if ref.startswith("builtin:"):
        name = ref.split(":", 1)[1]
        if name not in BUILTIN_PROFILES:
            raise ValueError(f"unknown builtin codec profile {name!r}")
        return BUILTIN_PROFILES[name]
    with open(ref, encoding="utf-8") as fh:
        return codec_profile_from_dict(json.load(fh))


def compression_stats(profile: CodecProfile) -> tuple[float, float]:
    """(compression ratio, fractional uplink-volume reduction) of a codec."""
    ratio = profile.compression_ratio
    return ratio, 1.0 - 1.0 / ratio


@dataclass(frozen=True)
class RateRequirement:
    """Uplink rate needed to keep the platform fed at its sustainable volume."""

    p_budget_w: float
    aggregate_rate_bps: float
    per_gs_rate_bps: float
    codec_name: str


def required_rates(
    envelope: EnvelopeResult,
    codec: CodecProfile,
    n_gs: int,
    service_duration_s: float,
) -> RateRequirement:
    """Aggregate and per-GS equivalent single-channel rates for one codec.

    The processed volume is measured in raw-equivalent bits, so a compressing
    codec divides the wire volume by its compression ratio.
    """
    if n_gs <= 0:
        raise ValueError("n_gs must be > 0")
    if not envelope.feasible:
        raise ValueError("envelope is infeasible; no finite rate achieves the target volume")
    # The codec divide comes last, on a base shared by every codec of the same
    # source: the reported per-GS rates of two such codecs then differ by a
    # single correctly-rounded division, keeping their ratio exact.
    base_per_gs = envelope.x_max_bits / service_duration_s / n_gs
    per_gs = base_per_gs / codec.compression_ratio
    return RateRequirement(
        p_budget_w=envelope.p_budget_w,
        aggregate_rate_bps=per_gs * n_gs,
        per_gs_rate_bps=per_gs,
        codec_name=codec.name,
    )


def gs_power(
    rate_req: RateRequirement,
    codec: CodecProfile,
    channel: RfChannelSpec,
    mean_slant_range_km: float,
    channels_per_gs: int = 2,
) -> float:
    """Average GS power (W): RF transmit power across its channels plus encoder draw."""
    if channels_per_gs < 1:
        raise ValueError("channels_per_gs must be >= 1")
    per_channel_rate = rate_req.per_gs_rate_bps / channels_per_gs
    tx = channels_per_gs * required_tx_power(channel, per_channel_rate, mean_slant_range_km)
    items_per_s = rate_req.per_gs_rate_bps / codec.bits_per_item
    return tx + items_per_s * codec.encoder_energy_per_item_j
