"""Codec-profile export in the simulator's exact JSON schema."""

from __future__ import annotations

import json
from pathlib import Path

from .model import EncoderSpec
from .train import TrainReport

RAW_BITS_PER_ITEM = 32 * 32 * 3 * 8  # uncompressed source item

PROFILE_KEYS = (
    "name",
    "bits_per_item",
    "raw_bits_per_item",
    "task_accuracy",
    "encoder_energy_per_item_j",
    "fixed_overhead_bits",
)


def codec_profile(report: TrainReport, spec: EncoderSpec = EncoderSpec(),
                  name: str = "semcom-cifar10-256") -> dict:
    profile = {
        "name": name,
        "bits_per_item": spec.wire_bits,
        "raw_bits_per_item": RAW_BITS_PER_ITEM,
        "task_accuracy": round(report.test_accuracy, 4),
        "encoder_energy_per_item_j": report.encoder_energy_per_item_j,
        "fixed_overhead_bits": spec.fixed_overhead_bits,
    }
    assert tuple(profile) == PROFILE_KEYS
    return profile


def write_codec_profile(report: TrainReport, path: str | Path,
                        spec: EncoderSpec = EncoderSpec(),
                        name: str = "semcom-cifar10-256") -> dict:
    profile = codec_profile(report, spec, name)
    Path(path).write_text(json.dumps(profile, indent=2) + "\n")
    return profile
