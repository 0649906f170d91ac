"""Export tests: the profile JSON matches the simulator schema exactly and
loads into the simulator unmodified."""

import json

from encoder_lab.export import PROFILE_KEYS, RAW_BITS_PER_ITEM, write_codec_profile
from encoder_lab.model import EncoderSpec
from encoder_lab.train import TrainReport


def _report(accuracy=0.9443):
    return TrainReport(
        test_accuracy=accuracy,
        epochs=100,
        wire_bits=256,
        encoder_time_per_item_s=4.0e-4,
        encoder_energy_per_item_j=0.01,
        dataset="cifar10",
        seed=1,
        train_items=50000,
        test_items=10000,
    )


def test_profile_schema_exact(tmp_path):
    path = tmp_path / "profile.json"
    profile = write_codec_profile(_report(), path)
    loaded = json.loads(path.read_text())
    assert tuple(loaded) == PROFILE_KEYS
    assert loaded == profile
    assert loaded["bits_per_item"] == 256
    assert loaded["raw_bits_per_item"] == RAW_BITS_PER_ITEM == 24576
    assert loaded["fixed_overhead_bits"] == 16
    assert loaded["task_accuracy"] == 0.9443


def test_accuracy_rounded_to_four_decimals(tmp_path):
    path = tmp_path / "profile.json"
    write_codec_profile(_report(accuracy=0.93127779), path)
    loaded = json.loads(path.read_text())
    assert loaded["task_accuracy"] == 0.9313


def test_profile_loads_into_simulator_unmodified(tmp_path):
    # the consuming side: the constellation simulator's own profile ingester
    from sdcsim.traffic_codec import compression_stats, load_codec_profile

    path = tmp_path / "profile.json"
    write_codec_profile(_report(), path)
    profile = load_codec_profile(path)
    ratio, reduction = compression_stats(profile)
    assert ratio == 96.0
    assert abs(reduction - 0.98958333333333333) <= 1e-12
    assert profile.task_accuracy == 0.9443
    assert profile.fixed_overhead_bits == 16


def test_profile_energy_follows_measurement(tmp_path):
    report = _report()
    report.encoder_energy_per_item_j = 0.025
    path = tmp_path / "p.json"
    write_codec_profile(report, path)
    assert json.loads(path.read_text())["encoder_energy_per_item_j"] == 0.025


def test_spec_fields_drive_profile(tmp_path):
    profile = write_codec_profile(_report(), tmp_path / "p.json", spec=EncoderSpec())
    assert profile["bits_per_item"] == EncoderSpec().wire_bits
