"""CLI: train the encoder from a YAML config, or re-evaluate a saved model."""

from __future__ import annotations

import argparse
import sys

from torch.utils.data import DataLoader

from .export import write_codec_profile
from .model import EncoderSpec
from .train import (
    TrainConfig,
    TrainReport,
    evaluate,
    load_model,
    measure_encoder_time,
    pick_device,
    save_model,
    train,
    _datasets,
)

EXIT_BELOW_FLOOR = 3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="encoder-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train and export model + codec profile")
    p_train.add_argument("--config", required=True, help="YAML training config")
    p_train.add_argument("--out-model", required=True)
    p_train.add_argument("--out-profile", required=True)
    p_train.add_argument("--out-report", default=None, help="training report JSON")

    p_eval = sub.add_parser("eval", help="evaluate a saved model and export its profile")
    p_eval.add_argument("--model", required=True)
    p_eval.add_argument("--out-profile", required=True)
    p_eval.add_argument("--config", default=None, help="YAML config for dataset/device keys")
    p_eval.add_argument("--out-report", default=None)

    args = parser.parse_args(argv)

    if args.command == "train":
        config = TrainConfig.from_yaml(args.config)
        model, report = train(config)
        save_model(model, args.out_model)
        write_codec_profile(report, args.out_profile)
        if args.out_report:
            report.write(args.out_report)
        print(f"test accuracy {report.test_accuracy:.4f}  "
              f"wire bits {report.wire_bits}  model -> {args.out_model}")
        if report.test_accuracy < config.accuracy_floor:
            print(f"accuracy below floor {config.accuracy_floor}", file=sys.stderr)
            return EXIT_BELOW_FLOOR
        return 0

    if args.command == "eval":
        config = TrainConfig.from_yaml(args.config) if args.config else TrainConfig()
        model = load_model(args.model)
        device = pick_device(config.device)
        model.to(device)
        _, test_set = _datasets(config)
        loader = DataLoader(test_set, batch_size=256, num_workers=config.num_workers)
        accuracy = evaluate(model, loader, device)
        time_per_item = measure_encoder_time(model, loader, device)
        report = TrainReport(
            test_accuracy=accuracy,
            epochs=0,
            wire_bits=model.spec.wire_bits,
            encoder_time_per_item_s=time_per_item,
            encoder_energy_per_item_j=time_per_item * config.encoder_power_w,
            dataset=config.dataset,
            seed=config.seed,
            train_items=0,
            test_items=len(test_set),
        )
        write_codec_profile(report, args.out_profile)
        if args.out_report:
            report.write(args.out_report)
        print(f"test accuracy {accuracy:.4f}  profile -> {args.out_profile}")
        return 0

    return 2


if __name__ == "__main__":
    sys.exit(main())
