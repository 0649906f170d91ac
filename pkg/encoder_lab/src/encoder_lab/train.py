"""Training and evaluation for the semantic encoder pipeline."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import torch
from torch import nn
from torch.utils.data import DataLoader, Subset

from .data import cifar10_available, cifar10_datasets, synthetic_datasets
from .model import EncoderSpec, SemanticClassifier


@dataclass
class TrainConfig:
    dataset: str = "cifar10"  # or "synthetic"
    data_root: str = "./data"
    download: bool = False
    epochs: int = 100
    batch_size: int = 128
    lr: float = 0.1
    momentum: float = 0.9
    weight_decay: float = 5e-4
    seed: int = 1
    device: str = "auto"
    num_workers: int = 2
    augment: bool = True
    limit_train: int | None = None  # subsample for smoke runs
    limit_test: int | None = None
    accuracy_floor: float = 0.93
    encoder_power_w: float = 25.0  # assumed GS encoder draw for J/item estimates
    synthetic_train: int = 2000
    synthetic_test: int = 500

    @classmethod
    def from_yaml(cls, path: str | Path) -> "TrainConfig":
        import yaml

        doc = yaml.safe_load(Path(path).read_text()) or {}
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)


@dataclass
class TrainReport:
    test_accuracy: float
    epochs: int
    wire_bits: int
    encoder_time_per_item_s: float
    encoder_energy_per_item_j: float
    dataset: str
    seed: int
    train_items: int
    test_items: int
    epoch_accuracies: list[float] = field(default_factory=list)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")


def seed_everything(seed: int) -> None:
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)


def pick_device(name: str) -> torch.device:
    if name == "auto":
        return torch.device("cuda" if torch.cuda.is_available() else "cpu")
    return torch.device(name)


def _datasets(config: TrainConfig):
    if config.dataset == "synthetic":
        train, test = synthetic_datasets(config.synthetic_train, config.synthetic_test, config.seed)
    elif config.dataset == "cifar10":
        if not config.download and not cifar10_available(config.data_root):
            raise FileNotFoundError(
                f"CIFAR-10 not found under {config.data_root!r}; place the extracted "
                "'cifar-10-batches-py' there or set download: true"
            )
        train, test = cifar10_datasets(config.data_root, augment=config.augment,
                                       download=config.download)
    else:
        raise ValueError(f"unknown dataset {config.dataset!r}")
    if config.limit_train:
        train = Subset(train, range(min(config.limit_train, len(train))))
    if config.limit_test:
        test = Subset(test, range(min(config.limit_test, len(test))))
    return train, test


@torch.no_grad()
def evaluate(model: SemanticClassifier, loader: DataLoader, device: torch.device) -> float:
    model.eval()
    correct = total = 0
    for images, labels in loader:
        logits = model(images.to(device))
        correct += int((logits.argmax(dim=1).cpu() == labels).sum())
        total += len(labels)
    return correct / total if total else 0.0


@torch.no_grad()
def measure_encoder_time(model: SemanticClassifier, loader: DataLoader,
                         device: torch.device, max_items: int = 512) -> float:
    """Mean wall-clock encode time per item over a bounded sample."""
    model.eval()
    done = 0
    t0 = time.perf_counter()
    for images, _ in loader:
        model.encode(images.to(device))
        done += len(images)
        if done >= max_items:
            break
    elapsed = time.perf_counter() - t0
    return elapsed / max(done, 1)


def train(config: TrainConfig, spec: EncoderSpec = EncoderSpec(),
          log=print) -> tuple[SemanticClassifier, TrainReport]:
    """End-to-end cross-entropy training of encoder + quantizer + classifier."""
    seed_everything(config.seed)
    device = pick_device(config.device)
    train_set, test_set = _datasets(config)

    train_loader = DataLoader(
        train_set, batch_size=config.batch_size, shuffle=True,
        num_workers=config.num_workers, drop_last=False,
        generator=torch.Generator().manual_seed(config.seed),
    )
    test_loader = DataLoader(test_set, batch_size=256, num_workers=config.num_workers)

    model = SemanticClassifier(spec).to(device)
    optimizer = torch.optim.SGD(
        model.parameters(), lr=config.lr, momentum=config.momentum,
        weight_decay=config.weight_decay, nesterov=True,
    )
    scheduler = torch.optim.lr_scheduler.CosineAnnealingLR(optimizer, T_max=config.epochs)
    loss_fn = nn.CrossEntropyLoss()

    history = []
    for epoch in range(config.epochs):
        model.train()
        running = 0.0
        for images, labels in train_loader:
            images, labels = images.to(device), labels.to(device)
            optimizer.zero_grad(set_to_none=True)
            loss = loss_fn(model(images), labels)
            loss.backward()
            optimizer.step()
            running += loss.item() * len(labels)
        scheduler.step()
        accuracy = evaluate(model, test_loader, device)
        history.append(accuracy)
        log(f"epoch {epoch + 1:3d}/{config.epochs}  "
            f"loss {running / len(train_set):.4f}  test acc {accuracy:.4f}")

    final_accuracy = history[-1] if history else evaluate(model, test_loader, device)
    time_per_item = measure_encoder_time(model, test_loader, device)
    report = TrainReport(
        test_accuracy=final_accuracy,
        epochs=config.epochs,
        wire_bits=spec.wire_bits,
        encoder_time_per_item_s=time_per_item,
        encoder_energy_per_item_j=time_per_item * config.encoder_power_w,
        dataset=config.dataset,
        seed=config.seed,
        train_items=len(train_set),
        test_items=len(test_set),
        epoch_accuracies=history,
    )
    return model, report


def save_model(model: SemanticClassifier, path: str | Path) -> None:
    torch.save({"state_dict": model.state_dict(), "spec": asdict(model.spec)}, path)


def load_model(path: str | Path) -> SemanticClassifier:
    payload = torch.load(path, map_location="cpu", weights_only=True)
    model = SemanticClassifier(EncoderSpec(**payload["spec"]))
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model
