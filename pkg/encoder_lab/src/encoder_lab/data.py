"""Dataset plumbing: CIFAR-10 via torchvision, plus a deterministic synthetic
set for pipeline smoke tests on machines without the real data."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import torch
from torch.utils.data import Dataset
from torchvision import datasets, transforms

CIFAR_MEAN = (0.4914, 0.4822, 0.4465)
CIFAR_STD = (0.2470, 0.2435, 0.2616)


def cifar10_available(root: str | Path) -> bool:
    base = Path(root) / "cifar-10-batches-py"
    return (base / "data_batch_1").exists() and (base / "test_batch").exists()


def cifar10_datasets(root: str | Path, augment: bool = True, download: bool = False):
    """(train, test) CIFAR-10 datasets with standard crop/flip augmentation."""
    normalize = transforms.Normalize(CIFAR_MEAN, CIFAR_STD)
    if augment:
        train_tf = transforms.Compose([
            transforms.RandomCrop(32, padding=4),
            transforms.RandomHorizontalFlip(),
            transforms.ToTensor(),
            normalize,
        ])
    else:
        train_tf = transforms.Compose([transforms.ToTensor(), normalize])
    test_tf = transforms.Compose([transforms.ToTensor(), normalize])
    train = datasets.CIFAR10(str(root), train=True, transform=train_tf, download=download)
    test = datasets.CIFAR10(str(root), train=False, transform=test_tf, download=download)
    return train, test


class SyntheticImages(Dataset):
    """Procedural 10-class 32x32 RGB images: class-coded base color, stripe
    frequency, and patch position under additive noise.  Fully determined by
    (seed, index), so runs are reproducible anywhere."""

    def __init__(self, n_items: int, seed: int = 0, noise: float = 0.15):
        self.n_items = n_items
        self.seed = seed
        self.noise = noise

    def __len__(self) -> int:
        return self.n_items

    def __getitem__(self, index: int):
        label = index % 10
        rng = np.random.default_rng((self.seed, index))
        yy, xx = np.mgrid[0:32, 0:32].astype(np.float32) / 31.0

        base = np.zeros((3, 32, 32), dtype=np.float32)
        base[label % 3] = 0.3 + 0.05 * label
        stripes = 0.3 * np.sin(2 * np.pi * (1 + label) * xx)
        base[(label + 1) % 3] += stripes.astype(np.float32)
        cx, cy = 4 + 2 * (label % 5), 4 + 2 * (label // 5) * 2
        base[:, cy : cy + 8, cx : cx + 8] += 0.4
        base += rng.normal(0.0, self.noise, size=base.shape).astype(np.float32)
        base = np.clip(base, 0.0, 1.0)

        mean = np.array(CIFAR_MEAN, dtype=np.float32).reshape(3, 1, 1)
        std = np.array(CIFAR_STD, dtype=np.float32).reshape(3, 1, 1)
        return torch.from_numpy((base - mean) / std), label


def synthetic_datasets(n_train: int = 2000, n_test: int = 500, seed: int = 0):
    return SyntheticImages(n_train, seed=seed), SyntheticImages(n_test, seed=seed + 1)
