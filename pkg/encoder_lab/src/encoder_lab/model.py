"""Semantic encoder: modified ResNet18 backbone, 80-d bounded bottleneck,
3-bit quantization, linear classifier head, and 256-bit packet framing."""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torch import nn
from torchvision.models import resnet18

from .quantizer import quantize_ste

WIRE_BITS = 256


@dataclass(frozen=True)
class EncoderSpec:
    bottleneck_dim: int = 80
    bits_per_dim: int = 3
    fixed_overhead_bits: int = 16
    num_classes: int = 10

    def __post_init__(self):
        wire = self.bottleneck_dim * self.bits_per_dim + self.fixed_overhead_bits
        if wire != WIRE_BITS:
            raise ValueError(
                f"wire size must be {WIRE_BITS} bits, got "
                f"{self.bottleneck_dim}*{self.bits_per_dim}+{self.fixed_overhead_bits}={wire}"
            )

    @property
    def wire_bits(self) -> int:
        return self.bottleneck_dim * self.bits_per_dim + self.fixed_overhead_bits

    @property
    def payload_bits(self) -> int:
        return self.bottleneck_dim * self.bits_per_dim


def _cifar_backbone() -> nn.Module:
    """ResNet18 adapted to 32x32 inputs: 3x3 stride-1 stem, no initial pooling."""
    net = resnet18(weights=None)
    net.conv1 = nn.Conv2d(3, 64, kernel_size=3, stride=1, padding=1, bias=False)
    net.maxpool = nn.Identity()
    net.fc = nn.Identity()  # expose the 512-d feature vector
    return net


class SemanticClassifier(nn.Module):
    """End-to-end pipeline: backbone -> linear bottleneck -> sigmoid ->
    straight-through quantizer -> linear classifier over dequantized latents."""

    def __init__(self, spec: EncoderSpec = EncoderSpec()):
        super().__init__()
        self.spec = spec
        self.backbone = _cifar_backbone()
        self.bottleneck = nn.Linear(512, spec.bottleneck_dim)
        self.classifier = nn.Linear(spec.bottleneck_dim, spec.num_classes)

    def encode(self, images: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        """(codes, dequantized latents) for a batch of images."""
        latent = torch.sigmoid(self.bottleneck(self.backbone(images)))
        return quantize_ste(latent, self.spec.bits_per_dim)

    def forward(self, images: torch.Tensor) -> torch.Tensor:
        _, dequantized = self.encode(images)
        return self.classifier(dequantized)

    def classify_codes(self, codes: torch.Tensor) -> torch.Tensor:
        """Receiver side: logits from transmitted codes alone."""
        levels = 2**self.spec.bits_per_dim
        dequantized = (codes.float() + 0.5) / levels
        return self.classifier(dequantized)


def encode_packet(codes: torch.Tensor, item_id: int, spec: EncoderSpec = EncoderSpec()) -> bytes:
    """Frame one item: 16-bit sequence header plus 3-bit codes, MSB first.

    Always exactly WIRE_BITS / 8 = 32 bytes.
    """
    codes = codes.reshape(-1).tolist()
    if len(codes) != spec.bottleneck_dim:
        raise ValueError(f"expected {spec.bottleneck_dim} codes, got {len(codes)}")
    value = item_id % (1 << spec.fixed_overhead_bits)
    n_bits = spec.fixed_overhead_bits
    for code in codes:
        code = int(code)
        if not 0 <= code < 2**spec.bits_per_dim:
            raise ValueError(f"code {code} out of range")
        value = (value << spec.bits_per_dim) | code
        n_bits += spec.bits_per_dim
    assert n_bits == spec.wire_bits
    return value.to_bytes(spec.wire_bits // 8, "big")


def decode_packet(packet: bytes, spec: EncoderSpec = EncoderSpec()) -> tuple[int, torch.Tensor]:
    """Inverse of encode_packet: (item_id, codes)."""
    if len(packet) != spec.wire_bits // 8:
        raise ValueError(f"packet must be {spec.wire_bits // 8} bytes, got {len(packet)}")
    value = int.from_bytes(packet, "big")
    mask = (1 << spec.bits_per_dim) - 1
    codes = []
    for _ in range(spec.bottleneck_dim):
        codes.append(value & mask)
        value >>= spec.bits_per_dim
    item_id = value
    return item_id, torch.tensor(list(reversed(codes)), dtype=torch.long)
