"""Uniform mid-rise quantizer with a straight-through gradient."""

from __future__ import annotations

import torch


def quantize_ste(latent: torch.Tensor, bits_per_dim: int = 3) -> tuple[torch.Tensor, torch.Tensor]:
    """Quantize a [0, 1]-bounded latent to 2**bits levels.

    Forward: uniform mid-rise quantization (codes 0 .. 2**bits - 1, dequantized
    values at the level centers (k + 0.5) / 2**bits).  Backward: identity, so
    gradients pass straight through the rounding.
    """
    if bits_per_dim < 1:
        raise ValueError("bits_per_dim must be >= 1")
    levels = 2**bits_per_dim
    codes = torch.clamp(torch.floor(latent * levels), 0, levels - 1)
    dequantized = (codes + 0.5) / levels
    # identity surrogate: the rounding residual is detached from the graph
    out = latent + (dequantized - latent).detach()
    return codes.long(), out
