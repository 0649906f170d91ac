"""Semantic encoder lab: trains the 256-bit task-oriented CIFAR-10 codec and
exports profiles for the constellation simulator."""

from .data import SyntheticImages, cifar10_available, cifar10_datasets, synthetic_datasets
from .export import RAW_BITS_PER_ITEM, codec_profile, write_codec_profile
from .model import (
    WIRE_BITS,
    EncoderSpec,
    SemanticClassifier,
    decode_packet,
    encode_packet,
)
from .quantizer import quantize_ste
from .train import TrainConfig, TrainReport, evaluate, load_model, save_model, train

__version__ = "0.1.0"
