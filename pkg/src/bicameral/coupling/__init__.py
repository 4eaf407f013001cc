"""Trainable coupling interface: gated operators, adapters, wiring, optimizer."""

from .interface import (
    DimensionMismatch,
    InterfaceSpec,
    adapter_apply,
    adapter_apply_backward,
    adapter_equivalent_step,
    couple,
    couple_backward,
    init_adapter,
    init_interface,
)
from .checkpoint import load_params, save_params
from .optim import AdamW
from .toytask import DivergenceDetected, ToyCouplingConfig, train_toy_coupling
from .wiring import CouplingLayers, InvalidWiring, IndexOutOfRange, OrderRegime, validate_wiring

__all__ = [
    "AdamW", "CouplingLayers", "DimensionMismatch", "DivergenceDetected",
    "IndexOutOfRange", "InterfaceSpec", "InvalidWiring", "OrderRegime",
    "ToyCouplingConfig", "adapter_apply", "adapter_apply_backward",
    "adapter_equivalent_step", "couple", "couple_backward", "init_adapter",
    "init_interface", "load_params", "save_params", "train_toy_coupling",
    "validate_wiring",
]
