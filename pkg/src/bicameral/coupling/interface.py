"""Gated coupling operators and low-rank adapters.

The coupling update is a convex combination controlled by a suppression
gate computed from the receiver's state:

    out = (1 - sigma) * h_receiver + sigma * f(h_sender),
    sigma = Sigmoid(g(h_receiver))

pull_standard learns f as an MLP; pull_identity uses f = identity (equal
dims required) and trains only the gates. The adapter-equivalent step
routes the read-side state through both translation networks in series
and gates on the write-side state, with no second model involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mlp import mlp_backward, mlp_forward, mlp_init, sigmoid

VARIANTS = ("pull_standard", "pull_identity")
GATE_KINDS = ("scalar", "elementwise")

FORWARD = "fwd"  # primary -> auxiliary
REVERSE = "rev"  # auxiliary -> primary


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class InterfaceSpec:
    """Shapes and sizes of the trainable interface."""

    d_primary: int
    d_auxiliary: int
    variant: str = "pull_standard"
    gate_kind: str = "scalar"
    translation_hidden: tuple[int, ...] = (2048, 2048, 2048)
    gate_hidden: tuple[int, ...] = (64, 64, 64)
    gate_bias_init: float = -4.0  # sigma starts near zero

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.gate_kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.gate_kind!r}")
        if self.variant == "pull_identity" and self.d_primary != self.d_auxiliary:
            raise DimensionMismatch("identity coupling requires equal hidden dims")

    def dims(self, direction: str) -> tuple[int, int]:
        """(sender dim, receiver dim) for a direction."""
        if direction == FORWARD:
            return self.d_primary, self.d_auxiliary
        if direction == REVERSE:
            return self.d_auxiliary, self.d_primary
        raise ValueError(f"unknown direction {direction!r}")

    def gate_out_dim(self, receiver_dim: int) -> int:
        return 1 if self.gate_kind == "scalar" else receiver_dim


def init_interface(spec: InterfaceSpec, rng: np.random.Generator) -> dict:
    """Fresh parameter dict for both directions."""
    params: dict = {}
    for direction in (FORWARD, REVERSE):
        d_s, d_r = spec.dims(direction)
        if spec.variant == "pull_standard":
            mlp_init(params, f"{direction}.trans", [d_s, *spec.translation_hidden, d_r], rng)
        mlp_init(
            params,
            f"{direction}.gate",
            [d_r, *spec.gate_hidden, spec.gate_out_dim(d_r)],
            rng,
            zero_last=True,
            last_bias=spec.gate_bias_init,
        )
    return params


def _as_batch(x: np.ndarray) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        return arr[None, :], True
    return arr, False


def couple(
    params: dict,
    spec: InterfaceSpec,
    direction: str,
    h_sender: np.ndarray,
    h_receiver: np.ndarray,
    gate_override: float | None = None,
):
    """Gated convex combination; returns (output, cache for backward).

    gate_override pins sigma to a constant (bypassing the gate network),
    used to freeze coupling on or off.
    """
    h_s, squeeze = _as_batch(h_sender)
    h_r, _ = _as_batch(h_receiver)
    d_s, d_r = spec.dims(direction)
    if h_s.shape[-1] != d_s or h_r.shape[-1] != d_r:
        raise DimensionMismatch(
            f"{direction}: sender {h_s.shape[-1]} vs {d_s}, receiver {h_r.shape[-1]} vs {d_r}"
        )

    if spec.variant == "pull_identity":
        f_out, f_cache = h_s, None
    else:
        f_out, f_cache = mlp_forward(params, f"{direction}.trans", h_s)

    if gate_override is None:
        gate_out, g_cache = mlp_forward(params, f"{direction}.gate", h_r)
        sigma = sigmoid(gate_out)
    else:
        sigma = np.full((h_r.shape[0], 1), float(gate_override))
        g_cache = None

    out = (1.0 - sigma) * h_r + sigma * f_out
    cache = {
        "direction": direction,
        "squeeze": squeeze,
        "h_r": h_r,
        "f_out": f_out,
        "sigma": sigma,
        "f_cache": f_cache,
        "g_cache": g_cache,
        "override": gate_override,
    }
    return (out[0] if squeeze else out), cache


def couple_backward(
    params: dict, spec: InterfaceSpec, cache: dict, dout: np.ndarray, grads: dict
):
    """Backward through couple; returns (dL/dh_sender, dL/dh_receiver)."""
    direction = cache["direction"]
    d = np.asarray(dout, dtype=float)
    if d.ndim == 1:
        d = d[None, :]
    sigma, h_r, f_out = cache["sigma"], cache["h_r"], cache["f_out"]

    d_f = d * sigma
    d_hr = d * (1.0 - sigma)

    if cache["override"] is None:
        d_sigma = d * (f_out - h_r)
        if sigma.shape[-1] == 1:
            d_sigma = d_sigma.sum(axis=-1, keepdims=True)
        d_gate_out = d_sigma * sigma * (1.0 - sigma)
        d_hr = d_hr + mlp_backward(params, f"{direction}.gate", cache["g_cache"], d_gate_out, grads)

    if spec.variant == "pull_identity":
        d_hs = d_f
    else:
        d_hs = mlp_backward(params, f"{direction}.trans", cache["f_cache"], d_f, grads)

    if cache["squeeze"]:
        return d_hs[0], d_hr[0]
    return d_hs, d_hr


@dataclass
class AdapterSpec:
    dim: int
    rank: int = 64
    alpha: float = 128.0


def init_adapter(spec: AdapterSpec, rng: np.random.Generator, params: dict | None = None, prefix: str = "adapter") -> dict:
    """Zero-initialized up-projection makes the adapter a no-op at start."""
    params = {} if params is None else params
    bound = 1.0 / np.sqrt(spec.dim)
    params[f"{prefix}.down"] = rng.uniform(-bound, bound, size=(spec.dim, spec.rank))
    params[f"{prefix}.up"] = np.zeros((spec.rank, spec.dim))
    return params


def adapter_apply(params: dict, spec: AdapterSpec, h: np.ndarray, prefix: str = "adapter"):
    """h + (alpha/rank) * up(relu(down(h))); returns (output, cache)."""
    x, squeeze = _as_batch(h)
    if x.shape[-1] != spec.dim:
        raise DimensionMismatch(f"adapter dim {spec.dim} vs input {x.shape[-1]}")
    z = x @ params[f"{prefix}.down"]
    a = np.maximum(z, 0.0)
    out = x + (spec.alpha / spec.rank) * (a @ params[f"{prefix}.up"])
    cache = {"x": x, "z": z, "a": a, "squeeze": squeeze, "prefix": prefix}
    return (out[0] if squeeze else out), cache


def adapter_apply_backward(params: dict, spec: AdapterSpec, cache: dict, dout: np.ndarray, grads: dict):
    d = np.asarray(dout, dtype=float)
    if d.ndim == 1:
        d = d[None, :]
    prefix = cache["prefix"]
    scale = spec.alpha / spec.rank
    da = scale * (d @ params[f"{prefix}.up"].T)
    dz = da * (cache["z"] > 0.0)
    grads[f"{prefix}.up"] = grads.get(f"{prefix}.up", 0.0) + scale * (cache["a"].T @ d)
    grads[f"{prefix}.down"] = grads.get(f"{prefix}.down", 0.0) + cache["x"].T @ dz
    dx = d + dz @ params[f"{prefix}.down"].T
    return dx[0] if cache["squeeze"] else dx


def adapter_equivalent_step(
    params: dict,
    spec: InterfaceSpec,
    h_read: np.ndarray,
    h_write: np.ndarray,
    gate_override: float | None = None,
):
    """Round-trip the read state through both translation networks and gate
    it into the write state; returns (output, cache)."""
    if spec.variant != "pull_standard":
        raise ValueError("adapter-equivalent path needs pull_standard translations")
    h_in, squeeze = _as_batch(h_read)
    h_w, _ = _as_batch(h_write)
    if h_in.shape[-1] != spec.d_primary or h_w.shape[-1] != spec.d_primary:
        raise DimensionMismatch("adapter-equivalent operates on primary-dim states")

    mid, fwd_cache = mlp_forward(params, f"{FORWARD}.trans", h_in)
    f_out, rev_cache = mlp_forward(params, f"{REVERSE}.trans", mid)
    if gate_override is None:
        gate_out, g_cache = mlp_forward(params, f"{REVERSE}.gate", h_w)
        sigma = sigmoid(gate_out)
    else:
        sigma = np.full((h_w.shape[0], 1), float(gate_override))
        g_cache = None
    out = (1.0 - sigma) * h_w + sigma * f_out
    cache = {
        "squeeze": squeeze,
        "h_w": h_w,
        "f_out": f_out,
        "sigma": sigma,
        "fwd_cache": fwd_cache,
        "rev_cache": rev_cache,
        "g_cache": g_cache,
        "override": gate_override,
    }
    return (out[0] if squeeze else out), cache


def adapter_equivalent_backward(params: dict, spec: InterfaceSpec, cache: dict, dout: np.ndarray, grads: dict):
    """Backward for the round-trip path; returns (dL/dh_read, dL/dh_write)."""
    d = np.asarray(dout, dtype=float)
    if d.ndim == 1:
        d = d[None, :]
    sigma, h_w, f_out = cache["sigma"], cache["h_w"], cache["f_out"]
    d_f = d * sigma
    d_hw = d * (1.0 - sigma)
    if cache["override"] is None:
        d_sigma = d * (f_out - h_w)
        if sigma.shape[-1] == 1:
            d_sigma = d_sigma.sum(axis=-1, keepdims=True)
        d_gate_out = d_sigma * sigma * (1.0 - sigma)
        d_hw = d_hw + mlp_backward(params, f"{REVERSE}.gate", cache["g_cache"], d_gate_out, grads)
    d_mid = mlp_backward(params, f"{REVERSE}.trans", cache["rev_cache"], d_f, grads)
    d_hr = mlp_backward(params, f"{FORWARD}.trans", cache["fwd_cache"], d_mid, grads)
    if cache["squeeze"]:
        return d_hr[0], d_hw[0]
    return d_hr, d_hw
