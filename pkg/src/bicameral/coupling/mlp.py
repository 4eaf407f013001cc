"""Dense ReLU networks over flat parameter dicts, with manual backward passes.

Parameters live in a single {name: ndarray} dict so the optimizer and
checkpointing stay uniform. Layer i of network `prefix` uses keys
"{prefix}.w{i}" (in_dim, out_dim) and "{prefix}.b{i}" (out_dim,).
"""

from __future__ import annotations

import numpy as np


def mlp_init(
    params: dict,
    prefix: str,
    sizes: list[int],
    rng: np.random.Generator,
    zero_last: bool = False,
    last_bias: float = 0.0,
) -> None:
    """Symmetric uniform fan-in init; optionally zero the last layer."""
    for i, (d_in, d_out) in enumerate(zip(sizes, sizes[1:])):
        last = i == len(sizes) - 2
        if last and zero_last:
            w = np.zeros((d_in, d_out))
            b = np.full(d_out, last_bias, dtype=float)
        else:
            bound = 1.0 / np.sqrt(d_in)
            w = rng.uniform(-bound, bound, size=(d_in, d_out))
            b = rng.uniform(-bound, bound, size=d_out)
        params[f"{prefix}.w{i}"] = w
        params[f"{prefix}.b{i}"] = b


def mlp_layer_count(params: dict, prefix: str) -> int:
    i = 0
    while f"{prefix}.w{i}" in params:
        i += 1
    return i


def mlp_forward(params: dict, prefix: str, x: np.ndarray) -> tuple[np.ndarray, list]:
    """ReLU between layers, linear output. Returns (output, cache)."""
    n = mlp_layer_count(params, prefix)
    cache = []
    h = x
    for i in range(n):
        z = h @ params[f"{prefix}.w{i}"] + params[f"{prefix}.b{i}"]
        cache.append((h, z))
        h = z if i == n - 1 else np.maximum(z, 0.0)
    return h, cache


def mlp_backward(
    params: dict, prefix: str, cache: list, dout: np.ndarray, grads: dict
) -> np.ndarray:
    """Accumulate parameter grads into `grads`; returns dL/dx."""
    n = len(cache)
    d = dout
    for i in reversed(range(n)):
        h_in, z = cache[i]
        if i != n - 1:
            d = d * (z > 0.0)
        grads[f"{prefix}.w{i}"] = grads.get(f"{prefix}.w{i}", 0.0) + h_in.T @ d
        grads[f"{prefix}.b{i}"] = grads.get(f"{prefix}.b{i}", 0.0) + d.sum(axis=0)
        d = d @ params[f"{prefix}.w{i}"].T
    return d


def sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out
