"""Conv + dense regression network, written from scratch on numpy.

Topology: a 2x2 valid convolution (300 filters) over the s x 2n exponent
matrix, two dense layers of 500 units, and a linear scalar output.  Hidden
activations are ReLU followed by inverted dropout; training minimizes mean
log-cosh loss with Adam.  Everything is float64 and deterministic per seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class NetworkConfig:
    input_rows: int
    input_cols: int
    conv_filters: int = 300
    conv_kernel: tuple = (2, 2)
    dense_sizes: tuple = (500, 500)
    dropout_rate: float = 0.5
    learning_rate: float = 1e-3
    batch_size: int = 128
    epochs: int = 100
    validation_fraction: float = 0.10
    seed: int = 0
    input_scale: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ValueError("dropout_rate must lie in [0, 1)")
        if self.batch_size < 1 or self.epochs < 1:
            raise ValueError("batch_size and epochs must be at least 1")
        kh, kw = self.conv_kernel
        if self.input_rows < kh or self.input_cols < kw:
            raise ValueError("input smaller than the convolution kernel")

    @property
    def conv_positions(self) -> int:
        kh, kw = self.conv_kernel
        return (self.input_rows - kh + 1) * (self.input_cols - kw + 1)


@dataclass
class NeuralNet:
    config: NetworkConfig
    params: dict  # name -> float64 ndarray

    def predict(self, X) -> np.ndarray:
        """Inference-mode predictions for a batch of input matrices."""
        pred, _ = _forward(self, _scale(self.config, X), None)
        return pred


@dataclass
class AdamState:
    m: dict
    v: dict
    t: int = 0


def nn_init(config: NetworkConfig):
    """He-scaled random weights, zero biases; deterministic per seed."""
    rng = np.random.Generator(np.random.PCG64(config.seed))
    kh, kw = config.conv_kernel
    f = config.conv_filters
    flat = config.conv_positions * f
    h1, h2 = config.dense_sizes
    params = {
        "conv_w": rng.normal(0.0, np.sqrt(2.0 / (kh * kw)), size=(f, 1, kh, kw)),
        "conv_b": np.zeros(f),
        "dense1_w": rng.normal(0.0, np.sqrt(2.0 / flat), size=(flat, h1)),
        "dense1_b": np.zeros(h1),
        "dense2_w": rng.normal(0.0, np.sqrt(2.0 / h1), size=(h1, h2)),
        "dense2_b": np.zeros(h2),
        "out_w": rng.normal(0.0, np.sqrt(1.0 / h2), size=(h2,)),
        "out_b": np.zeros(()),
    }
    net = NeuralNet(config=config, params=params)
    state = AdamState(
        m={k: np.zeros_like(v) for k, v in params.items()},
        v={k: np.zeros_like(v) for k, v in params.items()},
    )
    return net, state


def _scale(config: NetworkConfig, X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        X = X[None, :, :]
    if X.shape[1:] != (config.input_rows, config.input_cols):
        raise ValueError(
            f"expected input shape (*, {config.input_rows}, {config.input_cols}), "
            f"got {X.shape}"
        )
    return X / config.input_scale if config.input_scale != 1.0 else X


def _patches(config: NetworkConfig, X) -> np.ndarray:
    """im2col: (batch, positions, kh*kw) view of all kernel windows."""
    kh, kw = config.conv_kernel
    win = np.lib.stride_tricks.sliding_window_view(X, (kh, kw), axis=(1, 2))
    b = X.shape[0]
    return win.reshape(b, config.conv_positions, kh * kw)


def _dropout_mask(shape, rate, rng):
    return (rng.random(shape) >= rate).astype(float) / (1.0 - rate)


def _forward(net: NeuralNet, X: np.ndarray, rng: Optional[np.random.Generator]):
    """Returns (predictions, cache).  Training mode iff rng is given; the
    dropout masks live in the cache so backward reuses them."""
    cfg = net.config
    p = net.params
    training = rng is not None
    rate = cfg.dropout_rate
    kh, kw = cfg.conv_kernel

    x_col = _patches(cfg, X)
    z1 = x_col @ p["conv_w"].reshape(cfg.conv_filters, kh * kw).T + p["conv_b"]
    a1 = np.maximum(z1, 0.0)
    m1 = _dropout_mask(a1.shape, rate, rng) if training and rate > 0 else None
    a1d = a1 * m1 if m1 is not None else a1

    flat = a1d.reshape(X.shape[0], -1)
    z2 = flat @ p["dense1_w"] + p["dense1_b"]
    a2 = np.maximum(z2, 0.0)
    m2 = _dropout_mask(a2.shape, rate, rng) if training and rate > 0 else None
    a2d = a2 * m2 if m2 is not None else a2

    z3 = a2d @ p["dense2_w"] + p["dense2_b"]
    a3 = np.maximum(z3, 0.0)
    m3 = _dropout_mask(a3.shape, rate, rng) if training and rate > 0 else None
    a3d = a3 * m3 if m3 is not None else a3

    pred = a3d @ p["out_w"] + p["out_b"]
    cache = {
        "x_col": x_col, "z1": z1, "m1": m1, "a1d": a1d,
        "z2": z2, "m2": m2, "a2d": a2d,
        "z3": z3, "m3": m3, "a3d": a3d,
    }
    return pred, cache


def nn_forward(net: NeuralNet, x, training: bool = False,
               rng: Optional[np.random.Generator] = None) -> float:
    """Scalar prediction for one s x 2n input matrix."""
    if training and rng is None:
        raise ValueError("training-mode forward needs an rng for dropout")
    pred, _ = _forward(net, _scale(net.config, x), rng if training else None)
    return float(pred[0])


def log_cosh(r: np.ndarray) -> np.ndarray:
    """Numerically stable log(cosh(r))."""
    a = np.abs(r)
    return a + np.log1p(np.exp(-2.0 * a)) - np.log(2.0)


def nn_loss_and_gradient(net: NeuralNet, X, y,
                         rng: Optional[np.random.Generator] = None):
    """Mean log-cosh loss over the batch plus backprop gradients.

    Dropout masks are sampled once per call and shared between the forward
    and backward passes; pass rng=None for a dropout-free evaluation.
    """
    cfg = net.config
    p = net.params
    X = _scale(cfg, X)
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        raise ValueError("empty batch")
    b = X.shape[0]

    pred, c = _forward(net, X, rng)
    r = pred - y
    loss = float(np.mean(log_cosh(r)))

    dpred = np.tanh(r) / b
    grads = {}
    grads["out_w"] = c["a3d"].T @ dpred
    grads["out_b"] = np.asarray(dpred.sum())

    da3d = np.outer(dpred, p["out_w"])
    da3 = da3d * c["m3"] if c["m3"] is not None else da3d
    dz3 = da3 * (c["z3"] > 0)
    grads["dense2_w"] = c["a2d"].T @ dz3
    grads["dense2_b"] = dz3.sum(axis=0)

    da2d = dz3 @ p["dense2_w"].T
    da2 = da2d * c["m2"] if c["m2"] is not None else da2d
    dz2 = da2 * (c["z2"] > 0)
    flat = c["a1d"].reshape(b, -1)
    grads["dense1_w"] = flat.T @ dz2
    grads["dense1_b"] = dz2.sum(axis=0)

    da1d = (dz2 @ p["dense1_w"].T).reshape(c["z1"].shape)
    da1 = da1d * c["m1"] if c["m1"] is not None else da1d
    dz1 = da1 * (c["z1"] > 0)
    kh, kw = cfg.conv_kernel
    grads["conv_w"] = np.einsum("bpk,bpf->fk", c["x_col"], dz1).reshape(
        cfg.conv_filters, 1, kh, kw
    )
    grads["conv_b"] = dz1.sum(axis=(0, 1))
    return loss, grads


def adam_step(state: AdamState, net: NeuralNet, grads: dict,
              learning_rate: float) -> None:
    """One in-place Adam update with bias correction."""
    state.t += 1
    t = state.t
    for name, g in grads.items():
        m = state.m[name] = ADAM_BETA1 * state.m[name] + (1 - ADAM_BETA1) * g
        v = state.v[name] = ADAM_BETA2 * state.v[name] + (1 - ADAM_BETA2) * g * g
        m_hat = m / (1 - ADAM_BETA1 ** t)
        v_hat = v / (1 - ADAM_BETA2 ** t)
        net.params[name] = net.params[name] - learning_rate * m_hat / (
            np.sqrt(v_hat) + ADAM_EPS
        )


def train(config: NetworkConfig, X, y, progress=None):
    """Train on (X, y); returns (net, curve) where curve rows are
    (epoch, train_loss, val_loss).

    A validation_fraction slice of the data (seeded shuffle) is held out
    from the minibatches and scored in inference mode each epoch.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.shape[0] != y.shape[0] or y.size == 0:
        raise ValueError("dataset is empty or misaligned")

    net, state = nn_init(config)
    rng = np.random.Generator(np.random.PCG64(config.seed + 1))

    order = rng.permutation(X.shape[0])
    n_val = int(round(X.shape[0] * config.validation_fraction))
    val_idx, fit_idx = order[:n_val], order[n_val:]
    if fit_idx.size == 0:
        raise ValueError("validation split leaves no training data")
    X_fit, y_fit = X[fit_idx], y[fit_idx]
    X_val, y_val = X[val_idx], y[val_idx]

    curve = []
    for epoch in range(1, config.epochs + 1):
        perm = rng.permutation(X_fit.shape[0])
        total, count = 0.0, 0
        for start in range(0, len(perm), config.batch_size):
            idx = perm[start:start + config.batch_size]
            loss, grads = nn_loss_and_gradient(net, X_fit[idx], y_fit[idx], rng)
            adam_step(state, net, grads, config.learning_rate)
            total += loss * len(idx)
            count += len(idx)
        train_loss = total / count
        if X_val.shape[0] > 0:
            val_pred, _ = _forward(net, _scale(config, X_val), None)
            val_loss = float(np.mean(log_cosh(val_pred - y_val)))
        else:
            val_loss = float("nan")
        curve.append((epoch, train_loss, val_loss))
        if progress is not None:
            progress(epoch, train_loss, val_loss)
    return net, curve
