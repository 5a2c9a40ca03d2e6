"""Text serialization for trained models.

Layout: `#` header lines (format version, model kind, config echo), then
per-tensor blocks of `tensor <name> <dims...>` followed by the row-major
values as decimal floats.  repr() round-trips float64 exactly.
"""

from __future__ import annotations

import numpy as np

from .linear import LinearModel
from .network import NetworkConfig, NeuralNet

MODEL_FORMAT_VERSION = "1"


class ModelFormatError(ValueError):
    pass


def _write_tensor(fh, name: str, arr: np.ndarray) -> None:
    arr = np.asarray(arr, dtype=float)
    dims = " ".join(str(d) for d in arr.shape)
    fh.write(f"tensor {name} {dims}".rstrip() + "\n")
    flat = arr.reshape(-1).tolist()
    for start in range(0, len(flat), 8):
        fh.write(" ".join(repr(v) for v in flat[start:start + 8]) + "\n")
    if not flat:
        fh.write("\n")


def _config_pairs(config: NetworkConfig) -> str:
    kh, kw = config.conv_kernel
    return " ".join([
        f"input_rows={config.input_rows}",
        f"input_cols={config.input_cols}",
        f"conv_filters={config.conv_filters}",
        f"conv_kernel={kh}x{kw}",
        f"dense_sizes={','.join(str(d) for d in config.dense_sizes)}",
        f"dropout_rate={config.dropout_rate!r}",
        f"learning_rate={config.learning_rate!r}",
        f"batch_size={config.batch_size}",
        f"epochs={config.epochs}",
        f"validation_fraction={config.validation_fraction!r}",
        f"seed={config.seed}",
        f"input_scale={config.input_scale!r}",
    ])


def _parse_config(text: str) -> NetworkConfig:
    fields = dict(item.split("=", 1) for item in text.split())
    kh, kw = fields["conv_kernel"].split("x")
    return NetworkConfig(
        input_rows=int(fields["input_rows"]),
        input_cols=int(fields["input_cols"]),
        conv_filters=int(fields["conv_filters"]),
        conv_kernel=(int(kh), int(kw)),
        dense_sizes=tuple(int(d) for d in fields["dense_sizes"].split(",")),
        dropout_rate=float(fields["dropout_rate"]),
        learning_rate=float(fields["learning_rate"]),
        batch_size=int(fields["batch_size"]),
        epochs=int(fields["epochs"]),
        validation_fraction=float(fields["validation_fraction"]),
        seed=int(fields["seed"]),
        input_scale=float(fields["input_scale"]),
    )


def save_model(model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# gbpredict-model format_version: {MODEL_FORMAT_VERSION}\n")
        if isinstance(model, NeuralNet):
            fh.write("# kind: nn\n")
            fh.write(f"# config: {_config_pairs(model.config)}\n")
            fh.write(f"# seed: {model.config.seed}\n")
            for name in sorted(model.params):
                _write_tensor(fh, name, model.params[name])
        elif isinstance(model, LinearModel):
            fh.write("# kind: linreg\n")
            _write_tensor(fh, "weights", model.weights)
            _write_tensor(fh, "bias", np.asarray(model.bias))
        else:
            raise TypeError(f"cannot serialize {type(model).__name__}")


def load_model(path):
    headers = {}
    tensors = {}
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    i = 0
    while i < len(lines):
        line = lines[i]
        if line.startswith("#"):
            body = line[1:].strip()
            key, _, value = body.partition(":")
            headers[key.strip()] = value.strip()
            i += 1
        elif line.startswith("tensor "):
            parts = line.split()
            name, dims = parts[1], tuple(int(d) for d in parts[2:])
            count = int(np.prod(dims)) if dims else 1
            values = []
            i += 1
            while len(values) < count and i < len(lines):
                values.extend(float(v) for v in lines[i].split())
                i += 1
            if len(values) != count:
                raise ModelFormatError(f"{path}: tensor {name} is truncated")
            tensors[name] = np.array(values).reshape(dims)
        elif not line.strip():
            i += 1
        else:
            raise ModelFormatError(f"{path}: unexpected line {line!r}")

    version = headers.get("gbpredict-model format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"{path}: unsupported model format {version!r}")
    kind = headers.get("kind")
    if kind == "linreg":
        return LinearModel(weights=tensors["weights"], bias=float(tensors["bias"]))
    if kind == "nn":
        config = _parse_config(headers["config"])
        return NeuralNet(config=config, params=tensors)
    raise ModelFormatError(f"{path}: unknown model kind {kind!r}")


def write_training_curve(curve, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("epoch,train_loss,val_loss\n")
        for epoch, train_loss, val_loss in curve:
            fh.write(f"{epoch},{train_loss!r},{val_loss!r}\n")
