"""Report figures rendered next to the delimited outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_training_curve(curve, path) -> None:
    """Train/validation loss per epoch."""
    epochs = [row[0] for row in curve]
    train_loss = [row[1] for row in curve]
    val_loss = [row[2] for row in curve]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(epochs, train_loss, label="train")
    if not all(np.isnan(val_loss)):
        ax.plot(epochs, val_loss, label="validation")
    ax.set_xlabel("epoch")
    ax.set_ylabel("mean log-cosh loss")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_prediction_scatter(pred, actual, path, title: str = "") -> None:
    """Predicted vs actual, with the identity line for reference."""
    pred = np.asarray(pred, dtype=float)
    actual = np.asarray(actual, dtype=float)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(actual, pred, s=6, alpha=0.4, linewidths=0)
    lo = min(actual.min(), pred.min())
    hi = max(actual.max(), pred.max())
    ax.plot([lo, hi], [lo, hi], color="black", linewidth=0.8)
    ax.set_xlabel("actual")
    ax.set_ylabel("predicted")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
