"""Evaluation metrics: coefficient of determination, overshoot rate,
rounded-prediction accuracy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ConstantTargetError(ValueError):
    """r-squared is undefined when the actual values have zero variance."""


@dataclass(frozen=True)
class EvalReport:
    r_squared: float
    overshoot_rate: float
    accuracy: float
    n_samples: int

    def as_csv(self) -> str:
        return (
            "r_squared,overshoot_rate,accuracy,n_samples\n"
            f"{self.r_squared!r},{self.overshoot_rate!r},{self.accuracy!r},{self.n_samples}\n"
        )


def r_squared(pred, actual) -> float:
    """1 - SS_res / SS_tot; 1 for a perfect fit, 0 for the mean predictor,
    negative for worse-than-mean models."""
    pred = np.asarray(pred, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if pred.shape != actual.shape:
        raise ValueError(f"shape mismatch: {pred.shape} vs {actual.shape}")
    if actual.size < 2:
        raise ValueError("need at least two observations")
    ss_tot = float(np.sum((actual - actual.mean()) ** 2))
    if ss_tot == 0.0:
        raise ConstantTargetError("actual values are constant")
    ss_res = float(np.sum((pred - actual) ** 2))
    return 1.0 - ss_res / ss_tot


def overshoot_rate(pred, actual) -> float:
    """Fraction of predictions strictly greater than the true value."""
    pred = np.asarray(pred, dtype=float)
    actual = np.asarray(actual, dtype=float)
    return float(np.mean(pred > actual))


def rounded_accuracy(pred, actual) -> float:
    pred = np.asarray(pred, dtype=float)
    actual = np.asarray(actual, dtype=float)
    return float(np.mean(np.round(pred) == actual))


def evaluate(pred, actual) -> EvalReport:
    pred = np.asarray(pred, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if pred.size == 0:
        raise ValueError("empty test set")
    return EvalReport(
        r_squared=r_squared(pred, actual),
        overshoot_rate=overshoot_rate(pred, actual),
        accuracy=rounded_accuracy(pred, actual),
        n_samples=int(actual.size),
    )
