"""Multiple linear regression via ridge-stabilized normal equations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LinearModel:
    weights: np.ndarray
    bias: float

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        return X @ self.weights + self.bias


def fit_linear_regression(X, y, ridge: float = 1e-8) -> LinearModel:
    """Least squares with a small ridge term for rank safety; deterministic."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] != y.shape[0] or X.shape[0] < 1:
        raise ValueError(f"incompatible shapes {X.shape} and {y.shape}")
    A = np.hstack([X, np.ones((X.shape[0], 1))])
    gram = A.T @ A + ridge * np.eye(A.shape[1])
    theta = np.linalg.solve(gram, A.T @ y)
    return LinearModel(weights=theta[:-1], bias=float(theta[-1]))
