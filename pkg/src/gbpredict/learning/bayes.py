"""Multinomial naive Bayes for nonnegative integer count features."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MultinomialNaiveBayes:
    classes: np.ndarray       # ascending class labels
    log_prior: np.ndarray     # (n_classes,)
    log_theta: np.ndarray     # (n_classes, n_features), add-one smoothed

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        scores = X @ self.log_theta.T + self.log_prior
        # argmax takes the first maximum; classes are ascending, so ties go
        # to the smaller label
        return self.classes[np.argmax(scores, axis=1)]


def fit_naive_bayes(X, y) -> MultinomialNaiveBayes:
    X = np.asarray(X)
    y = np.asarray(y)
    if np.any(X < 0) or not np.issubdtype(X.dtype, np.integer):
        raise ValueError("features must be nonnegative integers")
    classes = np.unique(y)
    log_prior = np.empty(len(classes))
    log_theta = np.empty((len(classes), X.shape[1]))
    for k, c in enumerate(classes):
        rows = X[y == c]
        log_prior[k] = np.log(len(rows) / len(y))
        counts = rows.sum(axis=0).astype(float) + 1.0
        log_theta[k] = np.log(counts / counts.sum())
    return MultinomialNaiveBayes(classes=classes, log_prior=log_prior, log_theta=log_theta)
