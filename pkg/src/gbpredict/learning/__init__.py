"""Regression and classification models plus evaluation metrics."""

from .bayes import MultinomialNaiveBayes, fit_naive_bayes
from .linear import LinearModel, fit_linear_regression
from .metrics import (
    ConstantTargetError,
    EvalReport,
    evaluate,
    overshoot_rate,
    r_squared,
    rounded_accuracy,
)
from .modelio import load_model, save_model, write_training_curve
from .network import (
    AdamState,
    NetworkConfig,
    NeuralNet,
    adam_step,
    log_cosh,
    nn_forward,
    nn_init,
    nn_loss_and_gradient,
    train,
)

__all__ = [
    "AdamState",
    "ConstantTargetError",
    "EvalReport",
    "LinearModel",
    "MultinomialNaiveBayes",
    "NetworkConfig",
    "NeuralNet",
    "adam_step",
    "evaluate",
    "fit_linear_regression",
    "fit_naive_bayes",
    "load_model",
    "log_cosh",
    "nn_forward",
    "nn_init",
    "nn_loss_and_gradient",
    "overshoot_rate",
    "r_squared",
    "rounded_accuracy",
    "save_model",
    "train",
    "write_training_curve",
]
