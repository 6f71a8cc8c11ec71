"""Gradient-descent training of mirror networks.

The target of every sample is the sample itself. Backpropagation descends on
L = 1/2 * sum((output - input)^2); the reported figure is the per-component
mean squared error. Hidden layers step with a learning rate raised by a
configurable factor (default +10%) over the output layer's rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ShapeError, UsageError, ValidationError
from .network import Activations, Network, activation_derivative, forward
from .rng import seeded_rng

STOP_TARGET_REACHED = "target reached"
STOP_EPOCH_BUDGET = "epoch budget"


@dataclass
class TrainConfig:
    """Hyperparameters for :func:`train`."""

    base_rate: float
    hidden_multiplier: float = 1.1
    max_epochs: int = 1000
    target_mse: float = 0.0
    shuffle_seed: int = 0

    def __post_init__(self):
        if not self.base_rate > 0:
            raise ValidationError("base_rate must be positive")
        if not self.hidden_multiplier > 0:
            raise ValidationError("hidden_multiplier must be positive")
        if self.max_epochs < 1:
            raise ValidationError("max_epochs must be at least 1")
        if self.target_mse < 0:
            raise ValidationError("target_mse must be non-negative")


@dataclass
class Gradients:
    """Loss gradients, shape-congruent with a Network's weights and biases."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]


@dataclass
class TrainReport:
    """Per-epoch mean MSE trajectory plus why training stopped."""

    epoch_mse: list[float]
    epochs_run: int
    stop_reason: str

    def __post_init__(self):
        if len(self.epoch_mse) != self.epochs_run:
            raise ValidationError("epoch_mse length must equal epochs_run")

    def to_text(self) -> str:
        """One "epoch,mse" line per epoch (1-based), then a stop-reason line."""
        lines = [f"{i},{m:.17g}" for i, m in enumerate(self.epoch_mse, start=1)]
        lines.append(self.stop_reason)
        return "\n".join(lines) + "\n"


def mse(output, target) -> float:
    """Per-component mean squared error between two equal-length vectors."""
    o = np.asarray(output, dtype=np.float64).reshape(-1)
    t = np.asarray(target, dtype=np.float64).reshape(-1)
    if o.size != t.size:
        raise ShapeError(f"length mismatch: {o.size} vs {t.size}")
    if o.size == 0:
        raise UsageError("mse of empty vectors is undefined")
    d = o - t
    return float(d @ d) / d.size


def training_loss(net: Network, input_vector) -> float:
    """Internal descent objective: 1/2 * sum((mirror - input)^2)."""
    x = np.asarray(input_vector, dtype=np.float64).reshape(-1)
    d = forward(net, x).reconstruction - x
    return 0.5 * float(d @ d)


def _grads_from_activations(net: Network, acts: Activations) -> Gradients:
    grad_w: list = [None] * len(net.weights)
    grad_b: list = [None] * len(net.biases)
    delta = (acts.outputs[-1] - acts.inputs) * activation_derivative(acts.outputs[-1])
    for l in range(len(net.weights) - 1, -1, -1):
        below = acts.outputs[l - 1] if l > 0 else acts.inputs
        grad_w[l] = np.outer(delta, below)
        grad_b[l] = delta
        if l > 0:
            delta = (net.weights[l].T @ delta) * activation_derivative(acts.outputs[l - 1])
    return Gradients(grad_w, grad_b)


def backprop_gradients(net: Network, input_vector) -> Gradients:
    """Chain-rule gradients of the training loss with the input as target."""
    return _grads_from_activations(net, forward(net, input_vector))


def sgd_step(net: Network, grads: Gradients, config: TrainConfig) -> None:
    """Apply one descent update in place.

    The last (output) layer steps with base_rate; every earlier layer steps
    with base_rate * hidden_multiplier.
    """
    if len(grads.weights) != len(net.weights) or len(grads.biases) != len(net.biases):
        raise ShapeError("gradient layer count disagrees with the network")
    last = len(net.weights) - 1
    for l, (gw, gb) in enumerate(zip(grads.weights, grads.biases)):
        gw = np.asarray(gw, dtype=np.float64)
        gb = np.asarray(gb, dtype=np.float64)
        if gw.shape != net.weights[l].shape or gb.shape != net.biases[l].shape:
            raise ShapeError(f"gradient shape mismatch at layer {l}")
        if not (np.all(np.isfinite(gw)) and np.all(np.isfinite(gb))):
            raise NumericError(f"non-finite gradient at layer {l}")
        rate = config.base_rate if l == last else config.base_rate * config.hidden_multiplier
        net.weights[l] -= rate * gw
        net.biases[l] -= rate * gb


def _epoch_order(n: int, shuffle_seed: int, epoch_index: int) -> np.ndarray:
    return seeded_rng(shuffle_seed, epoch_index).permutation(n)


def train_epoch(net: Network, data, config: TrainConfig, epoch_index: int) -> float:
    """One pass over the dataset with per-sample updates.

    Samples are presented in a permutation derived from (shuffle_seed,
    epoch_index). Returns the mean of each sample's pre-update MSE.
    """
    vectors = [np.asarray(v, dtype=np.float64).reshape(-1) for v in data]
    if not vectors:
        raise UsageError("training dataset is empty")
    total = 0.0
    for idx in _epoch_order(len(vectors), config.shuffle_seed, epoch_index):
        acts = forward(net, vectors[idx])
        total += mse(acts.reconstruction, acts.inputs)
        sgd_step(net, _grads_from_activations(net, acts), config)
    return total / len(vectors)


def train(net: Network, data, config: TrainConfig) -> TrainReport:
    """Run epochs until the epoch MSE reaches target_mse or the budget runs out."""
    history: list[float] = []
    reason = STOP_EPOCH_BUDGET
    for epoch in range(config.max_epochs):
        epoch_mse = train_epoch(net, data, config, epoch)
        history.append(epoch_mse)
        if epoch_mse <= config.target_mse:
            reason = STOP_TARGET_REACHED
            break
    return TrainReport(history, len(history), reason)


def finite_difference_check(net: Network, input_vector, epsilon: float = 1e-5) -> float:
    """Compare backprop gradients against central finite differences.

    Every parameter is perturbed by +/-epsilon on a copy of the network and
    the loss difference quotient is matched against the analytic gradient.
    Returns the largest discrepancy, measured relative to the bigger of the
    two gradients; differences below 1e-8 in magnitude are reported as-is,
    since at that scale the quotient itself carries no more precision.
    """
    if not epsilon > 0:
        raise ValidationError("epsilon must be positive")
    x = np.asarray(input_vector, dtype=np.float64).reshape(-1)
    analytic = backprop_gradients(net, x)
    work = net.copy()
    worst = 0.0
    for params, grads in ((work.weights, analytic.weights), (work.biases, analytic.biases)):
        for arr, grad in zip(params, grads):
            flat = arr.reshape(-1)
            gflat = np.asarray(grad, dtype=np.float64).reshape(-1)
            for k in range(flat.size):
                saved = flat[k]
                flat[k] = saved + epsilon
                up = training_loss(work, x)
                flat[k] = saved - epsilon
                down = training_loss(work, x)
                flat[k] = saved
                fd = (up - down) / (2.0 * epsilon)
                diff = abs(fd - gflat[k])
                if diff >= 1e-8:
                    diff /= max(abs(fd), abs(gflat[k]))
                worst = max(worst, diff)
    return worst
