"""Converging-diverging feedforward networks.

Layer sizes shrink from the input to a unique smallest central layer and grow
back to the input size. The central layer's activations are the pattern's
signature (its low-dimensional code); the output layer reproduces, "mirrors",
the input. Every node computes tanh(z/2) of its bias-plus-weighted-sum.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, ValidationError
from .rng import seeded_rng

WEIGHT_INIT_RANGE = 0.2


@dataclass(frozen=True)
class Architecture:
    """Validated layer-size profile. Construct via :func:`validate_architecture`."""

    layer_sizes: tuple[int, ...]

    @property
    def input_size(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_size(self) -> int:
        return self.layer_sizes[-1]

    @property
    def num_weight_layers(self) -> int:
        return len(self.layer_sizes) - 1

    @property
    def center_position(self) -> int:
        """Index of the smallest (code) layer within layer_sizes."""
        sizes = self.layer_sizes
        return min(range(len(sizes)), key=lambda i: sizes[i])

    @property
    def center_size(self) -> int:
        return self.layer_sizes[self.center_position]


def validate_architecture(sizes) -> Architecture:
    """Check the shrink-then-grow shape rules and return an Architecture.

    Rules: at least 3 layers, every size >= 1, first size equals last size,
    sizes strictly decrease from the input to a unique smallest interior
    layer and strictly increase from there to the output. Violations raise
    :class:`ValidationError` naming the broken rule.
    """
    try:
        sizes = tuple(operator.index(s) for s in sizes)
    except TypeError:
        raise ValidationError("layer sizes must be integers") from None
    if len(sizes) < 3:
        raise ValidationError(f"need at least 3 layers (input, hidden, output), got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise ValidationError("every layer size must be at least 1")
    if sizes[0] != sizes[-1]:
        raise ValidationError(f"output size {sizes[-1]} must equal input size {sizes[0]}")
    center = min(range(len(sizes)), key=lambda i: sizes[i])
    if center == 0 or center == len(sizes) - 1:
        raise ValidationError("the smallest layer must be an interior layer")
    for i in range(center):
        if sizes[i] <= sizes[i + 1]:
            raise ValidationError(
                f"sizes must strictly decrease toward the code layer; {sizes[i]} -> {sizes[i + 1]} at position {i}"
            )
    for i in range(center, len(sizes) - 1):
        if sizes[i] >= sizes[i + 1]:
            raise ValidationError(
                f"sizes must strictly increase after the code layer; {sizes[i]} -> {sizes[i + 1]} at position {i}"
            )
    return Architecture(sizes)


@dataclass
class Network:
    """Weights and biases for every layer after the input.

    ``weights[l]`` has shape (layer_sizes[l+1], layer_sizes[l]); ``biases[l]``
    matches its first dimension. Parameters must be finite.
    """

    architecture: Architecture
    weights: list[np.ndarray]
    biases: list[np.ndarray]

    def __post_init__(self):
        sizes = self.architecture.layer_sizes
        n_layers = len(sizes) - 1
        if len(self.weights) != n_layers or len(self.biases) != n_layers:
            raise ValidationError("parameter layer count disagrees with the architecture")
        self.weights = [np.asarray(w, dtype=np.float64) for w in self.weights]
        self.biases = [np.asarray(b, dtype=np.float64) for b in self.biases]
        for l, (w, b) in enumerate(zip(self.weights, self.biases)):
            want = (sizes[l + 1], sizes[l])
            if w.shape != want:
                raise ValidationError(f"weight matrix {l} has shape {w.shape}, expected {want}")
            if b.shape != (sizes[l + 1],):
                raise ValidationError(f"bias vector {l} has shape {b.shape}, expected ({sizes[l + 1]},)")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValidationError(f"layer {l} parameters must be finite")

    def copy(self) -> "Network":
        return Network(
            self.architecture,
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
        )


def init_weights(arch: Architecture, seed: int) -> Network:
    """Draw every weight and bias i.i.d. uniform on [-0.2, +0.2].

    The fill order is fixed: layer by layer, the weight matrix in row-major
    order, then the layer's bias vector. Randomness comes from PCG64 keyed
    by the seed, so equal seeds give bit-identical networks.
    """
    rng = seeded_rng(seed)
    sizes = arch.layer_sizes
    weights, biases = [], []
    for l in range(arch.num_weight_layers):
        weights.append(rng.uniform(-WEIGHT_INIT_RANGE, WEIGHT_INIT_RANGE, size=(sizes[l + 1], sizes[l])))
        biases.append(rng.uniform(-WEIGHT_INIT_RANGE, WEIGHT_INIT_RANGE, size=sizes[l + 1]))
    return Network(arch, weights, biases)


def zero_network(arch: Architecture) -> Network:
    """Network with all parameters zero; every layer then outputs zeros."""
    sizes = arch.layer_sizes
    return Network(
        arch,
        [np.zeros((sizes[l + 1], sizes[l])) for l in range(len(sizes) - 1)],
        [np.zeros(sizes[l + 1]) for l in range(len(sizes) - 1)],
    )


def activation(x):
    """Node nonlinearity tanh(x/2), identically (1 - e^-x) / (1 + e^-x)."""
    return np.tanh(x / 2.0)


def activation_derivative(y):
    """Activation slope expressed through its own output: (1 - y^2) / 2."""
    return (1.0 - np.square(y)) / 2.0


@dataclass
class Activations:
    """Record of one forward pass: the input, then each layer's raw sums and outputs."""

    inputs: np.ndarray
    net_inputs: list[np.ndarray]
    outputs: list[np.ndarray]

    @property
    def reconstruction(self) -> np.ndarray:
        return self.outputs[-1]


def forward(net: Network, input_vector) -> Activations:
    """Evaluate layer by layer: z = W a + b, a = tanh(z/2)."""
    x = np.asarray(input_vector, dtype=np.float64).reshape(-1)
    if x.size != net.architecture.input_size:
        raise ShapeError(
            f"input has {x.size} components, network expects {net.architecture.input_size}"
        )
    net_inputs, outputs = [], []
    a = x
    for w, b in zip(net.weights, net.biases):
        z = w @ a + b
        a = activation(z)
        net_inputs.append(z)
        outputs.append(a)
    return Activations(x, net_inputs, outputs)


def reconstruct(net: Network, input_vector) -> np.ndarray:
    """Output-layer activations: the network's mirror of the input."""
    return forward(net, input_vector).reconstruction


def signature(net: Network, input_vector) -> np.ndarray:
    """Activations of the smallest (code) layer: the pattern's signature."""
    acts = forward(net, input_vector)
    return acts.outputs[net.architecture.center_position - 1]
