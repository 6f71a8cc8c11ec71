"""Mirror networks: converging-diverging autoencoders for pattern recognition.

A mirror network squeezes an image through a smallest central layer whose
activations form the pattern's signature, then reconstructs ("mirrors") the
input from that code. Recognition accepts a pattern when both its signature
distance to a class mean and its input-to-mirror distance fall within
calibrated thresholds; a bank of per-class networks evaluated in parallel
names the class that mirrors an input best.
"""

from .dispatcher import BankEntry, DispatchRecord, DispatchResult, NetworkBank, dispatch
from .errors import (
    DomainError,
    FormatError,
    MirrorNetError,
    NumericError,
    ShapeError,
    TruncationError,
    UnsupportedError,
    UsageError,
    ValidationError,
    VersionError,
)
from .model_store import (
    load_bank,
    load_network,
    load_profile,
    save_bank,
    save_network,
    save_profile,
)
from .network import (
    Activations,
    Architecture,
    Network,
    activation,
    activation_derivative,
    forward,
    init_weights,
    reconstruct,
    signature,
    validate_architecture,
    zero_network,
)
from .preprocess import (
    GrayImage,
    image_from_unit_vector,
    load_pgm,
    map_to_unit_range,
    preprocess_pipeline,
    rescale_intensities,
    write_pgm,
)
from .recognizer import (
    Decision,
    RecognizerProfile,
    average_signature,
    calibrate_thresholds,
    choose_thresholds,
    classify,
    reconstruction_distance,
    signature_distance,
)
from .rng import seeded_rng
from .synth import generate_dataset
from .trainer import (
    STOP_EPOCH_BUDGET,
    STOP_TARGET_REACHED,
    Gradients,
    TrainConfig,
    TrainReport,
    backprop_gradients,
    finite_difference_check,
    mse,
    sgd_step,
    train,
    train_epoch,
    training_loss,
)

__version__ = "0.1.0"

__all__ = [
    "Activations",
    "Architecture",
    "BankEntry",
    "Decision",
    "DispatchRecord",
    "DispatchResult",
    "DomainError",
    "FormatError",
    "Gradients",
    "GrayImage",
    "MirrorNetError",
    "Network",
    "NetworkBank",
    "NumericError",
    "RecognizerProfile",
    "STOP_EPOCH_BUDGET",
    "STOP_TARGET_REACHED",
    "ShapeError",
    "TrainConfig",
    "TrainReport",
    "TruncationError",
    "UnsupportedError",
    "UsageError",
    "ValidationError",
    "VersionError",
    "activation",
    "activation_derivative",
    "average_signature",
    "backprop_gradients",
    "calibrate_thresholds",
    "choose_thresholds",
    "classify",
    "dispatch",
    "finite_difference_check",
    "forward",
    "generate_dataset",
    "image_from_unit_vector",
    "init_weights",
    "load_bank",
    "load_network",
    "load_pgm",
    "load_profile",
    "map_to_unit_range",
    "mse",
    "preprocess_pipeline",
    "reconstruct",
    "reconstruction_distance",
    "rescale_intensities",
    "save_bank",
    "save_network",
    "save_profile",
    "seeded_rng",
    "sgd_step",
    "signature",
    "signature_distance",
    "train",
    "train_epoch",
    "training_loss",
    "validate_architecture",
    "write_pgm",
    "zero_network",
]
