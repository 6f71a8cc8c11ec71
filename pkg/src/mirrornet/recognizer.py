"""Two-threshold pattern recognition on top of a trained mirror network.

A class profile is the mean code-layer signature of its training images plus
two acceptance thresholds: tau_sig bounds the distance between a test
signature and that mean, tau_rec bounds the distance between the test input
and its mirror. Both distances are Euclidean after scaling each vector to
unit norm; a test pattern is accepted only when both fall within (<=) their
thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, UsageError, ValidationError
from .network import Network, forward


@dataclass
class RecognizerProfile:
    """Mean signature of one pattern class plus its two acceptance thresholds."""

    mean_signature: np.ndarray
    tau_sig: float
    tau_rec: float

    def __post_init__(self):
        self.mean_signature = np.asarray(self.mean_signature, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(self.mean_signature)):
            raise ValidationError("mean signature must be finite")
        if self.tau_sig < 0 or self.tau_rec < 0:
            raise ValidationError("thresholds must be non-negative")


@dataclass(frozen=True)
class Decision:
    accepted: bool
    d_sig: float
    d_rec: float


def average_signature(signatures) -> np.ndarray:
    """Componentwise mean of a non-empty collection of equal-length signatures."""
    sigs = [np.asarray(s, dtype=np.float64).reshape(-1) for s in signatures]
    if not sigs:
        raise UsageError("cannot average an empty signature list")
    length = sigs[0].size
    for s in sigs[1:]:
        if s.size != length:
            raise ShapeError(f"signature lengths differ: {s.size} vs {length}")
    return np.mean(sigs, axis=0)


def _unit(v: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(v))
    return v if norm == 0.0 else v / norm


def _normalized_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.size != b.size:
        raise ShapeError(f"length mismatch: {a.size} vs {b.size}")
    return float(np.linalg.norm(_unit(a) - _unit(b)))


def signature_distance(sig, mean_sig) -> float:
    """Euclidean distance between unit-normalized vectors.

    Zero vectors are left unscaled, so the distance from a zero signature to
    a nonzero unit vector is 1.
    """
    return _normalized_distance(sig, mean_sig)


def reconstruction_distance(input_vector, output_vector) -> float:
    """Euclidean distance between the unit-normalized input and its mirror."""
    return _normalized_distance(input_vector, output_vector)


def _distances(net: Network, mean_sig, input_vector) -> tuple[float, float]:
    mu = np.asarray(mean_sig, dtype=np.float64).reshape(-1)
    if mu.size != net.architecture.center_size:
        raise ShapeError(
            f"mean signature has {mu.size} components, code layer has {net.architecture.center_size}"
        )
    acts = forward(net, input_vector)
    sig = acts.outputs[net.architecture.center_position - 1]
    return (
        signature_distance(sig, mu),
        reconstruction_distance(acts.inputs, acts.reconstruction),
    )


def classify(profile: RecognizerProfile, net: Network, input_vector) -> Decision:
    """Accept iff both distances fall within the profile's thresholds.

    Distances exactly equal to a threshold count as within it.
    """
    d_sig, d_rec = _distances(net, profile.mean_signature, input_vector)
    return Decision(d_sig <= profile.tau_sig and d_rec <= profile.tau_rec, d_sig, d_rec)


def choose_thresholds(positive_distances, negative_distances) -> tuple[float, float]:
    """Pick (tau_sig, tau_rec) from observed (d_sig, d_rec) pairs.

    Candidate thresholds on each axis are exactly the values observed across
    all samples; the optimum of a <=-threshold rule always sits at one. The
    chosen pair maximizes accuracy over positives and negatives together.
    Ties go to fewer false accepts, then to the lexicographically smaller
    (tau_sig, tau_rec).
    """
    pos = np.asarray(positive_distances, dtype=np.float64)
    neg = np.asarray(negative_distances, dtype=np.float64)
    if pos.size == 0 or neg.size == 0:
        raise UsageError("need at least one positive and one negative sample")
    pos = np.atleast_2d(pos)
    neg = np.atleast_2d(neg)
    if pos.shape[1] != 2 or neg.shape[1] != 2:
        raise ShapeError("distances must be (d_sig, d_rec) pairs")

    cand_sig = np.unique(np.concatenate([pos[:, 0], neg[:, 0]]))
    cand_rec = np.unique(np.concatenate([pos[:, 1], neg[:, 1]]))
    # accept counts for every candidate pair via 0/1 matrix products
    pos_sig_ok = (pos[None, :, 0] <= cand_sig[:, None]).astype(np.int64)
    pos_rec_ok = (pos[None, :, 1] <= cand_rec[:, None]).astype(np.int64)
    neg_sig_ok = (neg[None, :, 0] <= cand_sig[:, None]).astype(np.int64)
    neg_rec_ok = (neg[None, :, 1] <= cand_rec[:, None]).astype(np.int64)
    true_accepts = pos_sig_ok @ pos_rec_ok.T
    false_accepts = neg_sig_ok @ neg_rec_ok.T
    correct = true_accepts + (neg.shape[0] - false_accepts)

    sig_idx, rec_idx = np.meshgrid(
        np.arange(cand_sig.size), np.arange(cand_rec.size), indexing="ij"
    )
    # primary: most correct; then fewest false accepts; then smaller pair
    order = np.lexsort(
        (rec_idx.ravel(), sig_idx.ravel(), false_accepts.ravel(), -correct.ravel())
    )
    best = order[0]
    return float(cand_sig[sig_idx.ravel()[best]]), float(cand_rec[rec_idx.ravel()[best]])


def calibrate_thresholds(net: Network, mean_sig, positives, negatives) -> tuple[float, float]:
    """Grid-search the thresholds that best separate positives from negatives."""
    positives = list(positives)
    negatives = list(negatives)
    if not positives or not negatives:
        raise UsageError("calibration needs non-empty positives and negatives")
    pos = [_distances(net, mean_sig, v) for v in positives]
    neg = [_distances(net, mean_sig, v) for v in negatives]
    return choose_thresholds(pos, neg)
