"""Parallel recognition: run one input through a bank of per-class networks.

Every bank entry classifies the input independently. Among the entries that
accept it, the winner is the one with the smallest threshold-normalized
distance sum, so both acceptance criteria contribute on comparable scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, UsageError, ValidationError
from .network import Network
from .recognizer import RecognizerProfile, classify


@dataclass(frozen=True)
class BankEntry:
    label: str
    network: Network
    profile: RecognizerProfile


@dataclass
class NetworkBank:
    """Named collection of (network, profile) pairs sharing one input size."""

    entries: list[BankEntry]

    def __post_init__(self):
        seen = set()
        for entry in self.entries:
            if not entry.label:
                raise ValidationError("bank labels must be non-empty")
            if entry.label in seen:
                raise ValidationError(f"duplicate bank label {entry.label!r}")
            seen.add(entry.label)
            mu_len = entry.profile.mean_signature.size
            code_len = entry.network.architecture.center_size
            if mu_len != code_len:
                raise ValidationError(
                    f"{entry.label!r}: mean signature length {mu_len} does not match code layer size {code_len}"
                )
        dims = {entry.network.architecture.input_size for entry in self.entries}
        if len(dims) > 1:
            raise ValidationError(f"bank networks disagree on input size: {sorted(dims)}")

    @property
    def input_size(self) -> int:
        return self.entries[0].network.architecture.input_size


@dataclass(frozen=True)
class DispatchRecord:
    label: str
    d_sig: float
    d_rec: float
    accepted: bool
    score: float


@dataclass
class DispatchResult:
    """Winner (if any entry accepted) plus one record per bank entry."""

    winner: str | None
    records: list[DispatchRecord]


def _term(distance: float, tau: float) -> float:
    if tau > 0.0:
        return distance / tau
    return 0.0 if distance == 0.0 else math.inf


def dispatch(bank: NetworkBank, input_vector) -> DispatchResult:
    """Classify against every entry and name the best-mirroring one.

    The winner minimizes d_sig/tau_sig + d_rec/tau_rec among accepting
    entries (a zero threshold contributes 0 when its distance is also 0).
    Ties break toward the lexicographically smaller label, so the result is
    independent of entry order.
    """
    if not bank.entries:
        raise UsageError("cannot dispatch on an empty bank")
    x = np.asarray(input_vector, dtype=np.float64).reshape(-1)
    if x.size != bank.input_size:
        raise ShapeError(f"input has {x.size} components, bank expects {bank.input_size}")
    records = []
    for entry in bank.entries:
        decision = classify(entry.profile, entry.network, x)
        score = _term(decision.d_sig, entry.profile.tau_sig) + _term(
            decision.d_rec, entry.profile.tau_rec
        )
        records.append(
            DispatchRecord(entry.label, decision.d_sig, decision.d_rec, decision.accepted, score)
        )
    accepted = [r for r in records if r.accepted]
    winner = min(accepted, key=lambda r: (r.score, r.label)).label if accepted else None
    return DispatchResult(winner, records)
