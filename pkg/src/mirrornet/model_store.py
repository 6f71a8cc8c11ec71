"""Versioned text formats for networks, profiles and bank manifests.

Network file (header "MNN 1")::

    MNN 1
    25,10,6,3,8,25
    <one parameter per line>

Parameters appear in canonical order: layer by layer, the weight matrix in
row-major order, then the layer's bias vector. Numbers carry 17 significant
digits, enough to reproduce any 64-bit float exactly, so save -> load is a
bit-exact round trip.

Profile file (header "MNP 1")::

    MNP 1
    <tau_sig>,<tau_rec>
    <comma-separated mean signature>

Bank manifest: one ``label,network_path,profile_path`` line per entry, paths
resolved relative to the manifest's directory.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .dispatcher import BankEntry, NetworkBank
from .errors import FormatError, TruncationError, UsageError, ValidationError, VersionError
from .network import Network, validate_architecture
from .recognizer import RecognizerProfile

NETWORK_HEADER = "MNN 1"
PROFILE_HEADER = "MNP 1"
MANIFEST_NAME = "bank.manifest"


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _decode_lines(data: bytes, what: str) -> list[str]:
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise FormatError(f"{what} is not ASCII text") from None
    return [line.strip() for line in text.splitlines() if line.strip()]


def _parse_float(token: str, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise FormatError(f"bad number {token!r} in {what}") from None


def save_network(net: Network) -> bytes:
    """Serialize to the MNN 1 text format (canonical parameter order)."""
    lines = [NETWORK_HEADER, ",".join(str(s) for s in net.architecture.layer_sizes)]
    for w, b in zip(net.weights, net.biases):
        lines.extend(_fmt(v) for v in w.reshape(-1))
        lines.extend(_fmt(v) for v in b)
    return ("\n".join(lines) + "\n").encode("ascii")


def load_network(data: bytes) -> Network:
    """Parse an MNN 1 file, re-validating the architecture and every shape."""
    lines = _decode_lines(data, "network file")
    if not lines or lines[0] != NETWORK_HEADER:
        found = lines[0] if lines else "<empty>"
        raise VersionError(f"expected header {NETWORK_HEADER!r}, found {found!r}")
    if len(lines) < 2:
        raise TruncationError("network file is missing the layer-size line")
    try:
        sizes = [int(tok) for tok in lines[1].split(",")]
    except ValueError:
        raise FormatError(f"bad layer-size line {lines[1]!r}") from None
    arch = validate_architecture(sizes)

    expected = sum(sizes[l + 1] * (sizes[l] + 1) for l in range(len(sizes) - 1))
    tokens = lines[2:]
    if len(tokens) != expected:
        raise TruncationError(f"expected {expected} parameters, found {len(tokens)}")
    values = np.array([_parse_float(tok, "network file") for tok in tokens], dtype=np.float64)

    weights, biases = [], []
    cursor = 0
    for l in range(len(sizes) - 1):
        n_out, n_in = sizes[l + 1], sizes[l]
        weights.append(values[cursor:cursor + n_out * n_in].reshape(n_out, n_in))
        cursor += n_out * n_in
        biases.append(values[cursor:cursor + n_out])
        cursor += n_out
    return Network(arch, weights, biases)


def save_profile(profile: RecognizerProfile) -> bytes:
    """Serialize to the MNP 1 text format."""
    lines = [
        PROFILE_HEADER,
        f"{_fmt(profile.tau_sig)},{_fmt(profile.tau_rec)}",
        ",".join(_fmt(v) for v in profile.mean_signature),
    ]
    return ("\n".join(lines) + "\n").encode("ascii")


def load_profile(data: bytes) -> RecognizerProfile:
    """Parse an MNP 1 file; thresholds and the mean signature are re-validated."""
    lines = _decode_lines(data, "profile file")
    if not lines or lines[0] != PROFILE_HEADER:
        found = lines[0] if lines else "<empty>"
        raise VersionError(f"expected header {PROFILE_HEADER!r}, found {found!r}")
    if len(lines) < 3:
        raise TruncationError("profile file needs a threshold line and a signature line")
    taus = lines[1].split(",")
    if len(taus) != 2:
        raise FormatError(f"threshold line must hold tau_sig,tau_rec, found {lines[1]!r}")
    tau_sig = _parse_float(taus[0], "profile file")
    tau_rec = _parse_float(taus[1], "profile file")
    mean = [_parse_float(tok, "profile file") for tok in lines[2].split(",")]
    return RecognizerProfile(np.array(mean, dtype=np.float64), tau_sig, tau_rec)


def _check_label(label: str) -> None:
    if not label:
        raise ValidationError("bank labels must be non-empty")
    if any(c in label for c in ",\n/"):
        raise ValidationError(f"bank label {label!r} may not contain commas, newlines or slashes")


def save_bank(bank: NetworkBank, directory) -> Path:
    """Write <label>.mnn/<label>.mnp per entry plus a manifest; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lines = []
    for entry in bank.entries:
        _check_label(entry.label)
        net_name = f"{entry.label}.mnn"
        prof_name = f"{entry.label}.mnp"
        (directory / net_name).write_bytes(save_network(entry.network))
        (directory / prof_name).write_bytes(save_profile(entry.profile))
        lines.append(f"{entry.label},{net_name},{prof_name}")
    manifest = directory / MANIFEST_NAME
    manifest.write_text("\n".join(lines) + "\n", encoding="ascii")
    return manifest


def load_bank(manifest_path) -> NetworkBank:
    """Load every entry a manifest references; labels and dimensions are re-validated."""
    manifest_path = Path(manifest_path)
    base = manifest_path.parent
    entries = []
    for line_no, raw in enumerate(manifest_path.read_text(encoding="ascii").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise FormatError(
                f"{manifest_path}:{line_no}: expected label,network_path,profile_path"
            )
        label, net_path, prof_path = parts
        network = load_network((base / net_path).read_bytes())
        profile = load_profile((base / prof_path).read_bytes())
        entries.append(BankEntry(label, network, profile))
    if not entries:
        raise UsageError(f"{manifest_path}: manifest lists no entries")
    return NetworkBank(entries)
