"""Seeded synthetic grayscale pattern classes.

Each class is a smooth base pattern, a few random Gaussian bumps stretched to
full [0, 255] contrast. Samples jitter the base by one pixel at most and add
uniform noise of +/-10 gray levels. Everything derives from PCG64 streams
keyed by (seed, class index), so equal seeds produce byte-identical trees.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ValidationError
from .preprocess import GrayImage, write_pgm
from .rng import seeded_rng

NOISE_AMPLITUDE = 10.0
BUMPS_PER_CLASS = 3


def class_label(index: int) -> str:
    return f"class_{index:02d}"


def base_pattern(size: int, rng: np.random.Generator) -> np.ndarray:
    """Smooth size x size field from a few Gaussian bumps, stretched to [0, 255]."""
    yy, xx = np.mgrid[0:size, 0:size]
    field = np.zeros((size, size))
    for _ in range(BUMPS_PER_CLASS):
        cy, cx = rng.uniform(0.1, 0.9, size=2) * (size - 1)
        sigma = rng.uniform(size / 8.0, size / 3.0)
        amp = rng.uniform(0.4, 1.0) * rng.choice([-1.0, 1.0])
        field += amp * np.exp(-((yy - cy) ** 2 + (xx - cx) ** 2) / (2.0 * sigma**2))
    lo, hi = field.min(), field.max()
    if hi == lo:
        return np.full((size, size), 128.0)
    return (field - lo) * 255.0 / (hi - lo)


def _shift(img2d: np.ndarray, dy: int, dx: int) -> np.ndarray:
    padded = np.pad(img2d, 1, mode="edge")
    h, w = img2d.shape
    return padded[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]


def sample_from_base(base: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One noisy variant: +/-1 pixel translation plus uniform gray-level noise."""
    dy, dx = rng.integers(-1, 2, size=2)
    jittered = _shift(base, int(dy), int(dx))
    noisy = jittered + rng.uniform(-NOISE_AMPLITUDE, NOISE_AMPLITUDE, size=base.shape)
    return np.clip(noisy, 0.0, 255.0)


def generate_dataset(out_dir, classes: int, per_class: int, size: int, seed: int) -> dict[str, list[Path]]:
    """Write ``classes`` x ``per_class`` PGM files into per-class directories.

    Returns {class label: written paths}. Identical arguments produce
    byte-identical file trees.
    """
    if classes < 1 or per_class < 1 or size < 1:
        raise ValidationError("classes, per_class and size must all be positive")
    out_dir = Path(out_dir)
    written: dict[str, list[Path]] = {}
    for c in range(classes):
        rng = seeded_rng(seed, c)
        base = base_pattern(size, rng)
        class_dir = out_dir / class_label(c)
        class_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        for s in range(per_class):
            image = GrayImage(size, size, sample_from_base(base, rng).reshape(-1))
            path = class_dir / f"img_{s:03d}.pgm"
            path.write_bytes(write_pgm(image))
            paths.append(path)
        written[class_label(c)] = paths
    return written
