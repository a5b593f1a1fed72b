"""Seeded synthetic grayscale datasets.

Random high-resolution images are already nearly orthogonal after
preprocessing; optional Gram-Schmidt orthonormalization makes the stored
patterns exactly orthogonal (up to 8-bit requantization) for controlled
selectivity experiments.
"""

from __future__ import annotations

import numpy as np

from .corruption import SplitMix64
from .encoding import ImageRaw, preprocess, to_image
from .errors import DimensionMismatch


def random_image(width: int, height: int, rng: SplitMix64,
                 lo: int = 0, hi: int = 255) -> ImageRaw:
    """Independent uniform gray levels in [lo, hi], row-major draw order."""
    if not 0 <= lo <= hi <= 255:
        raise ValueError(f"bad gray range [{lo}, {hi}]")
    span = np.uint64(hi - lo + 1)
    raw = rng.next_u64_array(width * height) % span
    px = (raw.astype(np.int64) + lo).astype(np.uint8).reshape(height, width)
    return ImageRaw(width=width, height=height, pixels=px)


def gram_schmidt(patterns: np.ndarray) -> np.ndarray:
    """Orthonormalize rows (modified Gram-Schmidt, two passes)."""
    out = np.array(patterns, dtype=np.float64)
    p, n = out.shape
    if p > n:
        raise DimensionMismatch(f"cannot orthonormalize {p} vectors in dimension {n}")
    for k in range(p):
        v = out[k]
        for _ in range(2):
            for j in range(k):
                v = v - np.dot(out[j], v) * out[j]
        norm = np.linalg.norm(v)
        if norm < 1e-10:
            raise ValueError(f"vector {k} is linearly dependent on its predecessors")
        out[k] = v / norm
    return out


def generate_dataset(count: int, width: int, height: int, seed: int,
                     lo: int = 0, hi: int = 255,
                     orthogonalize: bool = False,
                     family_bias: float = 0.0) -> list[ImageRaw]:
    """`count` seeded random images, optionally orthonormalized as patterns.

    family_bias in (0, 1) blends every image with one shared base image,
    giving a mutually similar family (pairwise pattern correlation around
    the bias) that exhibits genuine recall cross-talk.

    Orthonormalized patterns are rendered back through the [0, 255] rescale,
    so those images always span the full gray range regardless of lo/hi.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not 0.0 <= family_bias < 1.0:
        raise ValueError(f"family_bias must be in [0, 1), got {family_bias}")
    rng = SplitMix64(seed)
    if family_bias > 0.0:
        base = random_image(width, height, rng, lo, hi).pixels.astype(np.float64)
        images = []
        for _ in range(count):
            own = random_image(width, height, rng, lo, hi).pixels.astype(np.float64)
            blended = family_bias * base + (1.0 - family_bias) * own
            px = np.floor(blended + 0.5).astype(np.uint8)
            images.append(ImageRaw(width=width, height=height, pixels=px))
    else:
        images = [random_image(width, height, rng, lo, hi) for _ in range(count)]
    if not orthogonalize:
        return images
    patterns = gram_schmidt(np.vstack([preprocess(img) for img in images]))
    return [to_image(v, width, height) for v in patterns]


def generate_set_family(set_count: int, per_set: int, width: int, height: int,
                        seed: int, lo: int = 0, hi: int = 255,
                        orthogonalize: bool = False,
                        family_bias: float = 0.0) -> list[list[ImageRaw]]:
    """Several dissimilar sets drawn from one stream; orthonormalization is
    joint across all sets so inter-set overlaps vanish too."""
    images = generate_dataset(set_count * per_set, width, height, seed,
                              lo=lo, hi=hi, orthogonalize=orthogonalize,
                              family_bias=family_bias)
    return [images[i * per_set:(i + 1) * per_set] for i in range(set_count)]
