"""Seeded, bit-reproducible query degradation: occlusion and salt-and-pepper.

Randomness comes from SplitMix64 so the exact corrupted bytes can be
reproduced from (image dims, parameters, seed) in any implementation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoding import ImageRaw

_MASK = (1 << 64) - 1

# SplitMix64 state update and output mix (Steele/Lea/Vigna constants):
#   state += 0x9E3779B97F4A7C15
#   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
#   z = (z ^ z>>27) * 0x94D049BB133111EB; return z ^ z>>31
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Sequential 64-bit generator; draws i outputs mix(seed + i*gamma)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def next_u64_array(self, count: int) -> np.ndarray:
        """The next `count` outputs in one batch (same stream as next_u64)."""
        steps = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(_GAMMA)
        out = _mix(np.uint64(self.state) + steps)
        self.state = (self.state + count * _GAMMA) & _MASK
        return out

    def next_float(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_floats(self, count: int) -> np.ndarray:
        return (self.next_u64_array(count) >> np.uint64(11)) * 2.0**-53

    def next_below(self, bound: int) -> int:
        return self.next_u64() % bound


@dataclass(frozen=True)
class CorruptionSpec:
    """One corruption: kind 'occlude' (fraction) or 'sp' (rate), plus a seed.

    Text form round-trips as "occlude:0.25:seed=42" / "sp:0.6:seed=7";
    the seed part is optional on parse and defaults to 0.
    """

    kind: str
    amount: float
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("occlude", "sp"):
            raise ValueError(f"unknown corruption kind {self.kind!r}")
        if not 0.0 <= self.amount <= 1.0:
            raise ValueError(f"corruption amount must be in [0, 1], got {self.amount}")

    @classmethod
    def parse(cls, text: str) -> "CorruptionSpec | None":
        text = text.strip()
        if text in ("", "none"):
            return None
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"bad corruption spec {text!r}")
        kind = parts[0]
        try:
            amount = float(parts[1])
        except ValueError:
            raise ValueError(f"bad corruption amount in {text!r}") from None
        seed = 0
        if len(parts) == 3:
            if not parts[2].startswith("seed="):
                raise ValueError(f"bad corruption seed in {text!r}")
            seed = int(parts[2][len("seed="):])
        return cls(kind=kind, amount=amount, seed=seed)

    def descriptor(self) -> str:
        """Kind and amount only; the seed-free form used in aggregate rows."""
        return f"{self.kind}:{self.amount:g}"

    def text(self) -> str:
        return f"{self.kind}:{self.amount:g}:seed={self.seed}"

    def with_seed(self, seed: int) -> "CorruptionSpec":
        return CorruptionSpec(kind=self.kind, amount=self.amount, seed=seed)

    def apply(self, img: ImageRaw) -> ImageRaw:
        if self.kind == "occlude":
            return occlude(img, self.amount, self.seed)
        return salt_pepper(img, self.amount, self.seed)


def occlude(img: ImageRaw, f: float, seed: int) -> ImageRaw:
    """Zero out one axis-aligned rectangle covering ~round(f*W*H) pixels.

    The rectangle's aspect ratio follows the image and its position is
    drawn from SplitMix64(seed) (x offset first, then y). Quantizing the
    sides keeps the covered area within half a rectangle column of the
    target. f=0 returns the image unchanged; f=1 blacks it out entirely.
    """
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"occlusion fraction must be in [0, 1], got {f}")
    w, h = img.width, img.height
    target = round(f * w * h)
    if target <= 0:
        return ImageRaw(width=w, height=h, pixels=img.pixels.copy())
    rect_h = min(h, max(1, round((target * h / w) ** 0.5)))
    rect_w = min(w, max(1, round(target / rect_h)))
    rng = SplitMix64(seed)
    x0 = rng.next_below(w - rect_w + 1)
    y0 = rng.next_below(h - rect_h + 1)
    px = img.pixels.copy()
    px[y0:y0 + rect_h, x0:x0 + rect_w] = 0
    return ImageRaw(width=w, height=h, pixels=px)


def salt_pepper(img: ImageRaw, rate: float, seed: int) -> ImageRaw:
    """Replace each pixel, independently with probability `rate`, by 0 or 255.

    Two SplitMix64(seed) draws per pixel in row-major order: the first
    selects the pixel (u < rate), the second picks pepper (0) below 0.5
    and salt (255) otherwise. The stream position is fixed per pixel, so
    output bytes depend only on (dims, rate, seed).
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"noise rate must be in [0, 1], got {rate}")
    rng = SplitMix64(seed)
    draws = rng.next_floats(2 * img.n).reshape(img.height, img.width, 2)
    hit = draws[:, :, 0] < rate
    salt = draws[:, :, 1] >= 0.5
    px = img.pixels.copy()
    px[hit & ~salt] = 0
    px[hit & salt] = 255
    return ImageRaw(width=img.width, height=img.height, pixels=px)
