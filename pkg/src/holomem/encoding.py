"""Image preprocessing and wave-state encoding.

Raw grayscale images become zero-mean unit-norm pattern vectors, which
are carried into complex wave states either directly (amplitude mode,
real components) or as constant-magnitude phasors (phase mode, where
component_j = (1/sqrt(N)) * exp(i * beta * value_j)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import ConstantImage, DimensionMismatch, PhaseOverflow


class Mode(IntEnum):
    AMPLITUDE = 0
    PHASE = 1

    @classmethod
    def parse(cls, name: str) -> "Mode":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown encoding mode {name!r}") from None

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class ImageRaw:
    """Grayscale image: (height, width) uint8 grid of levels in [0, 255]."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise DimensionMismatch(f"image dims must be positive, got {self.width}x{self.height}")
        px = np.asarray(self.pixels)
        if px.shape != (self.height, self.width):
            raise DimensionMismatch(
                f"pixel grid {px.shape} does not match {self.width}x{self.height}"
            )
        if px.dtype != np.uint8:
            if px.min() < 0 or px.max() > 255:
                raise ValueError("pixel values outside [0, 255]")
            px = px.astype(np.uint8)
        object.__setattr__(self, "pixels", px)

    @property
    def n(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class EncodingParams:
    """Dataset-level encoding configuration.

    In phase mode `amplitude` is pinned to 1/sqrt(N) so encoded states are
    unit-normalized, and `phase_scale` (radians per unit pattern value) must
    keep every phase within (-pi/2, pi/2] to leave arg() decoding unambiguous.
    """

    mode: Mode
    amplitude: float = 1.0
    phase_scale: float = 0.0


def amplitude_params() -> EncodingParams:
    return EncodingParams(mode=Mode.AMPLITUDE, amplitude=1.0, phase_scale=0.0)


def phase_params(n: int, phase_scale: float) -> EncodingParams:
    if n < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {n}")
    if phase_scale <= 0:
        raise ValueError(f"phase_scale must be positive, got {phase_scale}")
    return EncodingParams(mode=Mode.PHASE, amplitude=1.0 / math.sqrt(n), phase_scale=phase_scale)


def phase_scale_for(patterns) -> float:
    """Largest safe phase scale for a dataset: (pi/2) / max_j |value_j|."""
    peak = max(float(np.max(np.abs(p))) for p in patterns)
    if peak <= 0:
        raise ValueError("patterns have no nonzero component")
    return (math.pi / 2.0) / peak


@dataclass(frozen=True)
class WaveState:
    """Complex state vector tagged with its encoding parameters.

    Fresh encoder outputs satisfy the mode's magnitude discipline; recalled
    superpositions in general do not and are carried here unchanged.
    """

    amplitudes: np.ndarray
    params: EncodingParams

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amp.ndim != 1 or amp.size < 1:
            raise DimensionMismatch(f"wave state must be a 1-D vector, got shape {amp.shape}")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def mode(self) -> Mode:
        return self.params.mode

    @property
    def n(self) -> int:
        return self.amplitudes.size


def preprocess(img: ImageRaw) -> np.ndarray:
    """Zero-mean, unit-norm pattern vector from a raw image.

    value_j = pixel_j - mean(pixels), then scaled so sum(value_j^2) = 1.
    Raises ConstantImage when every pixel is equal (zero norm, no direction).
    """
    v = img.pixels.astype(np.float64).ravel()
    v -= v.mean()
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise ConstantImage("all pixels equal; cannot normalize")
    return v / norm


# Absolute slack for the phase budget: beta computed as (pi/2)/max|v| lands
# exactly on the boundary up to float rounding.
_PHASE_TOL = 1e-12


def encode(p: np.ndarray, params: EncodingParams) -> WaveState:
    """Pattern vector -> wave state under the given parameters."""
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size < 1:
        raise DimensionMismatch(f"pattern must be a 1-D vector, got shape {p.shape}")
    if params.mode == Mode.AMPLITUDE:
        return WaveState(p.astype(np.complex128), params)

    beta = params.phase_scale
    if beta <= 0:
        raise ValueError("phase mode requires a positive phase_scale")
    expected_amp = 1.0 / math.sqrt(p.size)
    if abs(params.amplitude - expected_amp) > 1e-12:
        raise DimensionMismatch(
            f"phase params fixed for amplitude {params.amplitude}, "
            f"but dimension {p.size} requires {expected_amp}"
        )
    peak = beta * float(np.max(np.abs(p)))
    if peak > math.pi / 2.0 + _PHASE_TOL:
        raise PhaseOverflow(f"max phase {peak:.6f} rad exceeds pi/2")
    return WaveState(expected_amp * np.exp(1j * beta * p), params)


def decode(w: WaveState, params: EncodingParams) -> np.ndarray:
    """Wave state -> real value vector, inverting the encode map per component.

    Amplitude mode takes real parts. Phase mode takes arg(component)/beta,
    with magnitude-zero components (|c| < 1e-12) decoding to 0. Total
    function: superposed recall outputs are accepted as-is.
    """
    amp = w.amplitudes
    if params.mode == Mode.AMPLITUDE:
        return amp.real.copy()
    beta = params.phase_scale
    if beta <= 0:
        raise ValueError("phase mode requires a positive phase_scale")
    values = np.angle(amp) / beta
    values[np.abs(amp) < 1e-12] = 0.0
    return values


def to_image(values: np.ndarray, width: int, height: int) -> ImageRaw:
    """Min-max rescale a value vector into [0, 255] gray levels, half-up rounding.

    Degenerate input (max == min) maps to the mid gray 128.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size != width * height:
        raise DimensionMismatch(f"{values.size} values cannot fill {width}x{height}")
    if not np.all(np.isfinite(values)):
        raise ValueError("values contain NaN or Inf")
    lo = float(values.min())
    hi = float(values.max())
    if hi == lo:
        px = np.full((height, width), 128, dtype=np.uint8)
    else:
        scaled = (values - lo) * (255.0 / (hi - lo))
        px = np.floor(scaled + 0.5).astype(np.uint8).reshape(height, width)
    return ImageRaw(width=width, height=height, pixels=px)
