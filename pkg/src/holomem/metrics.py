"""Reconstruction quality (RMSE / PSNR over 8-bit gray levels) and
stored-set diagnostics (pairwise overlap matrix and cross-talk statistics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import ImageRaw, WaveState
from .errors import DimensionMismatch, EmptyInput, LengthMismatch


@dataclass(frozen=True)
class QualityScore:
    """rmse in gray levels; psnr_db = 20*log10(255/rmse), +inf when rmse == 0."""

    rmse: float
    psnr_db: float


def psnr(original: ImageRaw, reconstructed: ImageRaw) -> QualityScore:
    if (original.width, original.height) != (reconstructed.width, reconstructed.height):
        raise DimensionMismatch(
            f"{original.width}x{original.height} vs "
            f"{reconstructed.width}x{reconstructed.height}"
        )
    diff = original.pixels.astype(np.float64) - reconstructed.pixels.astype(np.float64)
    rmse = float(np.sqrt(np.mean(diff * diff)))
    if rmse == 0.0:
        return QualityScore(rmse=0.0, psnr_db=math.inf)
    return QualityScore(rmse=rmse, psnr_db=20.0 * math.log10(255.0 / rmse))


@dataclass(frozen=True)
class GramStats:
    """Pairwise overlap matrix gram[k, l] = <state_k | state_l> plus the
    largest and mean off-diagonal magnitudes (0.0 for a single state)."""

    gram: np.ndarray
    max_offdiag: float
    mean_offdiag: float


def gram_stats(states: list[WaveState]) -> GramStats:
    if len(states) == 0:
        raise EmptyInput("need at least one state")
    n = states[0].n
    for s in states[1:]:
        if s.n != n:
            raise DimensionMismatch(f"states mix dimensions {n} and {s.n}")
    stacked = np.vstack([s.amplitudes for s in states])
    gram = np.conj(stacked) @ stacked.T
    p = gram.shape[0]
    if p == 1:
        return GramStats(gram=gram, max_offdiag=0.0, mean_offdiag=0.0)
    off = np.abs(gram[~np.eye(p, dtype=bool)])
    return GramStats(gram=gram, max_offdiag=float(off.max()), mean_offdiag=float(off.mean()))


def selection_accuracy(reports, truth) -> float:
    """Fraction of recall reports whose selected index matches the truth entry."""
    if len(reports) != len(truth):
        raise LengthMismatch(f"{len(reports)} reports vs {len(truth)} truth entries")
    if len(reports) == 0:
        raise EmptyInput("no reports to score")
    hits = sum(1 for r, t in zip(reports, truth) if r.selected_index == int(t))
    return hits / len(reports)
