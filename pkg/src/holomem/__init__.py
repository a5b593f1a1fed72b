"""Holographic (complex-valued Hopfield) associative memory.

Store grayscale images as wave states via Hebbian self-interference and
selectively reconstruct the best-matching stored image from occluded or
noisy queries, with PSNR and cross-talk diagnostics.
"""

from .corruption import CorruptionSpec, SplitMix64, occlude, salt_pepper
from .encoding import (
    EncodingParams,
    ImageRaw,
    Mode,
    WaveState,
    amplitude_params,
    decode,
    encode,
    phase_params,
    phase_scale_for,
    preprocess,
    to_image,
)
from .memory import (
    DEFAULT_BYTE_BUDGET,
    DENSE,
    FACTORED,
    MemoryMatrix,
    RecallReport,
    load_memory,
    recall,
    recall_clean,
    recall_iterated,
    save_memory,
    store,
)
from .metrics import GramStats, QualityScore, gram_stats, psnr, selection_accuracy
from .pgm import read_pgm, write_pgm
from .runner import RunConfig, SweepRow, build_memory, load_dataset, run_mixed_set, run_recall, run_sweep
from .synth import generate_dataset, generate_set_family, gram_schmidt

__version__ = "0.1.0"

__all__ = [
    "CorruptionSpec",
    "DEFAULT_BYTE_BUDGET",
    "DENSE",
    "EncodingParams",
    "FACTORED",
    "GramStats",
    "ImageRaw",
    "MemoryMatrix",
    "Mode",
    "QualityScore",
    "RecallReport",
    "RunConfig",
    "SplitMix64",
    "SweepRow",
    "WaveState",
    "amplitude_params",
    "build_memory",
    "decode",
    "encode",
    "generate_dataset",
    "generate_set_family",
    "gram_schmidt",
    "gram_stats",
    "load_dataset",
    "load_memory",
    "occlude",
    "phase_params",
    "phase_scale_for",
    "preprocess",
    "psnr",
    "read_pgm",
    "recall",
    "recall_clean",
    "recall_iterated",
    "run_mixed_set",
    "run_recall",
    "run_sweep",
    "salt_pepper",
    "save_memory",
    "selection_accuracy",
    "store",
    "to_image",
    "write_pgm",
]
