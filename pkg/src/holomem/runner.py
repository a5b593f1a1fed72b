"""Experiment orchestration: dataset ingestion, single recalls, capacity
sweeps, and the mixed-set experiment, with deterministic CSV and metadata
output.

Fixing the dataset, the configuration, and the seeds fixes every output
byte; nothing here consults the clock or ambient randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corruption import CorruptionSpec
from .encoding import (
    ImageRaw,
    Mode,
    WaveState,
    amplitude_params,
    encode,
    phase_params,
    phase_scale_for,
    preprocess,
)
from .errors import DatasetEmpty, DimensionMismatch
from .memory import (
    DEFAULT_BYTE_BUDGET,
    FACTORED,
    MemoryMatrix,
    RecallReport,
    load_memory,
    recall,
    recall_clean,
    recall_iterated,
    store,
)
from .metrics import QualityScore, psnr
from .pgm import read_pgm, write_pgm


@dataclass
class RunConfig:
    """Shared knobs for the experiment entry points."""

    dataset_dir: Path | None = None
    memory_path: Path | None = None
    mode: Mode = Mode.AMPLITUDE
    backend: str = FACTORED
    corruption: CorruptionSpec | None = None
    p_values: list[int] = field(default_factory=list)
    seeds: list[int] = field(default_factory=lambda: [0])
    output_dir: Path = Path(".")
    clean: bool = False
    iters: int = 1
    byte_budget: int = DEFAULT_BYTE_BUDGET
    query_index: int = 0


@dataclass(frozen=True)
class SweepRow:
    """One aggregated sweep cell: stored count x corruption over all seeds.

    psnr_mean/psnr_std cover the finite PSNR values only; +inf results
    (exact reconstructions) are tallied in sentinel_count and the mean is
    itself +inf when every seed was exact. seed_count is the number of
    seeds run for the cell.
    """

    p: int
    corruption: str
    psnr_mean: float
    psnr_std: float
    accuracy: float
    seed_count: int
    sentinel_count: int = 0


def load_dataset(dataset_dir) -> list[ImageRaw]:
    """All *.pgm files in the directory, sorted by filename.

    Images must share one resolution; a mismatch is a hard error rather
    than a silent resample, since W*H fixes the memory dimension.
    """
    paths = sorted(Path(dataset_dir).glob("*.pgm"))
    if not paths:
        raise DatasetEmpty(f"no .pgm files in {dataset_dir}")
    images = [read_pgm(p) for p in paths]
    w, h = images[0].width, images[0].height
    for path, img in zip(paths, images):
        if (img.width, img.height) != (w, h):
            raise DimensionMismatch(
                f"{path}: {img.width}x{img.height} differs from dataset {w}x{h}"
            )
    return images


def encoding_params_for(patterns, mode: Mode):
    if mode == Mode.PHASE:
        return phase_params(patterns[0].size, phase_scale_for(patterns))
    return amplitude_params()


def build_memory(images: list[ImageRaw], mode: Mode, backend: str = FACTORED,
                 byte_budget: int = DEFAULT_BYTE_BUDGET) -> MemoryMatrix:
    """Preprocess, encode, and store a whole image list."""
    patterns = [preprocess(img) for img in images]
    params = encoding_params_for(patterns, mode)
    states = [encode(p, params) for p in patterns]
    return store(states, backend=backend, byte_budget=byte_budget)


def _recall_with(cfg: RunConfig, m: MemoryMatrix, query: WaveState,
                 width: int, height: int) -> RecallReport:
    if cfg.iters > 1:
        return recall_iterated(m, query, cfg.iters, width, height)
    if cfg.clean:
        return recall_clean(m, query, width, height)
    return recall(m, query, width, height)


def _fmt(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return f"{value:.6f}"


def write_metadata(path, entries: list[tuple[str, object]]) -> None:
    """Flat key=value record, one entry per line, insertion order."""
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in entries:
            fh.write(f"{key}={value}\n")


def _common_meta(cfg: RunConfig) -> list[tuple[str, object]]:
    return [
        ("dataset", cfg.dataset_dir if cfg.dataset_dir is not None else "none"),
        ("memory", cfg.memory_path if cfg.memory_path is not None else "none"),
        ("mode", cfg.mode),
        ("backend", cfg.backend),
        ("corruption", cfg.corruption.text() if cfg.corruption else "none"),
        ("clean", int(cfg.clean)),
        ("iters", cfg.iters),
        ("seeds", ",".join(str(s) for s in cfg.seeds)),
    ]


def run_recall(cfg: RunConfig, query_path, truth_path=None,
               log=print) -> tuple[RecallReport, QualityScore | None]:
    """Store the dataset (or load a persisted memory), corrupt and recall
    one query image, and write the reconstruction plus a metadata record.
    """
    if cfg.memory_path is not None:
        m = load_memory(cfg.memory_path)
    else:
        if cfg.dataset_dir is None:
            raise ValueError("recall needs a dataset directory or a memory file")
        m = build_memory(load_dataset(cfg.dataset_dir), cfg.mode, cfg.backend, cfg.byte_budget)

    query_img = read_pgm(query_path)
    if cfg.corruption is not None:
        query_img = cfg.corruption.apply(query_img)
    query = encode(preprocess(query_img), m.params)
    report = _recall_with(cfg, m, query, query_img.width, query_img.height)

    quality = None
    if truth_path is not None:
        quality = psnr(read_pgm(truth_path), report.reconstructed)

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_pgm(query_img, out / "query.pgm")
    write_pgm(report.reconstructed, out / "reconstructed.pgm")

    log(f"selected_index={report.selected_index}")
    for k, c in enumerate(report.overlaps):
        log(f"overlap[{k}]={_fmt(abs(c))}")
    if quality is not None:
        log(f"psnr_db={_fmt(quality.psnr_db)}")

    meta = _common_meta(cfg) + [
        ("query", query_path),
        ("truth", truth_path if truth_path is not None else "none"),
        ("n", m.n),
        ("p", m.p),
        ("width", query_img.width),
        ("height", query_img.height),
        ("beta", repr(m.params.phase_scale)),
        ("selected_index", report.selected_index),
    ]
    if quality is not None:
        meta.append(("psnr_db", _fmt(quality.psnr_db)))
    write_metadata(out / "run.meta", meta)
    return report, quality


def _aggregate(psnrs: list[float]) -> tuple[float, float, int]:
    """Mean/std of the finite values plus the +inf count; all-inf cells
    report an infinite mean rather than capping."""
    finite = [v for v in psnrs if not math.isinf(v)]
    sentinels = len(psnrs) - len(finite)
    if not finite:
        return math.inf, 0.0, sentinels
    return float(np.mean(finite)), float(np.std(finite)), sentinels


def run_sweep(cfg: RunConfig, log=print) -> list[SweepRow]:
    """PSNR and selection accuracy versus stored count.

    For each P in cfg.p_values and each seed: store the first P dataset
    images, query with a corrupted copy of the image at cfg.query_index,
    and score the reconstruction against the uncorrupted original. Writes
    sweep.csv and sweep.meta under cfg.output_dir.
    """
    if cfg.dataset_dir is None:
        raise ValueError("sweep needs a dataset directory")
    images = load_dataset(cfg.dataset_dir)
    if not cfg.p_values:
        raise ValueError("sweep needs at least one entry in p_values")
    if sorted(cfg.p_values) != list(cfg.p_values):
        raise ValueError(f"p_values must be ascending, got {cfg.p_values}")
    if cfg.p_values[0] < 1 or cfg.p_values[-1] > len(images):
        raise ValueError(
            f"p_values must lie in [1, {len(images)}], got {cfg.p_values}"
        )
    if not 0 <= cfg.query_index < cfg.p_values[0]:
        raise ValueError(
            f"query_index {cfg.query_index} is not stored at P={cfg.p_values[0]}"
        )
    if not cfg.seeds:
        raise ValueError("sweep needs at least one seed")

    w, h = images[0].width, images[0].height
    patterns = [preprocess(img) for img in images]
    params = encoding_params_for(patterns, cfg.mode)
    states = [encode(p, params) for p in patterns]
    truth_img = images[cfg.query_index]
    descriptor = cfg.corruption.descriptor() if cfg.corruption else "none"

    rows = []
    for p in cfg.p_values:
        m = store(states[:p], backend=cfg.backend, byte_budget=cfg.byte_budget)
        psnrs = []
        hits = 0
        for seed in cfg.seeds:
            qimg = truth_img
            if cfg.corruption is not None:
                qimg = cfg.corruption.with_seed(seed).apply(truth_img)
            query = encode(preprocess(qimg), params)
            report = _recall_with(cfg, m, query, w, h)
            psnrs.append(psnr(truth_img, report.reconstructed).psnr_db)
            hits += int(report.selected_index == cfg.query_index)
        mean, std, sentinels = _aggregate(psnrs)
        rows.append(SweepRow(
            p=p,
            corruption=descriptor,
            psnr_mean=mean,
            psnr_std=std,
            accuracy=hits / len(cfg.seeds),
            seed_count=len(cfg.seeds),
            sentinel_count=sentinels,
        ))

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "sweep.csv", "w", encoding="utf-8") as fh:
        fh.write("p,corruption,psnr_mean,psnr_std,accuracy,seed_count\n")
        for r in rows:
            fh.write(f"{r.p},{r.corruption},{_fmt(r.psnr_mean)},{_fmt(r.psnr_std)},"
                     f"{_fmt(r.accuracy)},{r.seed_count}\n")
    meta = _common_meta(cfg) + [
        ("p_values", ",".join(str(p) for p in cfg.p_values)),
        ("query_index", cfg.query_index),
        ("n", w * h),
        ("width", w),
        ("height", h),
        ("beta", repr(params.phase_scale)),
    ]
    meta += [(f"sentinels_p{r.p}", r.sentinel_count) for r in rows]
    write_metadata(out / "sweep.meta", meta)

    for r in rows:
        log(f"p={r.p} corruption={r.corruption} psnr_mean={_fmt(r.psnr_mean)} "
            f"psnr_std={_fmt(r.psnr_std)} accuracy={_fmt(r.accuracy)} seeds={r.seed_count}")
    return rows


@dataclass(frozen=True)
class MixedSetRow:
    """Per-set scores of the mixed-set experiment."""

    set_index: int
    queries: int
    accuracy: float
    in_set_rate: float
    psnr_mean: float
    psnr_std: float
    sentinel_count: int


def run_mixed_set(cfg: RunConfig, set_dirs, per_set: int = 10,
                  log=print) -> list[MixedSetRow]:
    """Store `per_set` images from each directory simultaneously and query
    corrupted copies of every stored image.

    The corruption seed for the query of global image g under run seed s is
    s + g, so each query sees a different seeded degradation. Reports, per
    set: exact-selection accuracy, the rate of selections landing anywhere
    in the query's own set block, and PSNR of the reconstructions. Writes
    mixed.csv, mixed.meta, and every reconstruction under cfg.output_dir.
    """
    sets = [load_dataset(d) for d in set_dirs]
    for d, imgs in zip(set_dirs, sets):
        if len(imgs) < per_set:
            raise DatasetEmpty(f"{d}: need {per_set} images, found {len(imgs)}")
    sets = [imgs[:per_set] for imgs in sets]
    images = [img for imgs in sets for img in imgs]
    w, h = images[0].width, images[0].height
    for img in images:
        if (img.width, img.height) != (w, h):
            raise DimensionMismatch("mixed sets must share one resolution")

    patterns = [preprocess(img) for img in images]
    params = encoding_params_for(patterns, cfg.mode)
    states = [encode(p, params) for p in patterns]
    m = store(states, backend=cfg.backend, byte_budget=cfg.byte_budget)

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    for s_idx, imgs in enumerate(sets):
        block = range(s_idx * per_set, (s_idx + 1) * per_set)
        psnrs = []
        exact = 0
        in_set = 0
        queries = 0
        for offset, img in enumerate(imgs):
            g = s_idx * per_set + offset
            for seed in cfg.seeds:
                qimg = img
                if cfg.corruption is not None:
                    qimg = cfg.corruption.with_seed(seed + g).apply(img)
                query = encode(preprocess(qimg), params)
                report = _recall_with(cfg, m, query, w, h)
                psnrs.append(psnr(img, report.reconstructed).psnr_db)
                exact += int(report.selected_index == g)
                in_set += int(report.selected_index in block)
                queries += 1
                write_pgm(report.reconstructed,
                          out / f"recon_s{s_idx}_i{offset:03d}_seed{seed}.pgm")
        mean, std, sentinels = _aggregate(psnrs)
        rows.append(MixedSetRow(
            set_index=s_idx,
            queries=queries,
            accuracy=exact / queries,
            in_set_rate=in_set / queries,
            psnr_mean=mean,
            psnr_std=std,
            sentinel_count=sentinels,
        ))

    with open(out / "mixed.csv", "w", encoding="utf-8") as fh:
        fh.write("set,queries,accuracy,in_set_rate,psnr_mean,psnr_std,sentinel_count\n")
        for r in rows:
            fh.write(f"{r.set_index},{r.queries},{_fmt(r.accuracy)},{_fmt(r.in_set_rate)},"
                     f"{_fmt(r.psnr_mean)},{_fmt(r.psnr_std)},{r.sentinel_count}\n")
    meta = _common_meta(cfg) + [
        ("set_dirs", ";".join(str(d) for d in set_dirs)),
        ("per_set", per_set),
        ("n", w * h),
        ("width", w),
        ("height", h),
        ("beta", repr(params.phase_scale)),
    ]
    write_metadata(out / "mixed.meta", meta)

    for r in rows:
        log(f"set={r.set_index} queries={r.queries} accuracy={_fmt(r.accuracy)} "
            f"in_set_rate={_fmt(r.in_set_rate)} psnr_mean={_fmt(r.psnr_mean)}")
    return rows
