"""Holographic memory: Hebbian storage of wave states and selective recall.

The memory matrix is the sum of self-interferences of the stored states,

    memory[h, j] = sum_k state_k[h] * conj(state_k[j]),

and recall applies it to a query. Reordering the double sum gives the
factored backend: output = sum_k <state_k | query> * state_k, which needs
only the P stored states (O(N*P) work) instead of the dense N x N matrix
(O(N^2) work). Both backends are exact and agree to float precision.

Selection picks k0 = argmax_k |<state_k | query>| (ties to the lowest
index); the recall path is linear throughout, with no sign or sigmoid
nonlinearity.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from . import linalg
from .encoding import EncodingParams, ImageRaw, Mode, WaveState, amplitude_params, decode, phase_params, to_image
from .errors import (
    DimensionMismatch,
    EmptyPatternSet,
    MalformedMemory,
    MatrixTooLarge,
    MixedEncodingModes,
    ZeroState,
)

DENSE = "dense"
FACTORED = "factored"

#: Dense matrices above this many bytes are refused unless the caller raises the budget.
DEFAULT_BYTE_BUDGET = 2 * 1024**3

_BYTES_PER_ENTRY = 16  # complex128


@dataclass(frozen=True)
class MemoryMatrix:
    """Stored associative memory.

    `states` (P x N, one stored wave state per row) is retained by both
    backends; the dense backend additionally holds the Hermitian N x N
    `matrix`. Immutable after construction; recall is read-only.
    """

    backend: str
    n: int
    p: int
    params: EncodingParams
    states: np.ndarray
    matrix: np.ndarray | None = None

    @property
    def mode(self) -> Mode:
        return self.params.mode


@dataclass(frozen=True)
class RecallReport:
    """Everything a single recall produced.

    `output` is the raw superposition, `overlaps[k] = <state_k | query>`,
    and `selected_index` is the argmax of |overlaps| (lowest index on ties).
    `decoded` and `reconstructed` are the displayable forms of `output`.
    """

    output: WaveState
    overlaps: np.ndarray
    selected_index: int
    decoded: np.ndarray
    reconstructed: ImageRaw


def _stack_states(states: list[WaveState]) -> tuple[np.ndarray, EncodingParams]:
    if len(states) == 0:
        raise EmptyPatternSet("need at least one state to store")
    params = states[0].params
    n = states[0].n
    for s in states[1:]:
        if s.n != n:
            raise DimensionMismatch(f"stored states mix dimensions {n} and {s.n}")
        if s.params != params:
            raise MixedEncodingModes(
                f"stored states mix encodings {params} and {s.params}"
            )
    stacked = np.vstack([s.amplitudes for s in states])
    return np.ascontiguousarray(stacked), params


def store(
    states: list[WaveState],
    backend: str = FACTORED,
    byte_budget: int = DEFAULT_BYTE_BUDGET,
) -> MemoryMatrix:
    """Build a memory holding the given states.

    The dense backend materializes the full interference matrix and refuses
    to allocate more than `byte_budget` bytes for it (MatrixTooLarge); the
    factored backend keeps the states verbatim.
    """
    stacked, params = _stack_states(states)
    p, n = stacked.shape
    if backend == FACTORED:
        return MemoryMatrix(backend=FACTORED, n=n, p=p, params=params, states=stacked)
    if backend != DENSE:
        raise ValueError(f"unknown backend {backend!r}")
    needed = _BYTES_PER_ENTRY * n * n
    if needed > byte_budget:
        raise MatrixTooLarge(
            f"dense {n}x{n} matrix needs {needed} bytes, budget is {byte_budget}"
        )
    # Equal to accumulating the P outer products; one matmul avoids P
    # temporary N x N buffers.
    matrix = stacked.T @ np.conj(stacked)
    return MemoryMatrix(backend=DENSE, n=n, p=p, params=params, states=stacked, matrix=matrix)


def _check_query(m: MemoryMatrix, query: WaveState) -> np.ndarray:
    if query.n != m.n:
        raise DimensionMismatch(f"query dimension {query.n} vs memory dimension {m.n}")
    if query.mode != m.mode:
        raise MixedEncodingModes(f"query mode {query.mode} vs memory mode {m.mode}")
    return query.amplitudes


def _report(m: MemoryMatrix, output: np.ndarray, overlaps: np.ndarray,
            width: int | None, height: int | None) -> RecallReport:
    k0 = int(np.argmax(np.abs(overlaps)))
    if width is None or height is None:
        width, height = m.n, 1
    state = WaveState(output, m.params)
    decoded = decode(state, m.params)
    return RecallReport(
        output=state,
        overlaps=overlaps,
        selected_index=k0,
        decoded=decoded,
        reconstructed=to_image(decoded, width, height),
    )


def recall(m: MemoryMatrix, query: WaveState,
           width: int | None = None, height: int | None = None) -> RecallReport:
    """Apply the memory to a query and report the resulting superposition.

    `width`/`height` give the image geometry for the reconstruction; when
    omitted the decoded vector is rendered as a single row.
    """
    q = _check_query(m, query)
    overlaps = np.conj(m.states) @ q
    if m.backend == DENSE:
        output = linalg.matvec(m.matrix, q)
    else:
        output = overlaps @ m.states
    return _report(m, output, overlaps, width, height)


def recall_clean(m: MemoryMatrix, query: WaveState,
                 width: int | None = None, height: int | None = None) -> RecallReport:
    """Winner-take-all recall: output is the selected stored state verbatim.

    Same selection as `recall`, but the cross-talk background from the
    non-selected states is dropped.
    """
    q = _check_query(m, query)
    overlaps = np.conj(m.states) @ q
    k0 = int(np.argmax(np.abs(overlaps)))
    return _report(m, m.states[k0].copy(), overlaps, width, height)


def recall_iterated(m: MemoryMatrix, query: WaveState, iters: int = 1,
                    width: int | None = None, height: int | None = None) -> RecallReport:
    """Repeated recall with L2 renormalization between passes.

    iters=1 is exactly `recall`; the final pass is reported unnormalized.
    Raises ZeroState if an intermediate state collapses below 1e-300 norm.
    """
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    state = query
    for _ in range(iters - 1):
        out = recall(m, state).output.amplitudes
        norm = float(np.linalg.norm(out))
        if norm < 1e-300:
            raise ZeroState("recall output collapsed to zero norm")
        state = WaveState(out / norm, m.params)
    return recall(m, state, width, height)


# Binary persistence. Layout, all little-endian:
#   magic "HMEM1" | mode byte | n u64 | p u64 | phase_scale f64 | payload
# Factored payload: p*n complex pairs (the states, row-major).
# Dense payload:    n*n complex pairs (the matrix, row-major) followed by
#                   the p*n retained-state pairs.
# Every complex pair is (real, imag) as f64. Round-trips are bit-exact.

_MAGIC = b"HMEM1"
_HEADER = struct.Struct("<QQd")


def save_memory(m: MemoryMatrix, path) -> None:
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(bytes([int(m.mode)]))
        fh.write(_HEADER.pack(m.n, m.p, m.params.phase_scale))
        if m.backend == DENSE:
            fh.write(np.ascontiguousarray(m.matrix, dtype="<c16").tobytes())
        fh.write(np.ascontiguousarray(m.states, dtype="<c16").tobytes())


def load_memory(path) -> MemoryMatrix:
    with open(path, "rb") as fh:
        blob = fh.read()
    head = len(_MAGIC) + 1 + _HEADER.size
    if len(blob) < head or blob[: len(_MAGIC)] != _MAGIC:
        raise MalformedMemory(f"{path}: not a memory file")
    mode_byte = blob[len(_MAGIC)]
    try:
        mode = Mode(mode_byte)
    except ValueError:
        raise MalformedMemory(f"{path}: unknown mode byte {mode_byte}") from None
    n, p, phase_scale = _HEADER.unpack_from(blob, len(_MAGIC) + 1)
    n, p = int(n), int(p)
    if n < 1 or p < 1:
        raise MalformedMemory(f"{path}: invalid dimensions n={n} p={p}")
    if mode == Mode.PHASE:
        params = phase_params(n, phase_scale)
    else:
        params = amplitude_params()

    payload = blob[head:]
    states_bytes = _BYTES_PER_ENTRY * p * n
    dense_bytes = _BYTES_PER_ENTRY * n * n + states_bytes
    if len(payload) == states_bytes:
        states = np.frombuffer(payload, dtype="<c16").reshape(p, n).copy()
        return MemoryMatrix(backend=FACTORED, n=n, p=p, params=params, states=states)
    if len(payload) == dense_bytes:
        split = _BYTES_PER_ENTRY * n * n
        matrix = np.frombuffer(payload[:split], dtype="<c16").reshape(n, n).copy()
        states = np.frombuffer(payload[split:], dtype="<c16").reshape(p, n).copy()
        return MemoryMatrix(backend=DENSE, n=n, p=p, params=params, states=states, matrix=matrix)
    raise MalformedMemory(
        f"{path}: payload is {len(payload)} bytes, expected {states_bytes} (factored) "
        f"or {dense_bytes} (dense)"
    )
