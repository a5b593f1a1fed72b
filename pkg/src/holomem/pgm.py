"""PGM image files: binary P5 and ASCII P2 readers, deterministic P5 writer.

Only maxval 255 is accepted; header whitespace and '#' comments are
tolerated per the PNM convention.
"""

from __future__ import annotations

import numpy as np

from .encoding import ImageRaw
from .errors import MalformedPgm

_WHITESPACE = b" \t\r\n\v\f"


def _tokens(blob: bytes):
    """Yield (token, end_offset) skipping whitespace and comment lines."""
    i = 0
    while i < len(blob):
        c = blob[i:i + 1]
        if c in (b" ", b"\t", b"\r", b"\n", b"\v", b"\f"):
            i += 1
            continue
        if c == b"#":
            nl = blob.find(b"\n", i)
            if nl < 0:
                return
            i = nl + 1
            continue
        j = i
        while j < len(blob) and blob[j:j + 1] not in (b" ", b"\t", b"\r", b"\n", b"\v", b"\f", b"#"):
            j += 1
        yield blob[i:j], j
        i = j


def read_pgm(path) -> ImageRaw:
    with open(path, "rb") as fh:
        blob = fh.read()

    toks = _tokens(blob)

    def next_token(what: str) -> tuple[bytes, int]:
        try:
            return next(toks)
        except StopIteration:
            raise MalformedPgm(f"{path}: truncated header, missing {what}") from None

    magic, _ = next_token("magic")
    if magic not in (b"P5", b"P2"):
        raise MalformedPgm(f"{path}: bad magic {magic!r}")

    def int_token(what: str) -> tuple[int, int]:
        tok, end = next_token(what)
        try:
            return int(tok), end
        except ValueError:
            raise MalformedPgm(f"{path}: bad {what} {tok!r}") from None

    width, _ = int_token("width")
    height, _ = int_token("height")
    maxval, header_end = int_token("maxval")
    if width < 1 or height < 1:
        raise MalformedPgm(f"{path}: bad dimensions {width}x{height}")
    if maxval != 255:
        raise MalformedPgm(f"{path}: maxval {maxval} unsupported, need 255")

    n = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the payload
        payload = blob[header_end + 1:]
        if blob[header_end:header_end + 1] not in (b" ", b"\t", b"\r", b"\n", b"\v", b"\f"):
            raise MalformedPgm(f"{path}: missing separator before pixel data")
        if len(payload) < n:
            raise MalformedPgm(f"{path}: truncated payload, {len(payload)} of {n} bytes")
        px = np.frombuffer(payload[:n], dtype=np.uint8).reshape(height, width).copy()
        return ImageRaw(width=width, height=height, pixels=px)

    values = []
    for tok, _ in toks:
        try:
            v = int(tok)
        except ValueError:
            raise MalformedPgm(f"{path}: bad pixel value {tok!r}") from None
        if not 0 <= v <= 255:
            raise MalformedPgm(f"{path}: pixel value {v} out of range")
        values.append(v)
        if len(values) == n:
            break
    if len(values) < n:
        raise MalformedPgm(f"{path}: truncated payload, {len(values)} of {n} values")
    px = np.array(values, dtype=np.uint8).reshape(height, width)
    return ImageRaw(width=width, height=height, pixels=px)


def write_pgm(img: ImageRaw, path) -> None:
    """Binary P5, maxval 255, single newline separators; byte-deterministic."""
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (img.width, img.height))
        fh.write(img.pixels.tobytes())
