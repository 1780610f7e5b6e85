"""Plain/raw PGM input and output, and k x k window aggregation."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np


class PGMError(ValueError):
    pass


def _tokens(data: bytes, count: int, pos: int = 0):
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments."""
    out = []
    n = len(data)
    while len(out) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PGMError("truncated PGM header")
        out.append(data[start:pos])
    return out, pos


def read_pgm(path) -> tuple[np.ndarray, str]:
    """Return ``(pixels, magic)`` for a P2 or P5 file with maxval 255."""
    with open(path, "rb") as fh:
        data = fh.read()
    (magic, w, h, maxval), pos = _tokens(data, 4)
    magic = magic.decode("ascii", "replace")
    if magic not in ("P2", "P5"):
        raise PGMError("unsupported PGM type %r" % magic)
    try:
        w, h, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise PGMError("bad PGM header") from None
    if maxval != 255:
        raise PGMError("only maxval 255 is supported, got %d" % maxval)
    if w <= 0 or h <= 0:
        raise PGMError("bad PGM size %dx%d" % (w, h))
    if magic == "P5":
        raw = data[pos + 1:pos + 1 + w * h]
        if len(raw) != w * h:
            raise PGMError("truncated P5 pixel data")
        pixels = np.frombuffer(raw, dtype=np.uint8).reshape(h, w).copy()
    else:
        vals, _ = _tokens(data, w * h, pos)
        pixels = np.array([int(v) for v in vals], dtype=np.int64)
        if pixels.min() < 0 or pixels.max() > 255:
            raise PGMError("pixel value out of range")
        pixels = pixels.astype(np.uint8).reshape(h, w)
    return pixels, magic


def write_pgm(path, pixels: np.ndarray, magic: str = "P5") -> None:
    h, w = pixels.shape
    header = "%s\n%d %d\n255\n" % (magic, w, h)
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if magic == "P5":
            fh.write(pixels.astype(np.uint8).tobytes())
        else:
            for row in pixels:
                fh.write((" ".join(str(int(v)) for v in row) + "\n").encode("ascii"))


def filter_image(pixels: np.ndarray, k: int, aggregate: Callable[[tuple], float]) -> np.ndarray:
    """Replace each pixel by ``aggregate`` of its k x k window, borders clamped.

    Pixels map to [0, 1] by /255 and back by *255 with rounding half up.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("window must be an odd positive integer, got %d" % k)
    r = k // 2
    padded = np.pad(pixels.astype(np.float64) / 255.0, r, mode="edge")
    h, w = pixels.shape
    out = np.empty((h, w), dtype=np.uint8)
    for i in range(h):
        for j in range(w):
            window = tuple(padded[i:i + k, j:j + k].ravel().tolist())
            v = aggregate(window)
            out[i, j] = min(255, max(0, math.floor(v * 255.0 + 0.5)))
    return out
