"""Text embedding-file format: header `N d`, then one `ext_id v1 .. vd` line per node."""

from __future__ import annotations

from typing import IO, Sequence

import numpy as np


def save_embeddings(stream: IO[str], vectors: np.ndarray, ext_ids: Sequence[str]) -> None:
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ValueError("vectors must be 2-D")
    if len(ext_ids) != vectors.shape[0]:
        raise ValueError(f"{len(ext_ids)} ids for {vectors.shape[0]} rows")
    stream.write(f"{vectors.shape[0]} {vectors.shape[1]}\n")
    for ext, row in zip(ext_ids, vectors):
        ext = str(ext)
        if not ext or any(ch.isspace() for ch in ext):
            raise ValueError(f"external id {ext!r} must be nonempty and whitespace-free")
        stream.write(ext + " " + " ".join(repr(float(v)) for v in row) + "\n")


def load_embeddings(stream: IO[str]) -> tuple[list[str], np.ndarray]:
    header = stream.readline().split()
    if len(header) != 2:
        raise ValueError("embedding file must start with an 'N d' header line")
    n, d = int(header[0]), int(header[1])
    ids: list[str] = []
    rows = np.empty((n, d), dtype=np.float64)
    for i in range(n):
        parts = stream.readline().split()
        if len(parts) != d + 1:
            raise ValueError(f"embedding row {i}: expected id plus {d} floats, got {len(parts)} fields")
        ids.append(parts[0])
        rows[i] = [float(x) for x in parts[1:]]
    return ids, rows
