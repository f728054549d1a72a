"""Reading and writing states as plain JSON documents.

A state file holds {"dims": [M, N], "matrix": [[re, im], ...]} with the
(M N)^2 entries in row-major order, plus an optional "metadata" object
(label, seed, family).  JSON floats are emitted with Python's shortest
round-trip representation, so a written file reproduces the matrix bit
for bit when read back.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bipartite import BipartiteState, validate
from .errors import ParseError
from .matlib import DEFAULT_TOL, Tolerance

__all__ = [
    "state_to_dict",
    "state_from_dict",
    "write_statefile",
    "read_statefile",
]


def state_to_dict(state: BipartiteState, metadata: dict | None = None) -> dict:
    """JSON-serializable document for the state."""
    flat = state.rho.reshape(-1)
    doc = {
        "dims": [state.dim_a, state.dim_b],
        "matrix": [[float(z.real), float(z.imag)] for z in flat],
    }
    if metadata:
        doc["metadata"] = dict(metadata)
    return doc


def state_from_dict(doc, tol: Tolerance = DEFAULT_TOL) -> tuple[BipartiteState, dict]:
    """Parse and validate a document; returns the state and its metadata.

    Structural problems raise ParseError; a well-formed matrix that is not
    a valid density matrix raises the specific validation error instead.
    """
    if not isinstance(doc, dict):
        raise ParseError(f"expected a JSON object, got {type(doc).__name__}")
    dims = doc.get("dims")
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and d >= 1 for d in dims)
    ):
        raise ParseError(f"dims must be two positive integers, got {dims!r}")
    m, n = dims
    entries = doc.get("matrix")
    want = (m * n) ** 2
    if not isinstance(entries, list) or len(entries) != want:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise ParseError(f"matrix must hold {want} entries, got {got}")
    flat = np.empty(want, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and np.isfinite(x) for x in pair)
        ):
            raise ParseError(f"matrix entry {i} must be a finite [re, im] pair, got {pair!r}")
        flat[i] = complex(pair[0], pair[1])
    metadata = doc.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise ParseError(f"metadata must be an object, got {metadata!r}")
    state = validate(flat.reshape(m * n, m * n), m, n, tol)
    return state, metadata


def write_statefile(path, state: BipartiteState, metadata: dict | None = None) -> None:
    """Write the state as a JSON document."""
    Path(path).write_text(json.dumps(state_to_dict(state, metadata), indent=1) + "\n")


def read_statefile(path, tol: Tolerance = DEFAULT_TOL) -> tuple[BipartiteState, dict]:
    """Read and validate a state file written by write_statefile."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    return state_from_dict(doc, tol)
