"""Sampled curves: CSV ingestion and jets from local quintic interpolation.

This is the lower-accuracy path for curves without closed forms.  At each
evaluation point the six nearest samples are interpolated by a degree-5
polynomial written in the local coordinate ``t = (x - s) / h``, so its
coefficients are directly the Taylor coefficients at ``s``.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..errors import InsufficientSamplesError
from .jets import ORDER, Jet

DEGREE = 5
COLUMNS = ["s", "g1", "g2", "g3", "g4", "v11", "v12", "v13", "v14", "v21", "v22", "v23", "v24"]


def read_samples_csv(path):
    """Load ``(s, gamma, v1, v2)`` arrays from a sampled-curve CSV file."""
    with open(Path(path), newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}")
        rows = [[float(row[c]) for c in COLUMNS] for row in reader]
    data = np.array(rows, dtype=float).reshape(-1, len(COLUMNS))
    s = data[:, 0]
    if len(s) < DEGREE + 1:
        raise InsufficientSamplesError(f"{path}: need at least {DEGREE + 1} samples, got {len(s)}")
    if np.any(np.diff(s) <= 0):
        raise ValueError(f"{path}: s column must be strictly increasing")
    if not np.all(np.isfinite(data)):
        raise ValueError(f"{path}: non-finite sample values")
    return s, data[:, 1:5], data[:, 5:9], data[:, 9:13]


def local_taylor(nodes, values, s, order: int = ORDER):
    """Taylor coefficients up to ``order`` at ``s`` from local quintic fits.

    ``values`` has shape ``(N, C)``.  Returns an array of shape
    ``(order + 1, C, M)`` for ``M`` evaluation points (``M = 1`` for scalar s).
    """
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(nodes) < DEGREE + 1:
        raise InsufficientSamplesError(f"need at least {DEGREE + 1} samples, got {len(nodes)}")
    s = np.atleast_1d(np.asarray(s, dtype=float))
    idx = np.searchsorted(nodes, s)
    start = np.clip(idx - (DEGREE + 1) // 2, 0, len(nodes) - (DEGREE + 1))
    window = start[:, None] + np.arange(DEGREE + 1)[None, :]
    h = (nodes[-1] - nodes[0]) / (len(nodes) - 1)
    t = (nodes[window] - s[:, None]) / h
    V = t[:, :, None] ** np.arange(DEGREE + 1)[None, None, :]
    coef = np.linalg.solve(V, values[window])  # (M, DEGREE+1, C)
    scale = h ** -np.arange(DEGREE + 1, dtype=float)
    coef = coef * scale[None, :, None]
    return np.transpose(coef[:, : order + 1, :], (1, 2, 0))


def sampled_jets(nodes, values, s, order: int = ORDER) -> tuple:
    """One Jet per column of ``values``; scalar ``s`` yields scalar coefficients."""
    coef = local_taylor(nodes, values, s, order)
    scalar = np.ndim(s) == 0
    out = []
    for c in range(coef.shape[1]):
        cs = coef[:, c, :]
        out.append(Jet([float(x[0]) if scalar else x for x in cs]))
    return tuple(out)
