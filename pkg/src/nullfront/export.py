"""Text serializations: OBJ and CSV meshes, CSV tables, JSON reports.

CSV floats use 17 significant digits in scientific notation and JSON floats
use Python's shortest round-trip repr, so identical inputs give identical
bytes and every value reloads losslessly.
"""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .framed import CurvatureQuad, FrameState
from .nullcone import FrontMesh
from .regular import FrenetData


def fmt(x) -> str:
    """CSV cell text for a number: integers as-is, floats as ``%.16e``."""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.16e}"


def _obj_num(x: float) -> str:
    return repr(float(x))


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def mesh_to_obj(mesh: FrontMesh) -> str:
    """Wavefront OBJ of the projected mesh.

    Object ``front`` holds the ``ns * nl`` vertices and quad faces.  Object
    ``singular_locus`` holds each locus polyline as an ``l`` element, and
    classified singular points (cusp and swallowtail points inside the
    lambda window) follow as ``p`` elements in object ``singular_points``.
    """
    out = [
        "# nullfront front mesh",
        f"# sheet {mesh.sheet.value} ns {mesh.ns} nl {mesh.nl}",
        "o front",
    ]
    out.extend("v " + " ".join(_obj_num(c) for c in p) for p in mesh.projected)
    out.extend("f " + " ".join(str(int(k) + 1) for k in face) for face in mesh.faces())
    base = mesh.vertex_count
    out.append("o singular_locus")
    for line in mesh.polylines:
        pts = line["projected"]
        out.extend("v " + " ".join(_obj_num(c) for c in p) for p in pts)
        out.append("l " + " ".join(str(base + k + 1) for k in range(len(pts))))
        base += len(pts)
    if mesh.marked:
        out.append("o singular_points")
        for mk in mesh.marked:
            rep = mk["report"]
            out.append(f"# {rep.classification.value} s0 {rep.s0!r} lambda0 {rep.lambda0!r}")
            out.append("v " + " ".join(_obj_num(c) for c in mk["projected"]))
            base += 1
            out.append(f"p {base}")
    return "\n".join(out) + "\n"


MESH_CSV_HEADER = ["s", "lambda", "u1", "u2", "u3", "u4", "x", "y", "z", "omega"]


def mesh_to_csv(mesh: FrontMesh) -> str:
    S = np.repeat(mesh.s, mesh.nl)
    L = np.tile(mesh.lam, mesh.ns)
    rows = (
        [S[k], L[k], *mesh.vertices[k], *mesh.projected[k], mesh.omega[k]] for k in range(mesh.vertex_count)
    )
    return write_csv(MESH_CSV_HEADER, rows)


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, (np.floating,)):
        return _clean(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_clean(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(x) for x in obj]
    return obj


def to_json(obj) -> str:
    """Deterministic JSON; non-finite floats become ``null``."""
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def reports_to_json(reports) -> str:
    return to_json([r.to_dict() for r in reports])


# the first 13 columns match the sampled-curve format, so a run can be reloaded with --samples
STATE_CSV_HEADER = (
    ["s"]
    + [f"g{i}" for i in range(1, 5)]
    + [f"v1{i}" for i in range(1, 5)]
    + [f"v2{i}" for i in range(1, 5)]
    + [f"mu{i}" for i in range(1, 5)]
)


def states_to_csv(states) -> str:
    return write_csv(STATE_CSV_HEADER, (st.as_row() for st in states))


def states_from_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != STATE_CSV_HEADER:
        raise ValueError("not a frame-state CSV")
    out = []
    for row in reader:
        x = np.array([float(c) for c in row])
        out.append(FrameState(x[0], x[1:5], x[5:9], x[9:13], x[13:17]))
    return out


CURVATURE_CSV_HEADER = ["s", "alpha", "ell", "m", "n"]


def curvature_to_csv(cq: CurvatureQuad, s) -> str:
    s = np.asarray(s, dtype=float)
    vals = cq(s)
    return write_csv(CURVATURE_CSV_HEADER, ([s[k], *vals[:, k]] for k in range(len(s))))


def frenet_to_csv(rows) -> str:
    rows = list(rows)
    return write_csv(FrenetData.CSV_HEADER, (r.as_row() for r in rows))
