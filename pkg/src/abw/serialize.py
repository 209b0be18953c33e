"""JSON serialization for backgrounds, fields, and reports.

Conventions: complex numbers are [re, im] pairs; matrices are row-major
nested lists of such pairs; antilinear operators carry an explicit marker.
Files are versioned and unknown versions are refused, so fixtures stay
readable against future code.
"""

from __future__ import annotations

import json

import numpy as np

from .background import AlgebraSpec, AlgebraicBackground
from .krein import AntilinearOp, GradedKreinSpace, NotAGradedRealKreinSpace
from .linalg import DEFAULT_TOL, OperatorSubspace
from .sm import SMModel, YukawaData

__all__ = [
    "SCHEMA_VERSION",
    "ValidationError",
    "matrix_to_json",
    "matrix_from_json",
    "background_to_json",
    "background_from_json",
    "save_background",
    "load_background",
    "save_field",
    "load_field",
    "sm_meta",
    "model_from_meta",
    "dumps",
]

SCHEMA_VERSION = "1"


class ValidationError(ValueError):
    """Schema or invariant violation, with a JSON-pointer-style path."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def dumps(obj) -> str:
    """Deterministic serialization: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data, path: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ValidationError(path, "expected a non-empty nested array")
    try:
        rows = []
        for row in data:
            rows.append([complex(entry[0], entry[1]) for entry in row])
        m = np.array(rows, dtype=complex)
    except (TypeError, IndexError, ValueError) as exc:
        raise ValidationError(path, f"malformed matrix entries ({exc})") from None
    if m.ndim != 2:
        raise ValidationError(path, "expected a two-dimensional array")
    if not np.isfinite(m).all():
        raise ValidationError(path, "matrix entries must be finite")
    return m


def _require(data: dict, key: str, path: str):
    if key not in data:
        raise ValidationError(f"{path}/{key}", "missing required field")
    return data[key]


def background_to_json(b: AlgebraicBackground, meta: dict | None = None) -> dict:
    doc = {
        "version": SCHEMA_VERSION,
        "space": {
            "eta": matrix_to_json(b.space.eta),
            "chi": matrix_to_json(b.space.chi),
            "C": {"mat": matrix_to_json(b.space.C.mat), "antilinear": True},
        },
        "algebra": {
            "summands": [[kind, int(n)] for kind, n in b.algebra.summands],
            "generators": list(b.algebra.generators),
        },
        "rep": {name: matrix_to_json(m) for name, m in b.rep.items()},
        "omega1": [matrix_to_json(m) for m in b.omega1.basis],
    }
    if b.algebra.real_dim_override is not None:
        doc["algebra"]["real_dim"] = int(b.algebra.real_dim_override)
    if meta:
        doc["meta"] = meta
    return doc


def background_from_json(doc: dict, tol: float = DEFAULT_TOL) -> tuple:
    """Returns (background, meta)."""
    if not isinstance(doc, dict):
        raise ValidationError("", "document must be an object")
    version = _require(doc, "version", "")
    if version != SCHEMA_VERSION:
        raise ValidationError("/version", f"unknown schema version {version!r}")
    space_doc = _require(doc, "space", "")
    eta = matrix_from_json(_require(space_doc, "eta", "/space"), "/space/eta")
    chi = matrix_from_json(_require(space_doc, "chi", "/space"), "/space/chi")
    c_doc = _require(space_doc, "C", "/space")
    if not isinstance(c_doc, dict) or not c_doc.get("antilinear"):
        raise ValidationError("/space/C", "real structure must be marked antilinear")
    c_mat = matrix_from_json(_require(c_doc, "mat", "/space/C"), "/space/C/mat")
    try:
        space = GradedKreinSpace.build(eta, chi, AntilinearOp(c_mat), tol)
    except NotAGradedRealKreinSpace as exc:
        raise ValidationError("/space", str(exc)) from None

    alg_doc = _require(doc, "algebra", "")
    summands = tuple(
        (str(kind), int(n)) for kind, n in _require(alg_doc, "summands", "/algebra")
    )
    generators = tuple(_require(alg_doc, "generators", "/algebra"))
    algebra = AlgebraSpec(
        summands, generators, real_dim_override=alg_doc.get("real_dim")
    )

    rep_doc = _require(doc, "rep", "")
    rep = {}
    for name in generators:
        if name not in rep_doc:
            raise ValidationError(f"/rep/{name}", "missing generator representation")
        rep[name] = matrix_from_json(rep_doc[name], f"/rep/{name}")
        if rep[name].shape != (space.dim, space.dim):
            raise ValidationError(f"/rep/{name}", "dimension mismatch with the space")

    omega_doc = _require(doc, "omega1", "")
    mats = [matrix_from_json(m, f"/omega1/{i}") for i, m in enumerate(omega_doc)]
    for i, m in enumerate(mats):
        if m.shape != (space.dim, space.dim):
            raise ValidationError(f"/omega1/{i}", "dimension mismatch with the space")
    omega = OperatorSubspace.span(mats, ambient=space.dim, tol=tol)
    return AlgebraicBackground(space, algebra, rep, omega), doc.get("meta")


def save_background(b: AlgebraicBackground, path: str, meta: dict | None = None):
    with open(path, "w") as fh:
        fh.write(dumps(background_to_json(b, meta)))


def load_background(path: str, tol: float = DEFAULT_TOL):
    with open(path) as fh:
        doc = json.load(fh)
    return background_from_json(doc, tol)


def save_field(matrix: np.ndarray, path: str):
    with open(path, "w") as fh:
        fh.write(dumps({"version": SCHEMA_VERSION, "matrix": matrix_to_json(matrix)}))


def load_field(path: str) -> np.ndarray:
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != SCHEMA_VERSION:
        raise ValidationError("/version", "unknown schema version")
    return matrix_from_json(_require(doc, "matrix", ""), "/matrix")


# ---------------------------------------------------------------------------
# Standard-Model metadata round trip
# ---------------------------------------------------------------------------


def sm_meta(model: SMModel, extra: dict | None = None) -> dict:
    y = model.y
    meta = {
        "model": "sm",
        "N": y.N,
        "s": y.s,
        "eps_F": y.eps_F,
        "yukawa": {
            name: matrix_to_json(getattr(y, name))
            for name in ("Y_nu", "Y_e", "Y_u", "Y_d", "Y_R")
        },
    }
    if extra:
        meta.update(extra)
    return meta


def model_from_meta(meta: dict, tol: float = DEFAULT_TOL) -> SMModel:
    from .sm import build_sm_background

    if not isinstance(meta, dict) or meta.get("model") != "sm":
        raise ValidationError("/meta", "background carries no Standard-Model metadata")
    ydoc = _require(meta, "yukawa", "/meta")
    n = int(_require(meta, "N", "/meta"))
    mats = {
        name: matrix_from_json(_require(ydoc, name, "/meta/yukawa"), f"/meta/yukawa/{name}")
        for name in ("Y_nu", "Y_e", "Y_u", "Y_d", "Y_R")
    }
    y = YukawaData(n, mats["Y_nu"], mats["Y_e"], mats["Y_u"], mats["Y_d"], mats["Y_R"],
                   int(_require(meta, "s", "/meta")), int(_require(meta, "eps_F", "/meta")))
    return build_sm_background(y, tol)
