"""Report assembly, JSON-schema validation, and deterministic emission.

Payload files (CSV/JSON) are byte-identical across reruns of the same config:
timestamps and wall-clock data live in a sibling `<name>.meta.json` instead of
the payload.  Every JSON report validates against one of the schemas shipped
in gaborlab/schemas before it is written.
"""

from __future__ import annotations

import json
import time
from importlib import resources

import jsonschema
import numpy as np

from .gabor import FrameData
from .measure import reciprocity_check
from .pointset import density_bounds

__all__ = [
    "load_schema",
    "validate_report",
    "write_json",
    "write_meta",
    "check",
    "frame_report",
]

_SCHEMA_CACHE: dict = {}


def load_schema(name: str) -> dict:
    if name not in _SCHEMA_CACHE:
        with resources.files("gaborlab.schemas").joinpath(name).open() as fh:
            _SCHEMA_CACHE[name] = json.load(fh)
    return _SCHEMA_CACHE[name]


def validate_report(obj: dict) -> None:
    """Validate a report against the schema selected by its kind tag."""
    schema = "framereport.schema.json" if obj.get("kind") == "framebounds" \
        else "report.schema.json"
    jsonschema.validate(obj, load_schema(schema))


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json emits stable plain types."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def write_json(path, obj: dict) -> None:
    obj = _plain(obj)
    validate_report(obj)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_meta(path, **extra) -> None:
    meta = {"created_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"), **extra}
    with open(path, "w") as fh:
        json.dump(_plain(meta), fh, indent=2, sort_keys=True)
        fh.write("\n")


def check(name: str, ok: bool, value=None, tol=None) -> dict:
    return {"name": name, "ok": bool(ok), "value": value, "tol": tol}


def frame_report(fd: FrameData, config: dict, window_name: str, lattice_name: str,
                 N_box: int | None = None) -> dict:
    """FrameReport dict: bounds, density and measure bounds at N_box, reciprocity.

    Also carries identity checks that are exact in the finite model: the trace
    sandwich A <= (m/L)*||g||^2 <= B, reciprocity at N = L, and measure range
    [0, 1] for canonical duals.  A failed check is what drives CLI exit code 2.
    """
    sys = fd.system
    L = sys.torus.L
    m = len(sys)
    if N_box is None:
        N_box = L // 2 - (L // 2) % 2
    d_minus, d_plus = density_bounds(sys.points, N_box) if m else (0.0, 0.0)

    checks = []
    wnorm2 = sys.window.norm**2
    mean_eig = m * wnorm2 / L
    checks.append(check("sandwich_A<=m||g||^2/L<=B",
                        fd.A <= mean_eig + 1e-9 and mean_eig <= fd.B + 1e-9,
                        value=mean_eig))

    measure_minus = measure_plus = residual = None
    if fd.duals is not None:
        vals = fd.dual_measures()
        checks.append(check("dual_measures_in_[0,1]",
                            bool((vals > -1e-9).all() and (vals < 1 + 1e-9).all()),
                            value=float(vals.max()), tol=1e-9))
        rec_box = reciprocity_check(fd, N_box)
        residual = rec_box["r1"]
        if L % 2 == 0:  # the whole-torus box needs an even side
            rec_full = reciprocity_check(fd, L)
            checks.append(check("reciprocity_r1_at_N=L", rec_full["r1"] < 1e-9,
                                value=rec_full["r1"], tol=1e-9))
        from .measure import measure_profile

        prof = measure_profile(fd, [N_box])
        measure_minus, measure_plus = prof.bounds(N_box)

    return {
        "kind": "framebounds",
        "L": L,
        "window": window_name,
        "lattice": lattice_name,
        "n_points": m,
        "A": fd.A,
        "B": fd.B,
        "D_minus": d_minus,
        "D_plus": d_plus,
        "measure_minus": measure_minus,
        "measure_plus": measure_plus,
        "reciprocity_residual": residual,
        "N_box": int(N_box),
        "checks": checks,
        "config": config,
    }
