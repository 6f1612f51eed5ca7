"""JSON and CSV formats used by the command line.

A state is ``{"d": 2, "rho": [[[re, im], ...], ...]}`` or
``{"d": 2, "R": [[...], ...]}``; plain real numbers are accepted in place of
``[re, im]`` pairs. An effect is ``{"E": ...}``, ``{"N": ...}`` or
``{"bell": n}``. A chain is ``{"sources": [state, ...], "measurements":
[effect, ...]}`` where sources may also be ``{"bell": n}``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .bloch import bell_bloch, bell_effect, effect_to_bloch, state_to_bloch, validate_state
from .exceptions import InvalidState, SwapCorrError
from .swapping import ChainSpec


class InputError(SwapCorrError, ValueError):
    """Malformed input document."""


def _complex_matrix(rows) -> np.ndarray:
    try:
        a = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"matrix entries must be numbers or [re, im] pairs: {exc}") from None
    if a.ndim == 3 and a.shape[-1] == 2:
        return a[..., 0] + 1j * a[..., 1]
    if a.ndim == 2:
        return a.astype(complex)
    raise InputError(f"cannot read a matrix of shape {a.shape}")


def _check_d(doc, n):
    d = doc.get("d")
    if d is not None and int(d) ** 2 != n:
        raise InputError(f"declared d={d} does not match a {n}×{n} matrix")


def state_from_doc(doc) -> np.ndarray:
    """Bloch matrix from a parsed state document."""
    if not isinstance(doc, dict):
        raise InputError("a state must be a JSON object")
    if "bell" in doc:
        return bell_bloch(int(doc["bell"]))
    if "rho" in doc:
        rho = _complex_matrix(doc["rho"])
        _check_d(doc, rho.shape[0])
        return state_to_bloch(validate_state(rho))
    if "R" in doc:
        R = np.array(doc["R"], dtype=float)
        if R.ndim != 2 or R.shape[0] != R.shape[1]:
            raise InputError("R must be a square matrix")
        _check_d(doc, R.shape[0])
        if abs(R[0, 0] - 1) > 1e-10:
            raise InvalidState("a state Bloch matrix must have R[0][0] = 1")
        return R
    raise InputError("a state needs a 'rho', 'R' or 'bell' entry")


def effect_from_doc(doc) -> np.ndarray:
    """Effect Bloch matrix from a parsed effect document."""
    if isinstance(doc, int):
        return bell_effect(doc)
    if not isinstance(doc, dict):
        raise InputError("an effect must be a JSON object or a Bell index")
    if "bell" in doc:
        return bell_effect(int(doc["bell"]))
    if "E" in doc:
        return effect_to_bloch(_complex_matrix(doc["E"]))
    if "N" in doc:
        N = np.array(doc["N"], dtype=float)
        if N.ndim != 2 or N.shape[0] != N.shape[1]:
            raise InputError("N must be a square matrix")
        return N
    raise InputError("an effect needs an 'E', 'N' or 'bell' entry")


def chain_from_doc(doc) -> ChainSpec:
    if not isinstance(doc, dict) or "sources" not in doc or "measurements" not in doc:
        raise InputError("a chain needs 'sources' and 'measurements' lists")
    return ChainSpec(
        tuple(state_from_doc(s) for s in doc["sources"]),
        tuple(effect_from_doc(m) for m in doc["measurements"]),
    )


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def matrix_to_json(m) -> list:
    m = np.asarray(m)
    if np.iscomplexobj(m):
        return [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return [[float(x) for x in row] for row in m]


def format_number(x) -> str:
    return "%.17g" % x


def write_csv(fh, header, rows):
    """Header plus rows; floats use 17 significant digits, other cells ``str``."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_number(c) if isinstance(c, (float, np.floating)) else c for c in row])
