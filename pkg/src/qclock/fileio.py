"""JSON and CSV wire formats.

Matrices travel as ``{"dim": rows, "re": [[...]], "im": [[...]]}`` with
row-major real and imaginary parts at full round-trip precision (rectangular
matrices, e.g. subspace bases, use the same keys with ``dim`` equal to the
row count).  A clock file is ``{"state": <matrix>, "hamiltonian": <matrix>}``
and a channel file ``{"dim_in":, "dim_out":, "choi": <matrix>}``.

JSON documents are kept strictly standard: non-finite floats are serialized
as the strings "inf", "-inf", "nan".  CSV cells use ``repr`` of the float, so
infinities appear as ``inf``.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .bounds import CSV_COLUMNS, EXTRA_COLUMNS, SweepResult
from .errors import ValidationError
from .fisher import (
    ClassicalSignalFamily,
    gaussian_delay_family,
    moving_gaussian_family,
    tabulated_family,
)
from .states import ClockSystem, DensityMatrix, Hamiltonian
from .channels import QuantumChannel


def matrix_to_json(matrix: np.ndarray) -> dict:
    mat = np.asarray(matrix, dtype=complex)
    if mat.ndim != 2:
        raise ValidationError(f"expected a matrix, got array of shape {mat.shape}")
    return {"dim": mat.shape[0], "re": mat.real.tolist(), "im": mat.imag.tolist()}


def matrix_from_json(doc) -> np.ndarray:
    if not isinstance(doc, dict) or not {"dim", "re", "im"} <= set(doc):
        raise ValidationError("matrix document must have keys 'dim', 're', 'im'")
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc["im"], dtype=float)
    if re.ndim != 2 or re.shape != im.shape:
        raise ValidationError(f"'re' and 'im' must be equal-shape matrices, got {re.shape} vs {im.shape}")
    if re.shape[0] != doc["dim"]:
        raise ValidationError(f"'dim' is {doc['dim']} but 're' has {re.shape[0]} rows")
    return re + 1j * im


def density_from_json(doc) -> DensityMatrix:
    return DensityMatrix(matrix_from_json(doc))


def hamiltonian_from_json(doc) -> Hamiltonian:
    return Hamiltonian(matrix_from_json(doc))


def clock_to_json(clock: ClockSystem) -> dict:
    return {
        "state": matrix_to_json(clock.state.entries),
        "hamiltonian": matrix_to_json(clock.hamiltonian.entries),
    }


def clock_from_json(doc) -> ClockSystem:
    if not isinstance(doc, dict) or not {"state", "hamiltonian"} <= set(doc):
        raise ValidationError("clock document must have keys 'state' and 'hamiltonian'")
    return ClockSystem(density_from_json(doc["state"]), hamiltonian_from_json(doc["hamiltonian"]))


def channel_to_json(channel: QuantumChannel) -> dict:
    return {
        "dim_in": channel.dim_in,
        "dim_out": channel.dim_out,
        "choi": matrix_to_json(channel.choi),
    }


def channel_from_json(doc) -> QuantumChannel:
    if not isinstance(doc, dict) or not {"dim_in", "dim_out", "choi"} <= set(doc):
        raise ValidationError("channel document must have keys 'dim_in', 'dim_out', 'choi'")
    return QuantumChannel(int(doc["dim_in"]), int(doc["dim_out"]), matrix_from_json(doc["choi"]))


def family_from_json(doc) -> ClassicalSignalFamily:
    if not isinstance(doc, dict) or "family" not in doc:
        raise ValidationError("signal family document must have a 'family' key")
    name = doc["family"]
    params = doc.get("params", {})
    if name == "tabulated":
        return tabulated_family(doc["sample_points"], doc["t_values"], doc["table"])
    grid = doc.get("grid")
    if not isinstance(grid, dict) or not {"min", "max", "points"} <= set(grid):
        raise ValidationError("signal family document needs grid {'min','max','points'}")
    common = (float(grid["min"]), float(grid["max"]), int(grid["points"]))
    if name == "gaussian_delay":
        return gaussian_delay_family(
            float(params["delay_std"]), *common, center=float(params.get("center", 0.0))
        )
    if name == "moving_gaussian":
        return moving_gaussian_family(
            float(params["velocity"]),
            float(params["position_std"]),
            *common,
            center=float(params.get("center", 0.0)),
        )
    raise ValidationError(f"unknown signal family {name!r}")


def json_safe(value):
    """Recursively replace non-finite floats so documents stay standard JSON."""
    if isinstance(value, dict):
        return {k: json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def dumps(doc) -> str:
    return json.dumps(json_safe(doc), indent=2) + "\n"


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_to_csv(result: SweepResult) -> str:
    """Render sweep rows with the frozen column prefix, generator parameters
    appended, and a final summary row carrying the minimum margin."""
    columns = CSV_COLUMNS + EXTRA_COLUMNS
    lines = [",".join(columns)]
    for row in result.rows:
        lines.append(",".join(_csv_cell(row.get(col)) for col in columns))
    summary_row = dict.fromkeys(columns)
    summary_row["sample_id"] = "summary"
    summary_row["seed"] = result.seed
    summary_row["margin"] = result.summary["min_margin"]
    summary_row["satisfied"] = result.summary["all_satisfied"]
    lines.append(",".join(_csv_cell(summary_row[col]) for col in columns))
    return "\n".join(lines) + "\n"


def sweep_to_json(result: SweepResult) -> dict:
    return {
        "experiment": result.experiment,
        "seed": result.seed,
        "rows": result.rows,
        "summary": result.summary,
    }
