"""Numerical checks of the copy bound and of clock-quality monotonicity.

A covariant process that turns one clock signal into two outgoing signals
obeys

    1/F_1 + 1/F_2  >=  2/F + 2/<E^2>,

where F is the input timing information, F_1 and F_2 the marginal timing
information of the outputs, and <E^2> the second moment of the total output
energy (ground level shifted to zero; the zero of energy is a convention and
is recorded with every report).  Equivalently, in estimation-error form,
(dt_1)^2 + (dt_2)^2 >= 2 dt^2 + 2/<E^2>.  Covariant processing also can never
increase timing information: F_out <= F_in.

These modules do not prove anything; they try to falsify the inequalities on
seeded Monte-Carlo ensembles of twirled random channels and report margins.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import (
    QuantumChannel,
    apply_channel,
    covariant_twirl,
    is_covariant,
    partial_trace,
    random_channel,
    validate_cptp,
)
from .errors import ConfigError, DimensionMismatchError, PreconditionError
from .fisher import qfi
from .states import (
    ClockSystem,
    Hamiltonian,
    equal_superposition_clock,
    ladder_hamiltonian,
    random_density,
    random_hamiltonian,
)

F_FLOOR = 1e-12
MARGIN_TOL = 1e-8
DEFAULT_COVARIANCE_PRECONDITION_TOL = 1e-8


def _reciprocal(value: float) -> float:
    return math.inf if value <= F_FLOOR else 1.0 / value


def _margin(lhs: float, rhs: float):
    if math.isinf(lhs):
        return math.inf, True
    if math.isinf(rhs):
        return -math.inf, False
    margin = lhs - rhs
    return margin, margin >= -MARGIN_TOL


def total_hamiltonian(h1: Hamiltonian, h2: Hamiltonian) -> Hamiltonian:
    """Non-interacting sum H1 (x) 1 + 1 (x) H2 on the joint output space."""
    return Hamiltonian(
        np.kron(h1.entries, np.eye(h2.dim)) + np.kron(np.eye(h1.dim), h2.entries)
    )


@dataclass(frozen=True)
class CopyBoundReport:
    f_in: float
    f1: float
    f2: float
    e2: float
    e2_unshifted: float
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    covariance_residual: float


def copy_bound_check(
    clock: ClockSystem,
    broadcast: QuantumChannel,
    h1: Hamiltonian,
    h2: Hamiltonian,
    covariance_tol: float = DEFAULT_COVARIANCE_PRECONDITION_TOL,
) -> CopyBoundReport:
    """Evaluate the copy bound for one clock and one two-output broadcast channel.

    The broadcast must be CPTP and covariant for (H, H1 (x) 1 + 1 (x) H2); the
    bound concerns processes that run without an external clock, so
    non-covariant channels are rejected (project them with covariant_twirl
    first).  Reciprocals of timing informations below 1e-12 are reported as
    infinite.
    """
    h_total = total_hamiltonian(h1, h2)
    if broadcast.dim_in != clock.dim or broadcast.dim_out != h_total.dim:
        raise DimensionMismatchError(
            f"broadcast {broadcast.dim_in}->{broadcast.dim_out} does not map clock dim "
            f"{clock.dim} to joint output dim {h_total.dim}"
        )
    cptp = validate_cptp(broadcast)
    if not cptp.ok:
        raise PreconditionError(
            "broadcast channel is not CPTP "
            f"(cp violation {cptp.cp_violation:.3e}, tp violation {cptp.tp_violation:.3e})"
        )
    cov = is_covariant(broadcast, clock.hamiltonian, h_total, tol=covariance_tol)
    if not cov.is_covariant:
        raise PreconditionError(
            f"broadcast is not covariant (residual {cov.residual:.3e} > {covariance_tol:.1e}); "
            "apply covariant_twirl before checking the copy bound"
        )

    rho_out = apply_channel(broadcast, clock.state)
    marginal1 = partial_trace(rho_out, (h1.dim, h2.dim), keep=1)
    marginal2 = partial_trace(rho_out, (h1.dim, h2.dim), keep=2)

    f_in = qfi(clock).fisher_info
    f1 = qfi(ClockSystem(marginal1, h1)).fisher_info
    f2 = qfi(ClockSystem(marginal2, h2)).fisher_info

    ground = float(h1.eigenvalues[0] + h2.eigenvalues[0])
    shifted = h_total.entries - ground * np.eye(h_total.dim)
    e2 = float(np.real(np.trace(rho_out.entries @ shifted @ shifted)))
    e2_unshifted = float(np.real(np.trace(rho_out.entries @ h_total.entries @ h_total.entries)))

    lhs = _reciprocal(f1) + _reciprocal(f2)
    rhs = 2.0 * _reciprocal(f_in) + 2.0 * _reciprocal(e2)
    margin, satisfied = _margin(lhs, rhs)
    return CopyBoundReport(
        f_in=f_in,
        f1=f1,
        f2=f2,
        e2=e2,
        e2_unshifted=e2_unshifted,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=satisfied,
        covariance_residual=cov.residual,
    )


@dataclass(frozen=True)
class UncertaintyReport:
    dt_in: float
    dt1: float
    dt2: float
    lhs: float
    rhs: float
    satisfied: bool


def time_uncertainty_check(report: CopyBoundReport) -> UncertaintyReport:
    """Restate a copy-bound report as the squared-uncertainty inequality.

    dt = 1/sqrt(F) per signal; vanishing information is reported as unbounded
    uncertainty and satisfies the inequality trivially.  The verdict is
    algebraically the same as the copy-bound verdict.
    """

    def uncertainty(f: float) -> float:
        return math.inf if f <= F_FLOOR else 1.0 / math.sqrt(f)

    dt_in = uncertainty(report.f_in)
    dt1 = uncertainty(report.f1)
    dt2 = uncertainty(report.f2)
    lhs = dt1 * dt1 + dt2 * dt2
    rhs = (2.0 * dt_in * dt_in if not math.isinf(dt_in) else math.inf) + 2.0 * _reciprocal(
        report.e2
    )
    _, satisfied = _margin(lhs, rhs)
    return UncertaintyReport(dt_in=dt_in, dt1=dt1, dt2=dt2, lhs=lhs, rhs=rhs, satisfied=satisfied)


@dataclass(frozen=True)
class MonotonicityReport:
    f_in: float
    f_out: float
    covariance_residual: float
    holds: bool


def monotonicity_check(
    clock: ClockSystem,
    channel: QuantumChannel,
    h_out: Hamiltonian,
    covariance_tol: float = DEFAULT_COVARIANCE_PRECONDITION_TOL,
) -> MonotonicityReport:
    """Check that a covariant channel does not increase timing information.

    Non-covariant channels are rejected: they can legitimately increase F
    (that is precisely what the covariance condition rules out).
    """
    if channel.dim_in != clock.dim or channel.dim_out != h_out.dim:
        raise DimensionMismatchError(
            f"channel {channel.dim_in}->{channel.dim_out} does not map clock dim "
            f"{clock.dim} to output dim {h_out.dim}"
        )
    cov = is_covariant(channel, clock.hamiltonian, h_out, tol=covariance_tol)
    if not cov.is_covariant:
        raise PreconditionError(
            f"channel is not covariant (residual {cov.residual:.3e} > {covariance_tol:.1e}); "
            "apply covariant_twirl first"
        )
    f_in = qfi(clock).fisher_info
    out_state = apply_channel(channel, clock.state)
    f_out = qfi(ClockSystem(out_state, h_out)).fisher_info
    return MonotonicityReport(
        f_in=f_in,
        f_out=f_out,
        covariance_residual=cov.residual,
        holds=f_out <= f_in + MARGIN_TOL,
    )


# ---------------------------------------------------------------------------
# Monte-Carlo sweeps
# ---------------------------------------------------------------------------

CSV_COLUMNS = (
    "sample_id",
    "seed",
    "dim_in",
    "dim_out1",
    "dim_out2",
    "f_in",
    "f1",
    "f2",
    "e2",
    "lhs",
    "rhs",
    "margin",
    "satisfied",
    "covariance_residual",
)
EXTRA_COLUMNS = ("kraus_rank", "energy_scale", "clock")


@dataclass(frozen=True)
class SweepResult:
    experiment: str
    seed: int
    rows: list
    summary: dict


def _require(config: dict, field: str, kind, minimum=None):
    if field not in config:
        raise ConfigError(f"sweep config is missing required field '{field}'")
    value = config[field]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ConfigError(f"sweep config field '{field}' must be {kind.__name__}, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"sweep config field '{field}' must be >= {minimum}, got {value!r}")
    return value


def _optional(config: dict, field: str, default, choices=None):
    value = config.get(field, default)
    if choices is not None and value not in choices:
        raise ConfigError(f"sweep config field '{field}' must be one of {choices}, got {value!r}")
    return value


def _scaled(h: Hamiltonian, lam: float) -> Hamiltonian:
    return h if lam == 1.0 else Hamiltonian(lam * h.entries)


def _copy_bound_sample(config: dict, base_seed: int, index: int) -> list:
    dim_in = config["dim_in"]
    d1 = config["dim_out1"]
    d2 = config["dim_out2"]
    kraus_rank = config["kraus_rank"]
    quantum = config["energy_quantum"]
    sub_seed = base_seed + index
    rng = np.random.default_rng(sub_seed)

    if config["clock"] == "equal_superposition":
        base_clock = equal_superposition_clock(dim_in, quantum)
    else:
        rank = 1 + index % dim_in
        state = random_density(dim_in, rank, rng)
        h_in = (
            ladder_hamiltonian(dim_in, quantum)
            if config["hamiltonians"] == "ladder"
            else random_hamiltonian(dim_in, rng)
        )
        base_clock = ClockSystem(state, h_in)

    if config["hamiltonians"] == "ladder":
        base_h1 = ladder_hamiltonian(d1, quantum)
        base_h2 = ladder_hamiltonian(d2, quantum)
    else:
        base_h1 = random_hamiltonian(d1, rng)
        base_h2 = random_hamiltonian(d2, rng)
    raw = random_channel(dim_in, d1 * d2, kraus_rank, rng)

    rows = []
    for lam in config["energy_scales"]:
        clock = ClockSystem(base_clock.state, _scaled(base_clock.hamiltonian, lam))
        h1 = _scaled(base_h1, lam)
        h2 = _scaled(base_h2, lam)
        broadcast = covariant_twirl(raw, clock.hamiltonian, total_hamiltonian(h1, h2))
        report = copy_bound_check(clock, broadcast, h1, h2)
        rows.append(
            {
                "sample_id": index,
                "seed": sub_seed,
                "dim_in": dim_in,
                "dim_out1": d1,
                "dim_out2": d2,
                "f_in": report.f_in,
                "f1": report.f1,
                "f2": report.f2,
                "e2": report.e2,
                "lhs": report.lhs,
                "rhs": report.rhs,
                "margin": report.margin,
                "satisfied": report.satisfied,
                "covariance_residual": report.covariance_residual,
                "kraus_rank": kraus_rank,
                "energy_scale": lam,
                "clock": config["clock"],
            }
        )
    return rows


def _monotonicity_sample(config: dict, base_seed: int, index: int) -> list:
    dim = config["dim"]
    dim_out = config["dim_out"]
    kraus_rank = config["kraus_rank"]
    sub_seed = base_seed + index
    rng = np.random.default_rng(sub_seed)

    rank = 1 + index % dim
    state = random_density(dim, rank, rng)
    if config["hamiltonians"] == "ladder":
        h_in = ladder_hamiltonian(dim, 1.0)
        h_out = ladder_hamiltonian(dim_out, 1.0)
    else:
        h_in = random_hamiltonian(dim, rng)
        h_out = random_hamiltonian(dim_out, rng)
    clock = ClockSystem(state, h_in)
    channel = covariant_twirl(random_channel(dim, dim_out, kraus_rank, rng), h_in, h_out)
    report = monotonicity_check(clock, channel, h_out)
    return [
        {
            "sample_id": index,
            "seed": sub_seed,
            "dim_in": dim,
            "dim_out1": dim_out,
            "dim_out2": None,
            "f_in": report.f_in,
            "f1": report.f_out,
            "f2": None,
            "e2": None,
            "lhs": report.f_in,
            "rhs": report.f_out,
            "margin": report.f_in - report.f_out,
            "satisfied": report.holds,
            "covariance_residual": report.covariance_residual,
            "kraus_rank": kraus_rank,
            "energy_scale": None,
            "clock": "random",
        }
    ]


def _normalize_config(config: dict, seed) -> dict:
    if not isinstance(config, dict):
        raise ConfigError("sweep config must be a JSON object")
    experiment = _optional(config, "experiment", None, choices=("copy_bound", "monotonicity"))
    if experiment is None:
        raise ConfigError("sweep config is missing required field 'experiment'")
    out = {"experiment": experiment}
    out["samples"] = _require(config, "samples", int, minimum=1)
    if seed is None:
        seed = config.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("sweep config field 'seed' must be an integer (or pass seed explicitly)")
    out["seed"] = seed
    if experiment == "copy_bound":
        out["dim_in"] = _require(config, "dim_in", int, minimum=1)
        out["dim_out1"] = _require(config, "dim_out1", int, minimum=1)
        out["dim_out2"] = _require(config, "dim_out2", int, minimum=1)
        out["kraus_rank"] = _optional(config, "kraus_rank", 2)
        out["clock"] = _optional(
            config, "clock", "equal_superposition", choices=("equal_superposition", "random")
        )
        out["hamiltonians"] = _optional(config, "hamiltonians", "ladder", choices=("ladder", "random"))
        out["energy_quantum"] = float(_optional(config, "energy_quantum", 1.0))
        scales = _optional(config, "energy_scales", [1.0])
        if not isinstance(scales, (list, tuple)) or not scales:
            raise ConfigError("sweep config field 'energy_scales' must be a non-empty list")
        out["energy_scales"] = [float(s) for s in scales]
    else:
        out["dim"] = _require(config, "dim", int, minimum=1)
        out["dim_out"] = _optional(config, "dim_out", out["dim"])
        out["kraus_rank"] = _optional(config, "kraus_rank", 2)
        out["hamiltonians"] = _optional(config, "hamiltonians", "ladder", choices=("ladder", "random"))
    return out


def sweep(config: dict, seed=None, workers: int = 1) -> SweepResult:
    """Run a seeded Monte-Carlo sweep of copy-bound or monotonicity checks.

    Every sample derives its own sub-seed as seed + sample index, so results
    are identical whether samples run sequentially or on ``workers`` threads.
    """
    cfg = _normalize_config(config, seed)
    base_seed = cfg["seed"]
    samples = cfg["samples"]
    sample_fn = _copy_bound_sample if cfg["experiment"] == "copy_bound" else _monotonicity_sample

    def run(index: int) -> list:
        return sample_fn(cfg, base_seed, index)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            chunks = list(pool.map(run, range(samples)))
    else:
        chunks = [run(i) for i in range(samples)]
    rows = [row for chunk in chunks for row in chunk]

    margins = [row["margin"] for row in rows]
    summary = {
        "experiment": cfg["experiment"],
        "samples": samples,
        "rows": len(rows),
        "min_margin": min(margins),
        "all_satisfied": all(row["satisfied"] for row in rows),
    }
    return SweepResult(experiment=cfg["experiment"], seed=base_seed, rows=rows, summary=summary)
