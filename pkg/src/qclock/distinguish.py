"""Disturbance-free distinguishability of clock states.

Two states can be distinguished by a measurement that changes neither of them
exactly when, splitting the Hilbert space into the finest subspaces invariant
under both states, some subspace carries different trace weight under the two
states.  The witness observable is the projector onto such a subspace: it
commutes with both states and has distinct expectation values.

For a continuously evolving clock the relevant subspaces are the spectral
blocks of the Hamiltonian, and the block weights are conserved in time; that
conservation is what forbids reading a clock without disturbing it, and
:func:`conserved_block_traces` checks it numerically.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, DomainError, NumericalDegeneracyError
from .states import ClockSystem, DensityMatrix, evolve

INVARIANCE_TOL = 1e-9
NULLSPACE_RTOL = 1e-10
GROUP_GAP_FACTOR = 1e-7
MAX_REDRAWS = 5


def _hermitian_basis(dim: int) -> list[np.ndarray]:
    """Orthonormal basis of the real vector space of Hermitian dim x dim matrices."""
    basis = []
    for k in range(dim):
        m = np.zeros((dim, dim), dtype=complex)
        m[k, k] = 1.0
        basis.append(m)
    for k in range(dim):
        for l in range(k + 1, dim):
            m = np.zeros((dim, dim), dtype=complex)
            m[k, l] = m[l, k] = 1.0 / np.sqrt(2.0)
            basis.append(m)
            m = np.zeros((dim, dim), dtype=complex)
            m[k, l] = -1j / np.sqrt(2.0)
            m[l, k] = 1j / np.sqrt(2.0)
            basis.append(m)
    return basis


def _commutant_basis(rho1: np.ndarray, rho2: np.ndarray) -> np.ndarray:
    """Coefficient basis (rows) of Hermitian X with [X, rho1] = [X, rho2] = 0.

    Solved as the null space of the stacked real-linear maps X -> [X, rho],
    with singular values below NULLSPACE_RTOL times the largest defining the
    null space.
    """
    dim = rho1.shape[0]
    basis = _hermitian_basis(dim)
    columns = []
    for b in basis:
        c1 = b @ rho1 - rho1 @ b
        c2 = b @ rho2 - rho2 @ b
        columns.append(
            np.concatenate([c1.real.ravel(), c1.imag.ravel(), c2.real.ravel(), c2.imag.ravel()])
        )
    stacked = np.array(columns).T  # (4 dim^2) x (dim^2)
    _, s, vt = np.linalg.svd(stacked)
    cutoff = NULLSPACE_RTOL * (s[0] if s.size else 0.0)
    null_rows = vt[s <= cutoff] if s.size else vt
    return null_rows


def _group_eigenvalues(w: np.ndarray) -> list[np.ndarray]:
    """Split ascending eigenvalues into groups separated by a spectral-gap threshold."""
    spread = float(w[-1] - w[0])
    if spread <= 1e-12 * max(1.0, float(np.abs(w).max())):
        return [np.arange(w.size)]
    gap = GROUP_GAP_FACTOR * spread
    groups = []
    start = 0
    for k in range(1, w.size):
        if w[k] - w[k - 1] > gap:
            groups.append(np.arange(start, k))
            start = k
    groups.append(np.arange(start, w.size))
    return groups


@dataclass(frozen=True)
class DecompositionReport:
    """Finest common invariant subspaces with the block weights of both states."""

    subspaces: list[np.ndarray]
    traces_a: np.ndarray
    traces_b: np.ndarray
    distinguishable: bool
    witness_index: int | None


def common_invariant_decomposition(
    rho1: DensityMatrix,
    rho2: DensityMatrix,
    tol: float = 1e-9,
    seed=0,
) -> DecompositionReport:
    """Decompose the space into the finest subspaces invariant under both states.

    A seeded random Hermitian element of the joint commutant is drawn and its
    eigenspaces (grouped across near-degenerate eigenvalues) give the
    subspaces.  Each candidate decomposition is certified by checking
    invariance of every subspace under both states; uncertified draws are
    retried up to MAX_REDRAWS times before giving up.
    """
    if rho1.dim != rho2.dim:
        raise DimensionMismatchError(f"state dims differ: {rho1.dim} vs {rho2.dim}")
    dim = rho1.dim
    a, b = rho1.entries, rho2.entries
    null_rows = _commutant_basis(a, b)
    basis = _hermitian_basis(dim)
    rng = np.random.default_rng(seed)
    eye = np.eye(dim)

    worst = None
    for _ in range(1 + MAX_REDRAWS):
        coeffs = rng.standard_normal(null_rows.shape[0]) @ null_rows
        x = sum(c * m for c, m in zip(coeffs, basis))
        w, v = np.linalg.eigh(x)
        groups = _group_eigenvalues(w)
        subspaces = [np.ascontiguousarray(v[:, g]) for g in groups]
        residual = 0.0
        for basis_cols in subspaces:
            proj = basis_cols @ basis_cols.conj().T
            for rho in (a, b):
                residual = max(residual, float(np.abs((eye - proj) @ rho @ proj).max()))
        worst = residual if worst is None else min(worst, residual)
        if residual <= INVARIANCE_TOL:
            traces_a = np.array([float(np.real(np.trace(s.conj().T @ a @ s))) for s in subspaces])
            traces_b = np.array([float(np.real(np.trace(s.conj().T @ b @ s))) for s in subspaces])
            gaps = np.abs(traces_a - traces_b)
            distinguishable = bool(gaps.max() > tol)
            witness = int(np.argmax(gaps)) if distinguishable else None
            return DecompositionReport(
                subspaces=subspaces,
                traces_a=traces_a,
                traces_b=traces_b,
                distinguishable=distinguishable,
                witness_index=witness,
            )
    raise NumericalDegeneracyError(
        "could not certify an invariant decomposition after retries",
        detail={"best_residual": worst, "commutant_dim": int(null_rows.shape[0])},
    )


def nondisturbing_distinguishable(
    rho1: DensityMatrix,
    rho2: DensityMatrix,
    tol: float = 1e-9,
    seed=0,
):
    """Decide the criterion and, when it holds, return the witness projector.

    The projector commutes with both states (so measuring it disturbs
    neither) yet has expectation values differing by more than ``tol``.
    """
    report = common_invariant_decomposition(rho1, rho2, tol=tol, seed=seed)
    if not report.distinguishable:
        return False, None
    basis_cols = report.subspaces[report.witness_index]
    proj = basis_cols @ basis_cols.conj().T
    return True, (proj + proj.conj().T) / 2


@dataclass(frozen=True)
class BlockTraceReport:
    """Spectral-block weights of the evolving state at each sampled time."""

    block_traces: np.ndarray  # (n_times, n_blocks)
    max_deviation: float
    conserved: bool


def conserved_block_traces(
    clock: ClockSystem, times, tol: float = 1e-9
) -> BlockTraceReport:
    """Verify that spectral-block weights of the state are constant along the orbit.

    Blocks are eigenvalue groups of the Hamiltonian (grouped within ``tol``);
    the deviation is the largest spread of any block weight over the supplied
    times.  Constancy of these weights is exactly why continuous readout of a
    clock is impossible without disturbance.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if times.size == 0:
        raise DomainError("need at least one time")
    w = clock.hamiltonian.eigenvalues
    v = clock.hamiltonian.eigenvectors
    groups = []
    start = 0
    for k in range(1, w.size):
        if w[k] - w[k - 1] > tol:
            groups.append(np.arange(start, k))
            start = k
    groups.append(np.arange(start, w.size))

    rows = []
    for t in times:
        rho_t = evolve(clock, float(t)).entries
        rows.append(
            [float(np.real(np.trace(v[:, g].conj().T @ rho_t @ v[:, g]))) for g in groups]
        )
    block_traces = np.array(rows)
    max_dev = float((block_traces.max(axis=0) - block_traces.min(axis=0)).max())
    return BlockTraceReport(block_traces=block_traces, max_deviation=max_dev, conserved=max_dev <= 1e-9)


def pairwise_commuting(states, tol: float = 1e-10) -> bool:
    """True iff all pairs of states commute; the broadcastability criterion."""
    mats = [s.entries for s in states]
    if len(mats) < 2:
        raise DomainError("need at least two states")
    dims = {m.shape[0] for m in mats}
    if len(dims) != 1:
        raise DimensionMismatchError(f"states live on different dimensions: {sorted(dims)}")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if np.abs(mats[i] @ mats[j] - mats[j] @ mats[i]).max() > tol:
                return False
    return True


def orthogonal_times(n: int, quantum: float) -> np.ndarray:
    """Times at which the n-level equal-superposition clock visits mutually orthogonal states.

    For the ladder spectrum with spacing E the family is t_k = 2 pi k / (n E),
    k = 0..n-1: the pairwise overlaps are geometric sums of n-th roots of
    unity and vanish identically.  (Note the spacing scales as 1/E: higher
    energy pushes the distinguishable states closer together.)
    """
    if n < 2:
        raise DomainError(f"need at least two levels, got {n}")
    if not (quantum > 0):
        raise DomainError(f"energy quantum must be positive, got {quantum!r}")
    return 2.0 * np.pi * np.arange(n) / (n * quantum)
