"""Quantum channels in Choi form: validation, covariance, twirling, composition.

Layout convention (frozen; every formula below depends on it)
--------------------------------------------------------------
A channel G from dimension ``din`` to ``dout`` is stored as the Choi matrix

    choi = sum_ij G(E_ij) (x) E_ij,

a (dout*din) x (dout*din) matrix whose composite row index pairs an output
index ``a`` with an input index ``i`` as  row = i*dout + a  (output index
fast-varying).  Equivalently ``choi.reshape(din, dout, din, dout)`` has axes
(i, a, j, b) and

    G(X)[a, b] = sum_ij choi[(a,i), (b,j)] X[i, j].

Under this layout a Kraus operator K maps to the column vector
``K.T.reshape(-1)`` and the Choi matrix of sum_m K_m . K_m† is
sum_m of the outer products of those vectors.

Complete positivity is positivity of ``choi``; trace preservation is
``partial trace over the output index == identity on the input``.

Covariance
----------
A channel is covariant for Hamiltonians (H_in, H_out) when
G([H_in, .]) = [H_out, G(.)].  In the eigenbases of the two Hamiltonians this
says Choi entries vanish unless the output Bohr frequency matches the input
one; the twirl enforces exactly that, which equals the Cesaro time average
of  t -> e^{iH_out t} G(e^{-iH_in t} . e^{iH_in t}) e^{-iH_out t}  and is
therefore CPTP whenever the input is.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, DomainError, ValidationError
from .states import DensityMatrix, Hamiltonian

HERMITIAN_TOL = 1e-12
DEFAULT_CPTP_TOL = 1e-9
DEFAULT_COVARIANCE_TOL = 1e-9
DEFAULT_FREQ_TOL = 1e-9


class QuantumChannel:
    """Linear map between density-matrix spaces, stored as a Choi matrix.

    Construction enforces shape and hermiticity only; complete positivity and
    trace preservation are measured by :func:`validate_cptp` so that slightly
    defective matrices can still be diagnosed.
    """

    def __init__(self, dim_in: int, dim_out: int, choi):
        if dim_in < 1 or dim_out < 1:
            raise DomainError(f"dimensions must be positive, got {dim_in}x{dim_out}")
        mat = np.asarray(choi, dtype=complex)
        n = dim_in * dim_out
        if mat.shape != (n, n):
            raise DimensionMismatchError(
                f"choi must be {n}x{n} for dims {dim_in}->{dim_out}, got {mat.shape}"
            )
        dev = np.abs(mat - mat.conj().T).max()
        if dev > HERMITIAN_TOL:
            raise ValidationError(
                f"choi matrix is not Hermitian: max deviation {dev:.3e}",
                detail={"deviation": float(dev)},
            )
        mat = (mat + mat.conj().T) / 2
        mat.setflags(write=False)
        self.dim_in = int(dim_in)
        self.dim_out = int(dim_out)
        self.choi = mat

    def __repr__(self):
        return f"QuantumChannel({self.dim_in}->{self.dim_out})"


def apply_to_matrix(channel: QuantumChannel, x: np.ndarray) -> np.ndarray:
    """Linear action of the channel on an arbitrary matrix (no state validation)."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (channel.dim_in, channel.dim_in):
        raise DimensionMismatchError(
            f"matrix shape {x.shape} does not match channel input dim {channel.dim_in}"
        )
    c4 = channel.choi.reshape(channel.dim_in, channel.dim_out, channel.dim_in, channel.dim_out)
    return np.einsum("iajb,ij->ab", c4, x)


def apply_channel(channel: QuantumChannel, rho: DensityMatrix) -> DensityMatrix:
    """Apply the channel to a state; the output is validated as a state."""
    return DensityMatrix(apply_to_matrix(channel, rho.entries))


@dataclass(frozen=True)
class CptpReport:
    cp_violation: float
    tp_violation: float
    ok: bool


def validate_cptp(channel: QuantumChannel, tol: float = DEFAULT_CPTP_TOL) -> CptpReport:
    """Measure how far the channel is from completely positive and trace preserving."""
    eigs = np.linalg.eigvalsh(channel.choi)
    cp_violation = float(max(0.0, -eigs[0]))
    c4 = channel.choi.reshape(channel.dim_in, channel.dim_out, channel.dim_in, channel.dim_out)
    marginal = np.einsum("iaja->ij", c4)
    tp_violation = float(np.abs(marginal - np.eye(channel.dim_in)).max())
    return CptpReport(cp_violation, tp_violation, ok=cp_violation <= tol and tp_violation <= tol)


@dataclass(frozen=True)
class CovarianceReport:
    residual: float
    is_covariant: bool


def is_covariant(
    channel: QuantumChannel,
    h_in: Hamiltonian,
    h_out: Hamiltonian,
    tol: float = DEFAULT_COVARIANCE_TOL,
) -> CovarianceReport:
    """Evaluate G(i[H_in, E_ij]) - i[H_out, G(E_ij)] on all matrix units.

    The residual is the largest max-abs entry over the basis; the channel is
    reported covariant when it stays within ``tol``.
    """
    if h_in.dim != channel.dim_in or h_out.dim != channel.dim_out:
        raise DimensionMismatchError(
            f"hamiltonian dims ({h_in.dim}, {h_out.dim}) do not match channel "
            f"{channel.dim_in}->{channel.dim_out}"
        )
    hin = h_in.entries
    hout = h_out.entries
    residual = 0.0
    for i in range(channel.dim_in):
        for j in range(channel.dim_in):
            unit = np.zeros((channel.dim_in, channel.dim_in), dtype=complex)
            unit[i, j] = 1.0
            lhs = apply_to_matrix(channel, 1j * (hin @ unit - unit @ hin))
            img = apply_to_matrix(channel, unit)
            rhs = 1j * (hout @ img - img @ hout)
            residual = max(residual, float(np.abs(lhs - rhs).max()))
    return CovarianceReport(residual=residual, is_covariant=residual <= tol)


def _frequency_classes(nu: np.ndarray, freq_tol: float) -> np.ndarray:
    """Cluster values into classes whose consecutive gaps stay within freq_tol.

    Grouping (rather than pairwise comparison) keeps the class relation
    transitive, so zeroing cross-class Choi entries is a pinching and exactly
    preserves positivity.
    """
    order = np.argsort(nu, kind="stable")
    classes = np.zeros(nu.size, dtype=int)
    current = 0
    for k in range(1, nu.size):
        if nu[order[k]] - nu[order[k - 1]] > freq_tol:
            current += 1
        classes[order[k]] = current
    return classes


def covariant_twirl(
    channel: QuantumChannel,
    h_in: Hamiltonian,
    h_out: Hamiltonian,
    freq_tol: float = DEFAULT_FREQ_TOL,
) -> QuantumChannel:
    """Project the channel onto the covariant ones for (h_in, h_out).

    In the tensor basis of the Hamiltonian eigenvectors every Choi entry
    carries a frequency mismatch (E_out_a - E_out_b) - (E_in_i - E_in_j);
    entries whose mismatch exceeds ``freq_tol`` are zeroed.  The input factor
    uses the conjugated eigenbasis because the channel acts on the input index
    through a transpose.
    """
    if h_in.dim != channel.dim_in or h_out.dim != channel.dim_out:
        raise DimensionMismatchError(
            f"hamiltonian dims ({h_in.dim}, {h_out.dim}) do not match channel "
            f"{channel.dim_in}->{channel.dim_out}"
        )
    w = np.kron(h_in.eigenvectors.conj(), h_out.eigenvectors)
    c_eig = w.conj().T @ channel.choi @ w
    # nu[i*dout + a] = E_out[a] - E_in[i]; mismatch of entry (r, c) is nu[r] - nu[c]
    nu = (h_out.eigenvalues[None, :] - h_in.eigenvalues[:, None]).reshape(-1)
    classes = _frequency_classes(nu, freq_tol)
    mask = classes[:, None] == classes[None, :]
    twirled = w @ (c_eig * mask) @ w.conj().T
    return QuantumChannel(channel.dim_in, channel.dim_out, twirled)


def identity_channel(dim: int) -> QuantumChannel:
    vec = np.eye(dim, dtype=complex).T.reshape(-1)
    return QuantumChannel(dim, dim, np.outer(vec, vec.conj()))


def depolarizing_channel(dim_in: int, dim_out: int | None = None) -> QuantumChannel:
    """Channel mapping every state to the maximally mixed state I/dim_out."""
    dim_out = dim_in if dim_out is None else dim_out
    choi = np.kron(np.eye(dim_in, dtype=complex), np.eye(dim_out, dtype=complex) / dim_out)
    return QuantumChannel(dim_in, dim_out, choi)


def unitary_channel(u: np.ndarray) -> QuantumChannel:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatchError(f"unitary must be square, got {u.shape}")
    if np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() > 1e-10:
        raise ValidationError("matrix is not unitary to 1e-10")
    return channel_from_kraus([u], u.shape[0], u.shape[0])


def evolution_channel(h: Hamiltonian, t: float) -> QuantumChannel:
    """Unitary conjugation by exp(-iHt) as a channel."""
    return unitary_channel(h.propagator(t))


def channel_from_kraus(kraus, dim_in: int, dim_out: int) -> QuantumChannel:
    choi = np.zeros((dim_in * dim_out, dim_in * dim_out), dtype=complex)
    for k in kraus:
        k = np.asarray(k, dtype=complex)
        if k.shape != (dim_out, dim_in):
            raise DimensionMismatchError(
                f"kraus operator shape {k.shape} does not match dims {dim_in}->{dim_out}"
            )
        vec = k.T.reshape(-1)
        choi += np.outer(vec, vec.conj())
    return QuantumChannel(dim_in, dim_out, choi)


def kraus_operators(channel: QuantumChannel, tol: float = 1e-9) -> list[np.ndarray]:
    """Kraus decomposition from the Choi eigendecomposition (eigenvalues > tol kept)."""
    eigs, vecs = np.linalg.eigh(channel.choi)
    ops = []
    for lam, vec in zip(eigs, vecs.T):
        if lam > tol:
            ops.append(np.sqrt(lam) * vec.reshape(channel.dim_in, channel.dim_out).T)
    return ops


def random_channel(dim_in: int, dim_out: int, kraus_rank: int, seed) -> QuantumChannel:
    """Seeded Haar-style random CPTP channel from an orthonormalized Gaussian isometry."""
    if kraus_rank < 1:
        raise DomainError(f"kraus_rank must be positive, got {kraus_rank}")
    if kraus_rank * dim_out < dim_in:
        raise DomainError(
            f"cannot form an isometry: kraus_rank*dim_out = {kraus_rank * dim_out} < dim_in = {dim_in}"
        )
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim_out * kraus_rank, dim_in)) + 1j * rng.standard_normal(
        (dim_out * kraus_rank, dim_in)
    )
    q, r = np.linalg.qr(g)
    # canonical phases: make diag(r) real positive so the draw is unambiguous
    phases = np.diag(r).copy()
    phases = np.where(np.abs(phases) > 0, phases / np.abs(phases), 1.0)
    q = q * phases.conj()
    kraus = [q[m * dim_out : (m + 1) * dim_out, :] for m in range(kraus_rank)]
    return channel_from_kraus(kraus, dim_in, dim_out)


def tensor(channel1: QuantumChannel, channel2: QuantumChannel) -> QuantumChannel:
    """Parallel composition G1 (x) G2 acting on the tensor-product input space."""
    d1i, d1o = channel1.dim_in, channel1.dim_out
    d2i, d2o = channel2.dim_in, channel2.dim_out
    c1 = channel1.choi.reshape(d1i, d1o, d1i, d1o)
    c2 = channel2.choi.reshape(d2i, d2o, d2i, d2o)
    combined = np.einsum("iajb,kcld->ikacjlbd", c1, c2)
    n = d1i * d2i * d1o * d2o
    return QuantumChannel(d1i * d2i, d1o * d2o, combined.reshape(n, n))


def _partial_trace_matrix(x: np.ndarray, d1: int, d2: int, keep: int) -> np.ndarray:
    x4 = x.reshape(d1, d2, d1, d2)
    if keep == 1:
        return np.einsum("ikjk->ij", x4)
    if keep == 2:
        return np.einsum("kikj->ij", x4)
    raise DomainError(f"keep must be 1 or 2, got {keep!r}")


def partial_trace(rho: DensityMatrix, dims, keep: int) -> DensityMatrix:
    """Reduce a bipartite state to the factor ``keep`` (1 or 2) of dims = [d1, d2]."""
    d1, d2 = int(dims[0]), int(dims[1])
    if d1 * d2 != rho.dim:
        raise DimensionMismatchError(f"dims {d1}x{d2} do not factor state dim {rho.dim}")
    return DensityMatrix(_partial_trace_matrix(rho.entries, d1, d2, keep))


def append_state(sigma: DensityMatrix, dim_in: int) -> QuantumChannel:
    """Channel rho -> rho (x) sigma from ``dim_in`` to ``dim_in * sigma.dim``."""
    dim_out = dim_in * sigma.dim
    choi = np.zeros((dim_in * dim_out, dim_in * dim_out), dtype=complex)
    for i in range(dim_in):
        for j in range(dim_in):
            unit = np.zeros((dim_in, dim_in), dtype=complex)
            unit[i, j] = 1.0
            choi += np.kron(unit, np.kron(unit, sigma.entries))
    return QuantumChannel(dim_in, dim_out, choi)
