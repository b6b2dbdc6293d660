"""Brute-force Lindblad solver on the full 2^N Hilbert space.

Serves as the exact oracle for the covariance path and as the only path
for spin-local correlators and power-law interactions.  The master
equation convention carries a factor 2 on the sandwich term and no 1/2 on
the anticommutator:

    drho/dt = -i [H, rho] + sum_mu (2 L rho L^+ - {L^+ L, rho}).

Vectorization is row-major throughout: vec(A rho B) = (A kron B^T) vec(rho).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConvergenceError, FloquetResonanceError, NoUniqueSteadyStateError
from .lyap import matrix_exp
from .models import ChainParams, CorrelationMatrix, KickParams

DENSE_SUPEROP_MAX_SITES = 6
FULL_SPACE_MAX_SITES = 12
MAJORANA_MAX_SITES = 10

STEADY_RESIDUAL_TOL = 1e-10
FLOQUET_RESIDUAL_TOL = 1e-9
POSITIVITY_TOL = -1e-8

_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

RANGE_KINDS = ("nearest-neighbor", "power-law")


@dataclass(frozen=True)
class RangeSpec:
    """Interaction range: nearest-neighbor exchange or power-law decay."""

    kind: str = "nearest-neighbor"
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in RANGE_KINDS:
            raise ValueError(f"range kind must be one of {RANGE_KINDS}, got {self.kind!r}")
        if self.kind == "power-law":
            if self.alpha is None or not (self.alpha > 0):
                raise ValueError("power-law range needs alpha > 0")


NEAREST = RangeSpec("nearest-neighbor")


@dataclass(frozen=True)
class CouplingMatrices:
    """Site-pair exchange amplitudes for the xx and yy channels."""

    jx: np.ndarray
    jy: np.ndarray


@dataclass(frozen=True)
class DensityMatrix:
    """Full-space density matrix plus solver diagnostics."""

    rho: np.ndarray
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        dim = rho.shape[0]
        if rho.shape != (dim, dim) or dim < 2 or dim & (dim - 1):
            raise ValueError(f"density matrix must be 2^N x 2^N, got {rho.shape}")
        object.__setattr__(self, "rho", rho)

    @property
    def n_sites(self) -> int:
        return self.rho.shape[0].bit_length() - 1

    def validate(
        self,
        hermiticity_tol: float = 1e-10,
        trace_tol: float = 1e-10,
        positivity_tol: float = POSITIVITY_TOL,
    ) -> "DensityMatrix":
        rho = self.rho
        if np.abs(rho - rho.conj().T).max() > hermiticity_tol:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > trace_tol:
            raise ValueError(f"density matrix trace {np.trace(rho)} is not 1")
        lowest = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
        if lowest < positivity_tol:
            raise ValueError(f"density matrix eigenvalue {lowest:.3e} below {positivity_tol:.0e}")
        return self


def coupling_matrices(params: ChainParams, range_spec: RangeSpec = NEAREST) -> CouplingMatrices:
    """Exchange amplitude matrices with pinned nearest-neighbor values
    (1 +- gamma)/2 and, for power-law range, |j-k|^-alpha decay from them."""
    n = params.n_sites
    jx_nn = (1.0 + params.gamma) / 2.0
    jy_nn = (1.0 - params.gamma) / 2.0
    dist = np.abs(np.subtract.outer(np.arange(n), np.arange(n))).astype(float)
    if range_spec.kind == "nearest-neighbor":
        profile = np.where(dist == 1.0, 1.0, 0.0)
    else:
        with np.errstate(divide="ignore"):
            profile = np.where(dist > 0, dist, np.inf) ** (-range_spec.alpha)
    return CouplingMatrices(jx_nn * profile, jy_nn * profile)


@functools.lru_cache(maxsize=None)
def _site_op_sparse(op_key: str, site: int, n_sites: int) -> sp.csr_matrix:
    op = {"x": _SX, "y": _SY, "z": _SZ}[op_key]
    mat = sp.identity(1, dtype=complex, format="csr")
    for m in range(n_sites):
        factor = sp.csr_matrix(op) if m == site else sp.identity(2, dtype=complex, format="csr")
        mat = sp.kron(mat, factor, format="csr")
    return mat


def _site_op(op_key: str, site: int, n_sites: int) -> np.ndarray:
    return _site_op_sparse(op_key, site, n_sites).toarray()


@functools.lru_cache(maxsize=4)
def _majorana_ops(n_sites: int) -> tuple[np.ndarray, ...]:
    """Dense Majorana string operators w_1..w_2N (zero-based index order
    w_{2m} ~ sx_m string, w_{2m+1} ~ sy_m string)."""
    ops = []
    for site in range(n_sites):
        string = sp.identity(2**n_sites, dtype=complex, format="csr")
        for m in range(site):
            string = string @ _site_op_sparse("z", m, n_sites)
        ops.append((_site_op_sparse("x", site, n_sites) @ string).toarray())
        ops.append((_site_op_sparse("y", site, n_sites) @ string).toarray())
    return tuple(ops)


def _hamiltonian_sparse(
    params: ChainParams, range_spec: RangeSpec = NEAREST, include_field: bool = True
) -> sp.csr_matrix:
    n = params.n_sites
    couplings = coupling_matrices(params, range_spec)
    dim = 2**n
    h = sp.csr_matrix((dim, dim), dtype=complex)
    for j in range(n):
        for k in range(j + 1, n):
            if couplings.jx[j, k] != 0.0:
                h = h + couplings.jx[j, k] * (
                    _site_op_sparse("x", j, n) @ _site_op_sparse("x", k, n)
                )
            if couplings.jy[j, k] != 0.0:
                h = h + couplings.jy[j, k] * (
                    _site_op_sparse("y", j, n) @ _site_op_sparse("y", k, n)
                )
    if include_field and params.h != 0.0:
        for j in range(n):
            h = h + params.h * _site_op_sparse("z", j, n)
    return h.tocsr()


def build_hamiltonian_full(
    params: ChainParams, range_spec: RangeSpec = NEAREST, include_field: bool = True
) -> np.ndarray:
    """Dense spin Hamiltonian on the full 2^N space (N <= 12 guard)."""
    if params.n_sites > FULL_SPACE_MAX_SITES:
        raise ValueError(
            f"full-space Hamiltonian limited to N <= {FULL_SPACE_MAX_SITES}, "
            f"got N = {params.n_sites}"
        )
    return _hamiltonian_sparse(params, range_spec, include_field).toarray()


def _bath_ops_sparse(params: ChainParams) -> list[sp.csr_matrix]:
    """The four jump operators as true spin operators (strings intact)."""
    n = params.n_sites
    rates = params.bath
    sp_left = 0.5 * (_site_op_sparse("x", 0, n) + 1j * _site_op_sparse("y", 0, n))
    sm_left = 0.5 * (_site_op_sparse("x", 0, n) - 1j * _site_op_sparse("y", 0, n))
    sp_right = 0.5 * (_site_op_sparse("x", n - 1, n) + 1j * _site_op_sparse("y", n - 1, n))
    sm_right = 0.5 * (_site_op_sparse("x", n - 1, n) - 1j * _site_op_sparse("y", n - 1, n))
    return [
        math.sqrt(rates.gamma_1l) * sp_left,
        math.sqrt(rates.gamma_2l) * sm_left,
        math.sqrt(rates.gamma_1r) * sp_right,
        math.sqrt(rates.gamma_2r) * sm_right,
    ]


def bath_operators_full(params: ChainParams) -> list[np.ndarray]:
    return [op.toarray() for op in _bath_ops_sparse(params)]


def _resolve_jump_ops(baths):
    if isinstance(baths, ChainParams):
        return bath_operators_full(baths)
    return [np.asarray(op, dtype=complex) for op in baths]


def lindblad_apply(rho: np.ndarray, h_full: np.ndarray, baths) -> np.ndarray:
    """Right-hand side of the master equation for a given state.

    ``baths`` is either ChainParams (the standard four edge operators) or
    an explicit sequence of jump operators.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != h_full.shape:
        raise ValueError(f"shape mismatch: rho {rho.shape} vs H {h_full.shape}")
    out = -1j * (h_full @ rho - rho @ h_full)
    for op in _resolve_jump_ops(baths):
        ldag_l = op.conj().T @ op
        out += 2.0 * op @ rho @ op.conj().T - ldag_l @ rho - rho @ ldag_l
    return out


def liouvillian_from_operators(h_full: np.ndarray, jump_ops) -> np.ndarray:
    """Dense generator for explicit (H, jump operators); small systems."""
    h = np.asarray(h_full, dtype=complex)
    dim = h.shape[0]
    eye = np.eye(dim, dtype=complex)
    gen = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for op in _resolve_jump_ops(jump_ops):
        ldag_l = op.conj().T @ op
        gen += 2.0 * np.kron(op, op.conj())
        gen -= np.kron(ldag_l, eye) + np.kron(eye, ldag_l.T)
    return gen


def steady_state_from_operators(h_full: np.ndarray, jump_ops) -> DensityMatrix:
    """Steady state for explicit operators via the dense null-eigenvector
    path; the operator-level core behind steady_state_static."""
    gen = liouvillian_from_operators(h_full, jump_ops)
    dim = np.asarray(h_full).shape[0]
    rho, meta = _steady_from_dense_generator(gen, dim)
    return DensityMatrix(rho, meta=meta).validate()


def _steady_from_dense_generator(gen: np.ndarray, dim: int):
    vals, vecs = np.linalg.eig(gen)
    order = np.argsort(np.abs(vals))
    second = float(np.abs(vals[order[1]]))
    if second < 1e-10:
        raise NoUniqueSteadyStateError(
            f"non-unique steady state: generator kernel is degenerate "
            f"(two eigenvalues within {second:.3e} of zero)"
        )
    rho = _rho_from_vec(vecs[:, order[0]], dim)
    residual = float(np.abs(gen @ rho.reshape(-1)).max())
    return rho, {"method": "eig", "gap": second, "residual": residual}


def liouvillian_sparse(
    params: ChainParams, range_spec: RangeSpec = NEAREST, include_field: bool = True
) -> sp.csr_matrix:
    """Sparse 4^N x 4^N generator in row-major vectorization."""
    n = params.n_sites
    dim = 2**n
    eye = sp.identity(dim, dtype=complex, format="csr")
    h = _hamiltonian_sparse(params, range_spec, include_field)
    gen = -1j * (sp.kron(h, eye, format="csr") - sp.kron(eye, h.T, format="csr"))
    for op in _bath_ops_sparse(params):
        ldag_l = (op.conj().T @ op).tocsr()
        gen = gen + 2.0 * sp.kron(op, op.conj(), format="csr")
        gen = gen - sp.kron(ldag_l, eye, format="csr")
        gen = gen - sp.kron(eye, ldag_l.T, format="csr")
    return gen.tocsr()


def liouvillian_matrix(
    params: ChainParams, range_spec: RangeSpec = NEAREST, include_field: bool = True
) -> np.ndarray:
    if params.n_sites > DENSE_SUPEROP_MAX_SITES:
        raise ValueError(
            f"dense superoperator limited to N <= {DENSE_SUPEROP_MAX_SITES}, "
            f"got N = {params.n_sites}"
        )
    return liouvillian_sparse(params, range_spec, include_field).toarray()


class Superoperator:
    """Linear map on row-major vectorized density matrices.

    Holds either a dense 4^N x 4^N matrix or a matrix-free application
    routine; both expose the same ``apply`` interface.
    """

    def __init__(self, dim: int, apply_fn=None, matrix: np.ndarray | None = None, meta=None):
        if apply_fn is None and matrix is None:
            raise ValueError("need an apply function or a dense matrix")
        self.dim = dim
        self.matrix = matrix
        self._apply_fn = apply_fn
        self.meta = dict(meta or {})

    def apply(self, vec: np.ndarray) -> np.ndarray:
        if self.matrix is not None:
            return self.matrix @ vec
        return self._apply_fn(vec)

    def apply_to_operator(self, rho: np.ndarray) -> np.ndarray:
        return self.apply(np.asarray(rho, dtype=complex).reshape(-1)).reshape(self.dim, self.dim)

    def trace_residual(self) -> float:
        """Max deviation of the map from trace preservation.

        Dense: exact over all inputs via the left action of vec(I).
        Matrix-free: sampled on a fixed set of Hermitian probes.
        """
        tr_vec = np.eye(self.dim, dtype=complex).reshape(-1)
        if self.matrix is not None:
            return float(np.abs(tr_vec @ self.matrix - tr_vec).max())
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(4):
            g = rng.standard_normal((self.dim, self.dim)) + 1j * rng.standard_normal(
                (self.dim, self.dim)
            )
            rho = g @ g.conj().T
            rho /= np.trace(rho)
            image = self.apply_to_operator(rho)
            worst = max(worst, abs(np.trace(image) - 1.0))
        return worst


def kick_phase_diag(n_sites: int, a: float) -> np.ndarray:
    """Diagonal of the kick unitary exp(-i a sum_m sz_m) in the z basis."""
    dim = 2**n_sites
    states = np.arange(dim)
    z_total = np.zeros(dim)
    for m in range(n_sites):
        bit = (states >> (n_sites - 1 - m)) & 1
        z_total += 1.0 - 2.0 * bit
    return np.exp(-1j * a * z_total)


def kick_superop_diag(n_sites: int, a: float) -> np.ndarray:
    """Diagonal of the vectorized conjugation rho -> U rho U^+."""
    u = kick_phase_diag(n_sites, a)
    return np.kron(u, u.conj())


def free_propagator(
    params: ChainParams, range_spec: RangeSpec, tau: float, include_field: bool = False
) -> np.ndarray:
    """Dense exp(L0 tau) for the field-free chain (N <= 6)."""
    gen = liouvillian_matrix(params, range_spec, include_field)
    return matrix_exp(gen * tau)


def one_period_map(
    params: ChainParams,
    kick: KickParams,
    range_spec: RangeSpec = NEAREST,
    placement: str = "free-then-kick",
) -> Superoperator:
    """Kick conjugation composed with free Lindblad evolution over one period.

    Default placement runs the free evolution first, so the map's fixed
    point is the state immediately after a kick.  Dense for N <= 6,
    matrix-free (sparse generator + Taylor-style exponential application)
    above.
    """
    if placement not in ("free-then-kick", "kick-then-free"):
        raise ValueError(f"unknown kick placement {placement!r}")
    n = params.n_sites
    dim = 2**n
    kick_diag = kick_superop_diag(n, kick.a)
    if n <= DENSE_SUPEROP_MAX_SITES:
        free = free_propagator(params, range_spec, kick.tau)
        if placement == "free-then-kick":
            mat = kick_diag[:, None] * free
        else:
            mat = free * kick_diag[None, :]
        return Superoperator(dim, matrix=mat, meta={"placement": placement})
    gen = liouvillian_sparse(params, range_spec, include_field=False) * kick.tau

    def apply_fn(vec):
        if placement == "kick-then-free":
            vec = kick_diag * vec
            return spla.expm_multiply(gen, vec)
        return kick_diag * spla.expm_multiply(gen, vec)

    return Superoperator(dim, apply_fn=apply_fn, meta={"placement": placement})


def _rho_from_vec(vec: np.ndarray, dim: int) -> np.ndarray:
    rho = vec.reshape(dim, dim)
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise NoUniqueSteadyStateError("fixed-point vector has vanishing trace")
    return rho / tr


def _fixed_point_eig(mat: np.ndarray, dim: int, multiplicity_tol: float = 1e-8):
    vals, vecs = np.linalg.eig(mat)
    order = np.argsort(np.abs(vals - 1.0))
    if np.abs(vals[order[1]] - 1.0) < multiplicity_tol:
        raise FloquetResonanceError(
            "non-unique Floquet state: eigenvalue 1 of the period map has "
            f"multiplicity > 1 (next eigenvalue {vals[order[1]]})"
        )
    others = np.abs(vals[order[1:]])
    gap = float(1.0 - others.max())
    return _rho_from_vec(vecs[:, order[0]], dim), gap


def _fixed_point_solve(mat: np.ndarray, dim: int) -> np.ndarray:
    """Null vector of (map - I) with the redundant row swapped for the
    trace constraint; exact for a trace-preserving map with simple
    eigenvalue 1."""
    system = mat - np.eye(dim * dim)
    system[0, :] = np.eye(dim, dtype=complex).reshape(-1)
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[0] = 1.0
    vec = np.linalg.solve(system, rhs)
    return _rho_from_vec(vec, dim)


def _fixed_point_power(
    superop: Superoperator, dim: int, max_iter: int, tol: float
):
    vec = (np.eye(dim, dtype=complex) / dim).reshape(-1)
    tr_vec = np.eye(dim, dtype=complex).reshape(-1)
    prev_delta = None
    rate = None
    for iteration in range(1, max_iter + 1):
        new = superop.apply(vec)
        new = new / (tr_vec @ new)
        delta = float(np.abs(new - vec).max())
        if prev_delta not in (None, 0.0):
            rate = delta / prev_delta
        prev_delta = delta
        vec = new
        if delta < tol:
            gap = float(1.0 - rate) if rate is not None else None
            return _rho_from_vec(vec, dim), gap, iteration
    raise ConvergenceError(
        f"power iteration did not converge within {max_iter} iterations "
        f"(last update {prev_delta:.3e})"
    )


def steady_state_static(
    params: ChainParams,
    range_spec: RangeSpec = NEAREST,
    method: str = "auto",
    max_time: float = 4000.0,
    residual_tol: float = STEADY_RESIDUAL_TOL,
) -> DensityMatrix:
    """Steady state of the static master equation.

    Dense null-eigenvector solve for N <= 6 (with a uniqueness diagnostic,
    the second-smallest |eigenvalue| of the generator); long-time
    propagation of the sparse generator otherwise.
    """
    if method == "auto":
        method = "eig" if params.n_sites <= DENSE_SUPEROP_MAX_SITES else "propagate"
    dim = 2**params.n_sites
    if method == "eig":
        gen = liouvillian_matrix(params, range_spec)
        rho, meta = _steady_from_dense_generator(gen, dim)
    elif method == "propagate":
        gen = liouvillian_sparse(params, range_spec)
        vec = (np.eye(dim, dtype=complex) / dim).reshape(-1)
        chunk = 2.0
        steps = int(np.ceil(max_time / chunk))
        residual = float(np.abs(gen @ vec).max())
        elapsed = 0.0
        for _ in range(steps):
            vec = spla.expm_multiply(gen * chunk, vec)
            rho = 0.5 * (vec.reshape(dim, dim) + vec.reshape(dim, dim).conj().T)
            vec = (rho / np.trace(rho)).reshape(-1)
            elapsed += chunk
            residual = float(np.abs(gen @ vec).max())
            if residual <= residual_tol:
                break
        else:
            raise ConvergenceError(
                f"propagation residual {residual:.3e} above {residual_tol:.0e} "
                f"after t = {elapsed}"
            )
        rho = vec.reshape(dim, dim)
        meta = {"method": "propagate", "gap": None, "residual": residual, "time": elapsed}
    else:
        raise ValueError(f"unknown method {method!r}")
    if meta["residual"] > residual_tol:
        raise ConvergenceError(
            f"steady-state residual {meta['residual']:.3e} exceeds {residual_tol:.0e}"
        )
    return DensityMatrix(rho, meta=meta).validate()


def floquet_from_free_propagator(
    free: np.ndarray,
    n_sites: int,
    a: float,
    placement: str = "free-then-kick",
    method: str = "solve",
    residual_tol: float = FLOQUET_RESIDUAL_TOL,
) -> DensityMatrix:
    """Floquet fixed point given a precomputed free-evolution superoperator.

    Lets sweep drivers amortize the expensive exp(L0 tau) across many kick
    strengths; the kick factor is a cheap diagonal.
    """
    dim = 2**n_sites
    kick_diag = kick_superop_diag(n_sites, a)
    if placement == "free-then-kick":
        mat = kick_diag[:, None] * free
    elif placement == "kick-then-free":
        mat = free * kick_diag[None, :]
    else:
        raise ValueError(f"unknown kick placement {placement!r}")
    if method == "eig":
        rho, gap = _fixed_point_eig(mat, dim)
    elif method == "solve":
        rho, gap = _fixed_point_solve(mat, dim), None
    else:
        raise ValueError(f"unknown method {method!r} for dense fixed point")
    residual = float(np.abs(mat @ rho.reshape(-1) - rho.reshape(-1)).max())
    if residual > residual_tol:
        raise ConvergenceError(
            f"Floquet fixed-point residual {residual:.3e} exceeds {residual_tol:.0e}"
        )
    meta = {"method": method, "gap": gap, "residual": residual, "placement": placement}
    return DensityMatrix(rho, meta=meta).validate()


def floquet_steady_full(
    params: ChainParams,
    kick: KickParams,
    range_spec: RangeSpec = NEAREST,
    method: str = "auto",
    placement: str = "free-then-kick",
    max_iter: int = 20000,
    power_tol: float = 1e-12,
    residual_tol: float = FLOQUET_RESIDUAL_TOL,
) -> DensityMatrix:
    """Asymptotic state of the kicked master equation.

    "eig" (default for N <= 5) extracts the eigenvalue-1 eigenvector of
    the dense period map and reports the spectral gap; "solve" obtains the
    same vector from one LU factorization (no gap; the fast path for
    sweeps); "power" iterates the map with trace renormalization and is
    the only option above the dense-superoperator limit.
    """
    n = params.n_sites
    if method == "auto":
        method = "eig" if n <= 5 else "power"
    if method in ("eig", "solve"):
        free = free_propagator(params, range_spec, kick.tau)
        return floquet_from_free_propagator(
            free, n, kick.a, placement=placement, method=method, residual_tol=residual_tol
        )
    if method != "power":
        raise ValueError(f"unknown method {method!r}")
    superop = one_period_map(params, kick, range_spec, placement)
    dim = 2**n
    rho, gap, iterations = _fixed_point_power(superop, dim, max_iter, power_tol)
    residual = float(np.abs(superop.apply(rho.reshape(-1)) - rho.reshape(-1)).max())
    if residual > residual_tol:
        raise ConvergenceError(
            f"Floquet fixed-point residual {residual:.3e} exceeds {residual_tol:.0e}"
        )
    meta = {
        "method": "power",
        "gap": gap,
        "residual": residual,
        "iterations": iterations,
        "placement": placement,
    }
    return DensityMatrix(rho, meta=meta).validate()


def local_correlators(rho: DensityMatrix | np.ndarray):
    """Two-site spin correlation matrices (xx, xy, yy).

    Entry (j, k) is the expectation of the corresponding Pauli pair; the
    imaginary residue (zero for Hermitian states on j != k) is truncated.
    """
    mat = rho.rho if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    dim = mat.shape[0]
    n = dim.bit_length() - 1
    sx = np.stack([_site_op("x", j, n) for j in range(n)])
    sy = np.stack([_site_op("y", j, n) for j in range(n)])
    rx = np.einsum("kab,bc->kac", sx, mat)
    ry = np.einsum("kab,bc->kac", sy, mat)
    cxx = np.einsum("jab,kba->jk", sx, rx)
    cxy = np.einsum("jab,kba->jk", sx, ry)
    cyy = np.einsum("jab,kba->jk", sy, ry)
    return cxx.real, cxy.real, cyy.real


def local_residual(
    cxx: np.ndarray,
    cxy: np.ndarray,
    cyy: np.ndarray,
    n_sites: int | None = None,
    symmetrize_xy: bool = False,
) -> float:
    """Mean of (|xx| + |xy| + |yy|)/3 over site pairs j < k with
    |j - k| >= N/2.

    ``symmetrize_xy`` averages |xy_{jk}| with |xy_{kj}| instead of using
    the j < k entry alone (the two readings differ only marginally).
    """
    cxx = np.asarray(cxx)
    if n_sites is None:
        n_sites = cxx.shape[0]
    if cxx.shape != (n_sites, n_sites):
        raise ValueError(f"expected {n_sites} x {n_sites} matrices, got {cxx.shape}")
    total = 0.0
    pairs = 0
    for j in range(n_sites):
        for k in range(j + 1, n_sites):
            if k - j >= n_sites / 2.0:
                xy = abs(cxy[j, k])
                if symmetrize_xy:
                    xy = 0.5 * (abs(cxy[j, k]) + abs(cxy[k, j]))
                total += abs(cxx[j, k]) + xy + abs(cyy[j, k])
                pairs += 1
    if pairs == 0:
        raise ValueError("no site pairs admitted by the distance cutoff")
    return total / (3.0 * pairs)


def majorana_correlations_full(rho: DensityMatrix | np.ndarray) -> CorrelationMatrix:
    """Majorana correlation matrix tr(w_j w_k rho) - delta_{jk} with the
    full parity strings; the oracle endpoint for the covariance path."""
    mat = rho.rho if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    dim = mat.shape[0]
    n = dim.bit_length() - 1
    if n > MAJORANA_MAX_SITES:
        raise ValueError(f"Majorana correlations limited to N <= {MAJORANA_MAX_SITES}")
    omegas = np.stack(_majorana_ops(n))
    right = np.einsum("kab,bc->kac", omegas, mat)
    c = np.einsum("jab,kba->jk", omegas, right) - np.eye(2 * n)
    return CorrelationMatrix(c)
