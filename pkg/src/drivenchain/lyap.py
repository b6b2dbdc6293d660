"""Dense linear-algebra kernel: matrix exponentials, Lyapunov/Stein
solvers, and the one-period covariance propagator.

Both Lyapunov equations are solved by Kronecker vectorization into a
(2N)^2-dimensional linear system; at the chain sizes this package targets
(N <= ~20, matrices <= ~200 x 200 after vectorization headroom) the cubic
cost of the dense factorization is negligible and the approach is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import FloquetResonanceError, NoUniqueSteadyStateError
from .models import CorrelationMatrix

STABILITY_TOL = 1e-10
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class PeriodPropagator:
    """One-period pair (Q, P): C(t) = Q C(0) Q^T - i P Q^T."""

    q: np.ndarray
    p: np.ndarray
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if q.shape != p.shape or q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError("Q and P must be square matrices of equal shape")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @property
    def q_condition(self) -> float:
        return float(np.linalg.cond(self.q))


def matrix_exp(a: np.ndarray) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring with a Pade core.

    Thin validation wrapper over scipy's expm (Al-Mohy/Higham scaling and
    squaring), which meets the <= 1e-12 relative-accuracy contract for
    norms up to ~50.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix_exp needs a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix_exp needs finite entries")
    return sla.expm(a)


def _check_continuous_stability(x: np.ndarray, tol: float) -> float:
    eigs = np.linalg.eigvals(x)
    worst = eigs[np.argmin(eigs.real)]
    if worst.real <= tol:
        raise NoUniqueSteadyStateError(
            "no unique steady state: damping matrix X has eigenvalue "
            f"{worst} with real part {worst.real:.3e} <= {tol:.0e}"
        )
    return float(eigs.real.min())


def solve_continuous_lyapunov(
    x: np.ndarray,
    y: np.ndarray,
    *,
    stability_tol: float = STABILITY_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> CorrelationMatrix:
    """Solve X C + C X^T = i Y for the stationary correlation matrix.

    X must be strictly stable (all eigenvalue real parts above the
    tolerance), otherwise the steady state is not unique.  With Y real
    antisymmetric the solution is purely imaginary antisymmetric; writing
    C = i W reduces the problem to one real Kronecker solve
    (X (x) I + I (x) X) vec(W) = vec(Y).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dim = x.shape[0]
    if x.shape != (dim, dim) or y.shape != (dim, dim):
        raise ValueError("X and Y must be square matrices of equal shape")
    gap = _check_continuous_stability(x, stability_tol)
    eye = np.eye(dim)
    kron = np.kron(x, eye) + np.kron(eye, x)
    w = sla.solve(kron, y.reshape(-1)).reshape(dim, dim)
    c = 1j * w
    # Antisymmetrization cleanup; the adjustment must be at rounding level.
    skew = 0.5 * (c - c.T)
    if np.abs(c - skew).max() > 1e-12:
        raise ValueError("Lyapunov solution deviates from antisymmetry beyond cleanup")
    c = skew
    residual = np.abs(x @ c + c @ x.T - 1j * y).max()
    if residual > residual_tol:
        raise ValueError(f"Lyapunov residual {residual:.3e} exceeds {residual_tol:.0e}")
    return CorrelationMatrix(c, meta={"residual": float(residual), "gap": gap})


def solve_discrete_lyapunov(
    q: np.ndarray,
    r: np.ndarray,
    *,
    resonance_tol: float = STABILITY_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> CorrelationMatrix:
    """Solve the Stein equation q C q^T - C = r.

    Unique solvability requires no eigenvalue pair of q with product 1;
    a resonant pair means the Floquet fixed point is not unique.  The
    real Kronecker system (q (x) q - I) is factored once and applied to
    the real and imaginary parts of r.
    """
    q = np.asarray(q, dtype=float)
    r = np.asarray(r, dtype=complex)
    dim = q.shape[0]
    if q.shape != (dim, dim) or r.shape != (dim, dim):
        raise ValueError("q and r must be square matrices of equal shape")
    eigs = np.linalg.eigvals(q)
    products = eigs[:, None] * eigs[None, :]
    dist = np.abs(products - 1.0)
    if dist.min() <= resonance_tol:
        i, j = np.unravel_index(int(dist.argmin()), dist.shape)
        raise FloquetResonanceError(
            "non-unique Floquet fixed point: eigenvalue pair "
            f"({eigs[i]}, {eigs[j]}) has product within {resonance_tol:.0e} of 1"
        )
    kron = np.kron(q, q) - np.eye(dim * dim)
    lu = sla.lu_factor(kron)
    w_re = sla.lu_solve(lu, r.real.reshape(-1))
    if np.abs(r.imag).max() > 0:
        w_im = sla.lu_solve(lu, r.imag.reshape(-1))
    else:
        w_im = np.zeros(dim * dim)
    c = (w_re + 1j * w_im).reshape(dim, dim)
    residual = np.abs(q @ c @ q.T - c - r).max()
    if residual > residual_tol:
        raise ValueError(f"Stein residual {residual:.3e} exceeds {residual_tol:.0e}")
    gap = float(1.0 - np.abs(eigs).max() ** 2)
    return CorrelationMatrix(c, meta={"residual": float(residual), "gap": gap})


def propagate_period(x0: np.ndarray, y: np.ndarray, tau: float) -> PeriodPropagator:
    """Propagate (Q, P) across one free-evolution interval of length tau.

    With constant X the solutions of dQ/dt = -X Q, dP/dt = -X P - Y Q^{-T}
    from Q(0) = I, P(0) = 0 are Q = exp(-X tau) and
    P = -int_0^tau exp(-X (tau-s)) Y exp(X^T s) ds.  The integral is read
    off the upper-right block of a single augmented block-triangular
    exponential (Van Loan identity), so no quadrature is involved.
    """
    if tau <= 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    x0 = np.asarray(x0, dtype=float)
    y = np.asarray(y, dtype=float)
    dim = x0.shape[0]
    if x0.shape != (dim, dim) or y.shape != (dim, dim):
        raise ValueError("X and Y must be square matrices of equal shape")
    aug = np.zeros((2 * dim, 2 * dim))
    aug[:dim, :dim] = -x0
    aug[:dim, dim:] = y
    aug[dim:, dim:] = x0.T
    exp_aug = matrix_exp(aug * tau)
    q = exp_aug[:dim, :dim]
    p = -exp_aug[:dim, dim:]
    return PeriodPropagator(q, p, meta={"tau": float(tau)})
