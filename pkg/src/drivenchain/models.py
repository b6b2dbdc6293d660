"""Model construction for the boundary-driven XY chain.

Builds the Majorana quadratic form of the chain Hamiltonian, the linear
bath forms for the four edge jump operators, and the pair of real
structure matrices (X, Y) that drive the covariance dynamics

    dC/dt = -X C - C X^T + i Y.

Also evaluates the residual correlator, the mean magnitude of the
correlation-matrix entries over well-separated index pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Real/imaginary residue below this is treated as exact zero when the
# structure matrices are truncated to real storage.
REAL_TRUNCATION_TOL = 1e-14

DISTANCE_CONVENTIONS = ("site", "majorana")


@dataclass(frozen=True)
class BathRates:
    """Rates of the four edge jump operators, raising/lowering at each end.

    All rates must be nonnegative.  An all-zero instance is constructible
    (so that downstream solvers can raise the proper no-unique-steady-state
    error), but no unique asymptotic state exists in that case.
    """

    gamma_1l: float = 0.5
    gamma_2l: float = 0.3
    gamma_1r: float = 0.5
    gamma_2r: float = 0.1

    def __post_init__(self):
        for name, value in self.as_dict().items():
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"bath rate {name} must be >= 0, got {value}")

    def as_dict(self):
        return {
            "gamma_1l": self.gamma_1l,
            "gamma_2l": self.gamma_2l,
            "gamma_1r": self.gamma_1r,
            "gamma_2r": self.gamma_2r,
        }

    @property
    def any_positive(self) -> bool:
        return any(v > 0 for v in self.as_dict().values())


#: Bath rates used by every phase diagram in the package documentation.
DEFAULT_BATH = BathRates(0.5, 0.3, 0.5, 0.1)


@dataclass(frozen=True)
class ChainParams:
    """Static chain parameters: size, anisotropy, transverse field, baths."""

    n_sites: int
    gamma: float
    h: float = 0.0
    bath: BathRates = field(default_factory=lambda: DEFAULT_BATH)

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError(f"n_sites must be >= 2, got {self.n_sites}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if not math.isfinite(self.h):
            raise ValueError("h must be finite")


@dataclass(frozen=True)
class KickParams:
    """Kick strength a and period tau of the periodically kicked chain.

    a is stored as given; pipelines fold it into the canonical [0, pi/2)
    window before computing (the kick map has period pi/2 in a up to an
    overall sign that cancels in correlations).
    """

    a: float
    tau: float

    def __post_init__(self):
        if not math.isfinite(self.a):
            raise ValueError("kick strength a must be finite")
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"kick period tau must be > 0, got {self.tau}")

    @property
    def a_folded(self) -> float:
        return self.a % (math.pi / 2)


@dataclass(frozen=True)
class QuadraticForm:
    """Antisymmetric, purely imaginary 2N x 2N matrix h with H = w . h w."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"quadratic form must be 2N x 2N, got {m.shape}")
        if np.abs(m + m.T).max() > REAL_TRUNCATION_TOL:
            raise ValueError("quadratic form must be antisymmetric")
        if np.abs(m.real).max() > REAL_TRUNCATION_TOL:
            raise ValueError("quadratic form must be purely imaginary")
        object.__setattr__(self, "matrix", m)

    @property
    def n_sites(self) -> int:
        return self.matrix.shape[0] // 2


@dataclass(frozen=True)
class BathVectors:
    """The four linear bath forms, rows of a 4 x 2N complex array."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != 4 or v.shape[1] % 2:
            raise ValueError(f"expected a 4 x 2N array, got {v.shape}")
        object.__setattr__(self, "vectors", v)

    @property
    def n_sites(self) -> int:
        return self.vectors.shape[1] // 2


@dataclass(frozen=True)
class StructureMatrices:
    """Real pair (X, Y): X is damping-plus-Hamiltonian, Y the noise kernel."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise ValueError("X and Y must be square matrices of equal shape")
        if np.abs(y + y.T).max() > 1e-12:
            raise ValueError("Y must be antisymmetric")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Majorana two-point matrix C_{jk} = <w_j w_k> - delta_{jk}.

    Physical states give an antisymmetric, purely imaginary C with entries
    bounded by 1 in magnitude; ``validate`` checks those invariants.  The
    raw container does not enforce them so that solver-level identities
    (e.g. the q = 0 Stein limit) can be exercised with synthetic data.
    """

    c: np.ndarray
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] % 2:
            raise ValueError(f"correlation matrix must be 2N x 2N, got {c.shape}")
        object.__setattr__(self, "c", c)

    @property
    def n_sites(self) -> int:
        return self.c.shape[0] // 2

    def validate(self, tol: float = 1e-10) -> "CorrelationMatrix":
        c = self.c
        if np.abs(c + c.T).max() > tol:
            raise ValueError("correlation matrix is not antisymmetric")
        if np.abs(c.real).max() > tol:
            raise ValueError("correlation matrix is not purely imaginary")
        if np.abs(np.diag(c)).max() > tol:
            raise ValueError("correlation matrix has a nonzero diagonal")
        if np.abs(c).max() > 1.0 + tol:
            raise ValueError("correlation matrix entry exceeds unit magnitude")
        return self


def build_xy_form(params: ChainParams, include_field: bool = True) -> QuadraticForm:
    """Majorana quadratic form of the XY chain Hamiltonian.

    With the Majorana convention w_{2m} = sx_m (prod of sz to the left),
    w_{2m+1} = sy_m (same string), zero-based site m, the exchange and
    field terms map to

        sx_m sx_{m+1} = -i w_{2m+1} w_{2m+2}
        sy_m sy_{m+1} = +i w_{2m}   w_{2m+3}
        sz_m          = -i w_{2m}   w_{2m+1}

    and the returned matrix carries each coefficient split antisymmetrically
    over the (j, k) and (k, j) slots.  ``include_field=False`` drops the
    transverse-field term (the kicked model's free Hamiltonian).
    """
    n = params.n_sites
    jx = (1.0 + params.gamma) / 2.0
    jy = (1.0 - params.gamma) / 2.0
    m = np.zeros((2 * n, 2 * n), dtype=complex)
    for site in range(n - 1):
        a = 2 * site
        m[a + 1, a + 2] += -0.5j * jx
        m[a + 2, a + 1] += +0.5j * jx
        m[a, a + 3] += +0.5j * jy
        m[a + 3, a] += -0.5j * jy
    if include_field:
        for site in range(n):
            a = 2 * site
            m[a, a + 1] += -0.5j * params.h
            m[a + 1, a] += +0.5j * params.h
    return QuadraticForm(m)


def build_kick_form(n_sites: int) -> QuadraticForm:
    """Quadratic form of the unit-strength kick generator, sum of sz."""
    if n_sites < 1:
        raise ValueError(f"n_sites must be >= 1, got {n_sites}")
    m = np.zeros((2 * n_sites, 2 * n_sites), dtype=complex)
    for site in range(n_sites):
        a = 2 * site
        m[a, a + 1] = -0.5j
        m[a + 1, a] = +0.5j
    return QuadraticForm(m)


def build_bath_vectors(params: ChainParams) -> BathVectors:
    """Linear Majorana forms of the four edge jump operators.

    Raising/lowering at the left site are exactly (w_1 +- i w_2)/2 scaled
    by sqrt(rate).  The right-edge operators carry a Jordan-Wigner parity
    string in the spin picture; the string is dropped here and the
    resulting forms are certified against the brute-force master-equation
    solver (the dropped factor is a global parity that acts trivially on
    the even operator sector containing every asymptotic state).
    """
    n = params.n_sites
    rates = params.bath
    vectors = np.zeros((4, 2 * n), dtype=complex)
    vectors[0, 0] = 0.5 * math.sqrt(rates.gamma_1l)
    vectors[0, 1] = 0.5j * math.sqrt(rates.gamma_1l)
    vectors[1, 0] = 0.5 * math.sqrt(rates.gamma_2l)
    vectors[1, 1] = -0.5j * math.sqrt(rates.gamma_2l)
    vectors[2, 2 * n - 2] = 0.5 * math.sqrt(rates.gamma_1r)
    vectors[2, 2 * n - 1] = 0.5j * math.sqrt(rates.gamma_1r)
    vectors[3, 2 * n - 2] = 0.5 * math.sqrt(rates.gamma_2r)
    vectors[3, 2 * n - 1] = -0.5j * math.sqrt(rates.gamma_2r)
    return BathVectors(vectors)


def assemble_structure(h_form: QuadraticForm, baths: BathVectors) -> StructureMatrices:
    """Assemble X = 4(i h + M_r) and Y = 4(M_i - M_i^T).

    M_{jk} = sum_mu conj(l_mu)_j (l_mu)_k; the conjugation sits on the
    first index, which is the placement consistent with the master
    equation (verified against the brute-force oracle).  X and Y are
    exactly real for valid inputs; any residue above the truncation
    tolerance is an error.
    """
    dim = h_form.matrix.shape[0]
    if baths.vectors.shape[1] != dim:
        raise ValueError(
            f"dimension mismatch: form is {dim} x {dim}, "
            f"bath vectors have length {baths.vectors.shape[1]}"
        )
    m = baths.vectors.conj().T @ baths.vectors  # M_{jk} = sum_mu conj(l_j) l_k
    x_c = 4.0 * (1j * h_form.matrix + m.real)
    y_c = 4.0 * (m.imag - m.imag.T)
    if np.abs(x_c.imag).max() > REAL_TRUNCATION_TOL:
        raise ValueError("X has imaginary residue above the truncation tolerance")
    return StructureMatrices(x_c.real, y_c)


def admitted_pairs(n_sites: int, convention: str = "site") -> np.ndarray:
    """Boolean 2N x 2N mask of index pairs entering the residual correlator.

    "site": Majorana index j belongs to site j//2 (zero-based) and the
    pair is admitted when the site distance is >= N/2 (real comparison).
    "majorana": raw index distance |j-k| >= N.
    """
    if convention not in DISTANCE_CONVENTIONS:
        raise ValueError(
            f"unknown distance convention {convention!r}; "
            f"expected one of {DISTANCE_CONVENTIONS}"
        )
    idx = np.arange(2 * n_sites)
    if convention == "site":
        pos = idx // 2
        dist = np.abs(pos[:, None] - pos[None, :])
        return dist >= n_sites / 2.0
    dist = np.abs(idx[:, None] - idx[None, :])
    return dist >= n_sites


def residual_correlation(c, n_sites: int | None = None, convention: str = "site") -> float:
    """Mean |C_{jk}| over well-separated index pairs.

    Accepts a CorrelationMatrix or a bare 2N x 2N array.  The admitted
    set is never empty for N >= 2 under either convention; an empty set
    is reported as an error rather than 0/0.
    """
    mat = c.c if isinstance(c, CorrelationMatrix) else np.asarray(c)
    if n_sites is None:
        n_sites = mat.shape[0] // 2
    if mat.shape != (2 * n_sites, 2 * n_sites):
        raise ValueError(f"expected a {2 * n_sites} x {2 * n_sites} matrix, got {mat.shape}")
    mask = admitted_pairs(n_sites, convention)
    count = int(mask.sum())
    if count == 0:
        raise ValueError("no index pairs admitted by the distance cutoff")
    return float(np.abs(mat[mask]).sum() / count)
