"""Shared fixtures and independent full-space oracles.

The helpers here rebuild spin operators, Majorana strings, and the XY
Hamiltonian directly from Pauli matrices with plain np.kron chains.  They
deliberately do not reuse the package's own constructors so that
reconstruction tests compare two independent routes.
"""

import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


def kron_chain(ops):
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def pauli_site(op, site, n):
    return kron_chain([op if m == site else ID2 for m in range(n)])


def majorana_oracle(j, n):
    """w_{2m} = sx_m prod_{m'<m} sz, w_{2m+1} = sy_m prod (zero-based)."""
    site, kind = divmod(j, 2)
    ops = []
    for m in range(n):
        if m < site:
            ops.append(SZ)
        elif m == site:
            ops.append(SX if kind == 0 else SY)
        else:
            ops.append(ID2)
    return kron_chain(ops)


def xy_hamiltonian_oracle(n, gamma, h, include_field=True):
    """Direct Pauli-matrix construction of the XY chain Hamiltonian."""
    dim = 2**n
    ham = np.zeros((dim, dim), dtype=complex)
    for m in range(n - 1):
        ham += 0.5 * (1 + gamma) * pauli_site(SX, m, n) @ pauli_site(SX, m + 1, n)
        ham += 0.5 * (1 - gamma) * pauli_site(SY, m, n) @ pauli_site(SY, m + 1, n)
    if include_field:
        for m in range(n):
            ham += h * pauli_site(SZ, m, n)
    return ham


def form_to_full_space(form_matrix, n):
    """Reconstruct sum_{jk} h_{jk} w_j w_k on the 2^N space."""
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    omegas = [majorana_oracle(j, n) for j in range(2 * n)]
    for j in range(2 * n):
        for k in range(2 * n):
            if form_matrix[j, k] != 0:
                out += form_matrix[j, k] * omegas[j] @ omegas[k]
    return out


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
