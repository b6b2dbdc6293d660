"""Quasi-energy bands of the infinite kicked chain and the count of
non-trivial stationary points that organizes the phase diagram."""

from __future__ import annotations

import math

import numpy as np

from .errors import SingularDispersionError, UnresolvedBandStructureError

DEFAULT_GRID_SIZE = 10_000
MIN_GRID_SIZE = 1_000
CLAMP_TOL = 1e-12


def epsilon(kappa, gamma: float):
    """Quasi-particle energy of the undriven chain,
    sqrt(cos^2 k + gamma^2 sin^2 k)."""
    kappa = np.asarray(kappa, dtype=float)
    value = np.sqrt(np.cos(kappa) ** 2 + gamma**2 * np.sin(kappa) ** 2)
    return value if value.ndim else float(value)


def quasienergy(kappa, gamma: float, h: float, tau: float):
    """Positive quasi-energy band theta_1(kappa) in [0, pi].

    arccos of cos(2 tau h) cos(2 tau eps) + sin(2 tau h) sin(2 tau eps)
    cos(kappa)/eps; the argument is clamped when rounding pushes it out of
    [-1, 1] by at most 1e-12 and reported as an inconsistency beyond that.
    """
    kappa = np.asarray(kappa, dtype=float)
    eps = np.sqrt(np.cos(kappa) ** 2 + gamma**2 * np.sin(kappa) ** 2)
    if gamma == 0.0 and np.any(np.abs(np.cos(kappa)) < 1e-12):
        raise SingularDispersionError(
            "quasi-particle energy vanishes (gamma = 0 at kappa = +-pi/2); "
            "the band formula is singular there"
        )
    arg = np.cos(2 * tau * h) * np.cos(2 * tau * eps) + np.sin(2 * tau * h) * np.sin(
        2 * tau * eps
    ) * np.cos(kappa) / eps
    overshoot = np.abs(arg) - 1.0
    if np.any(overshoot > CLAMP_TOL):
        raise ValueError(
            f"arccos argument out of range by {overshoot.max():.3e} (> {CLAMP_TOL:.0e})"
        )
    theta = np.arccos(np.clip(arg, -1.0, 1.0))
    return theta if theta.ndim else float(theta)


def _raw_count(gamma: float, h: float, tau: float, grid_size: int) -> int:
    """Sign changes of the finite-difference band slope away from the
    always-stationary points kappa = 0, +-pi."""
    kappa = np.linspace(-math.pi, math.pi, grid_size, endpoint=False)
    theta = quasienergy(kappa, gamma, h, tau)
    step = 2.0 * math.pi / grid_size
    slope = (theta[2:] - theta[:-2]) / (2.0 * step)
    mid = kappa[1:-1]
    window = 2.0 * step
    trivial = (
        (np.abs(mid) < window)
        | (np.abs(mid - math.pi) < window)
        | (np.abs(mid + math.pi) < window)
    )
    keep = ~trivial
    sign = np.sign(slope)
    flips = 0
    prev = None
    for s, ok in zip(sign, keep):
        if not ok:
            # Segment boundary: never compare across an excluded window,
            # otherwise the trivial stationary point inside it is counted.
            prev = None
            continue
        if prev is not None and s != 0 and prev != 0 and s != prev:
            flips += 1
        if s != 0:
            prev = s
    return flips


def _count_with_detail(gamma: float, h: float, tau: float, grid_size: int):
    if grid_size < MIN_GRID_SIZE:
        raise ValueError(f"grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}")
    first = _raw_count(gamma, h, tau, grid_size)
    second = _raw_count(gamma, h, tau, 2 * grid_size)
    if first == second and first % 2 == 0:
        return first // 2, None
    third = _raw_count(gamma, h, tau, 4 * grid_size)
    if second == third and second % 2 == 0:
        return second // 2, f"refined: counts {first}->{second} stabilized at 2x grid"
    raise UnresolvedBandStructureError(
        f"stationary-point count did not stabilize (raw counts {second}, {third})",
        counts=(second, third),
    )


def count_stationary_points(
    gamma: float, h: float, tau: float, grid_size: int = DEFAULT_GRID_SIZE
) -> int:
    """Half the number of non-trivial stationary points of theta_1.

    Central finite differences on a uniform kappa grid, excluding windows
    of half-width 2*(2pi/grid_size) around kappa = 0 and +-pi (stationary
    for every parameter choice by evenness and periodicity).  The count is
    re-evaluated on a doubled grid; instability triggers one further
    refinement and then an error.
    """
    count, _ = _count_with_detail(gamma, h, tau, grid_size)
    return count


def band_count_map(
    gamma: float, a_grid, tau_grid, grid_size: int = DEFAULT_GRID_SIZE
):
    """Half-count over an (a, tau) grid with h = a/tau per point.

    Returns (counts, status): counts[i, j] for (a_grid[i], tau_grid[j]),
    -1 where the cell is masked, and a same-shape object array of status
    strings ("ok", "warning: ...", "error: ...").
    """
    a_grid = np.atleast_1d(np.asarray(a_grid, dtype=float))
    tau_grid = np.atleast_1d(np.asarray(tau_grid, dtype=float))
    if a_grid.size == 0 or tau_grid.size == 0:
        raise ValueError("grids must be non-empty")
    counts = np.full((a_grid.size, tau_grid.size), -1, dtype=int)
    status = np.empty((a_grid.size, tau_grid.size), dtype=object)
    for i, a in enumerate(a_grid):
        for j, tau in enumerate(tau_grid):
            try:
                count, warning = _count_with_detail(gamma, a / tau, tau, grid_size)
            except Exception as exc:  # noqa: BLE001 - masked per cell by design
                status[i, j] = f"error: {exc}"
                continue
            counts[i, j] = count
            status[i, j] = "ok" if warning is None else f"warning: {warning}"
    return counts, status
