"""Single-particle Bloch bands of the 1D lattice V(x) = V0 sin^2(kx).

Plane-wave diagonalization: in units of E_R and with quasimomentum q in
units of k, the Hamiltonian for the coefficients of exp(i(q + 2l k)x) is
symmetric tridiagonal with diagonal (2l + q/k)^2 + v/2 and off-diagonal
-v/4, where v = V0/E_R.  The 3D cubic lattice is separable, so everything
downstream is built from these 1D solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal, LinAlgError

from .errors import InvalidParameterError, NumericalError
from .units import DEFAULT_WAVELENGTH


@dataclass(frozen=True)
class LatticeConfig:
    """Lattice depth and numerical cutoffs for the band problem.

    ``depth_ER`` is V0/E_R.  ``planewave_cutoff`` counts plane waves (odd so
    the basis is symmetric around l = 0); ``q_grid`` counts quasimomentum
    points over the first Brillouin zone, symmetric and inclusive of q = 0
    and both edges q = +-pi/d.
    """

    depth_ER: float
    wavelength: float = DEFAULT_WAVELENGTH
    planewave_cutoff: int = 41
    q_grid: int = 101

    def __post_init__(self):
        if not 0.0 <= self.depth_ER <= 50.0:
            raise InvalidParameterError("depth_ER must lie in [0, 50]")
        if self.planewave_cutoff % 2 != 1 or self.planewave_cutoff < 11:
            raise InvalidParameterError("planewave_cutoff must be odd and >= 11")
        if self.q_grid % 2 != 1 or self.q_grid < 21:
            raise InvalidParameterError("q_grid must be odd and >= 21")
        if not self.wavelength > 0.0:
            raise InvalidParameterError("wavelength must be positive")


@dataclass(frozen=True)
class BandStructure:
    """Bloch spectrum and plane-wave coefficients on the q grid.

    ``energies[b, iq]`` is E_b(q) in E_R; ``bloch_coefficients[b, iq, :]``
    holds the unit-normalized plane-wave amplitudes for band b at q.
    """

    config: LatticeConfig
    q_over_k: np.ndarray
    energies: np.ndarray
    bloch_coefficients: np.ndarray

    @property
    def n_bands(self) -> int:
        return self.energies.shape[0]


def solve_bands(cfg: LatticeConfig, n_bands: int = 5) -> BandStructure:
    """Diagonalize the plane-wave Hamiltonian at every grid quasimomentum.

    Returns the lowest ``n_bands`` eigenpairs per q, sorted ascending.
    Requires ``n_bands <= (planewave_cutoff - 1)/2``.
    """
    cutoff = cfg.planewave_cutoff
    if not 1 <= n_bands <= (cutoff - 1) // 2:
        raise InvalidParameterError(
            f"n_bands must lie in [1, {(cutoff - 1) // 2}] for cutoff {cutoff}")

    v = cfg.depth_ER
    ls = np.arange(-(cutoff - 1) // 2, (cutoff - 1) // 2 + 1, dtype=float)
    q_over_k = np.linspace(-1.0, 1.0, cfg.q_grid)
    off = np.full(cutoff - 1, -v / 4.0)

    energies = np.empty((n_bands, cfg.q_grid))
    coeffs = np.empty((n_bands, cfg.q_grid, cutoff))
    for iq, q in enumerate(q_over_k):
        diag = (2.0 * ls + q) ** 2 + v / 2.0
        try:
            w, vecs = eigh_tridiagonal(diag, off, select="i",
                                       select_range=(0, n_bands - 1))
        except LinAlgError as exc:  # pragma: no cover - LAPACK failure path
            raise NumericalError(
                f"tridiagonal eigensolver failed at q index {iq} "
                f"(q/k = {q:.6f})") from exc
        energies[:, iq] = w
        coeffs[:, iq, :] = vecs.T
    return BandStructure(config=cfg, q_over_k=q_over_k,
                         energies=energies, bloch_coefficients=coeffs)


@lru_cache(maxsize=256)
def bands_cached(depth_ER: float, wavelength: float, planewave_cutoff: int,
                 q_grid: int, n_bands: int) -> BandStructure:
    """Memoized solve_bands for parameter sweeps and root searches."""
    cfg = LatticeConfig(depth_ER=depth_ER, wavelength=wavelength,
                        planewave_cutoff=planewave_cutoff, q_grid=q_grid)
    return solve_bands(cfg, n_bands)


def tunneling_J(bs: BandStructure) -> float:
    """Nearest-neighbor hopping from the lowest-band bandwidth.

    J = (E_0(q = pi/d) - E_0(q = 0)) / 4, in E_R.  The q grid includes both
    the zone center and the zone edges, so no interpolation is needed.
    """
    e0 = bs.energies[0]
    i_center = np.argmin(np.abs(bs.q_over_k))
    j = (e0[-1] - e0[i_center]) / 4.0
    return max(j, 0.0)


def band_gap(bs: BandStructure, mode: str = "harmonic") -> float:
    """Separation of the two lowest bands in E_R.

    ``harmonic`` returns the on-site oscillator quantum 2*sqrt(V0/E_R);
    ``q0`` the direct gap at the zone center; ``bz_mean`` the gap averaged
    over the Brillouin zone.
    """
    if mode == "harmonic":
        return 2.0 * math.sqrt(bs.config.depth_ER)
    if bs.n_bands < 2:
        raise InvalidParameterError("band_gap needs at least 2 bands")
    diff = bs.energies[1] - bs.energies[0]
    if mode == "q0":
        i_center = np.argmin(np.abs(bs.q_over_k))
        return float(diff[i_center])
    if mode == "bz_mean":
        return float(np.mean(diff))
    raise InvalidParameterError(f"unknown band gap mode {mode!r}")
