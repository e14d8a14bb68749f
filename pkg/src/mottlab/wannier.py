"""Lowest-band Wannier function and standard Bose-Hubbard parameters.

For the even lattice potential the optimally localized Wannier function is
the gauge-fixed Bloch sum: each Bloch function's global phase is chosen so
that its value at the site center is real and positive, and the functions
are summed over the quasimomentum grid.  U in the Born approximation and a
Fourier-space cross-check of J follow from the same band data.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass

from .bands import BandStructure
from .errors import NumericalError, UnsupportedBranchError
from .units import UnitSystem


@dataclass(frozen=True)
class WannierFunction:
    """Real on-site orbital on a symmetric grid in units of 1/k.

    ``amplitude`` is normalized so that the trapezoid integral of |w|^2
    over ``x_tilde`` equals one.
    """

    x_tilde: np.ndarray
    amplitude: np.ndarray
    depth_ER: float

    def norm(self) -> float:
        return float(np.trapezoid(self.amplitude ** 2, self.x_tilde))

    def quartic_integral(self) -> float:
        """Dimensionless on-site overlap integral of |w|^4."""
        return float(np.trapezoid(self.amplitude ** 4, self.x_tilde))


@dataclass(frozen=True)
class HubbardParams:
    """Standard Bose-Hubbard parameter pair for one (V0, a_S)."""

    J: float        # E_R
    U1_born: float  # E_R
    V0: float       # E_R
    a_S: float      # a0


def wannier(bs: BandStructure, n_sites: int = 5, n_points: int = 2048) -> WannierFunction:
    """Construct the lowest-band Wannier function centered at x = 0.

    The grid spans ``n_sites`` lattice sites (site spacing pi in k x).  Both
    Brillouin-zone edges are present in the band data and describe the same
    Bloch state, so they enter the sum with half weight each.
    """
    q = bs.q_over_k
    coeffs = bs.bloch_coefficients[0]            # (n_q, n_pw)
    cutoff = coeffs.shape[1]
    ls = np.arange(-(cutoff - 1) // 2, (cutoff - 1) // 2 + 1, dtype=float)

    # Gauge: phi_q(0) = sum_l c_l(q) must be real and positive.
    at_zero = coeffs.sum(axis=1)
    bad = np.where(np.abs(at_zero) < 1e-10)[0]
    if bad.size:
        raise NumericalError(
            f"gauge singularity: Bloch function vanishes at x=0 for "
            f"q/k = {q[bad[0]]:.6f}")
    gauged = coeffs * np.sign(at_zero)[:, None]

    half_span = n_sites * np.pi / 2.0
    x = np.linspace(-half_span, half_span, n_points)

    # phi_q(x) = exp(i q x) * sum_l c_l(q) exp(2 i l x)
    periodic = gauged @ np.exp(2j * np.outer(ls, x))   # (n_q, n_x)
    bloch = periodic * np.exp(1j * np.outer(q, x))

    weights = np.ones(len(q))
    weights[0] = weights[-1] = 0.5                      # +-pi/d are one state
    w = (weights @ bloch) / weights.sum()

    if np.max(np.abs(w.imag)) > 1e-9 * np.max(np.abs(w.real)):
        raise NumericalError("Wannier sum has non-negligible imaginary part")
    amp = w.real
    amp = amp / np.sqrt(np.trapezoid(amp ** 2, x))
    return WannierFunction(x_tilde=x, amplitude=amp, depth_ER=bs.config.depth_ER)


def u_born(w: WannierFunction, a_s_a0: float, units: UnitSystem) -> float:
    """Born-approximation on-site interaction energy in E_R.

    For the separable cubic lattice with identical axes,
    U/E_R = 8*pi * (k a_S) * I^3 with I the dimensionless quartic integral
    of the 1D orbital.  Only the repulsive branch a_S >= 0 is supported.
    """
    if a_s_a0 < 0.0:
        raise UnsupportedBranchError(
            "a_S < 0: the Born on-site energy is defined here for the "
            "repulsive branch only")
    k_as = units.scattering_length_dimensionless(a_s_a0)
    return 8.0 * np.pi * k_as * w.quartic_integral() ** 3


def j_overlap(bs: BandStructure) -> float:
    """Hopping from the nearest-neighbor Fourier component of the band.

    J = -(1/N_q) sum_q E_0(q) cos(q d) over one period of the Brillouin
    zone (the duplicated edge point is dropped).  Returns the magnitude.
    """
    e0 = bs.energies[0][:-1]
    q = bs.q_over_k[:-1]
    j = -np.mean(e0 * np.cos(np.pi * q))
    return float(abs(j))


def hubbard_params(bs: BandStructure, a_s_a0: float, units: UnitSystem,
                   w: WannierFunction | None = None) -> HubbardParams:
    """Bundle J (bandwidth) and U1 (Born) for one band solution."""
    from .bands import tunneling_J

    if w is None:
        w = wannier(bs)
    return HubbardParams(J=tunneling_J(bs), U1_born=u_born(w, a_s_a0, units),
                         V0=bs.config.depth_ER, a_S=a_s_a0)
