"""Occupation-dependent on-site energies beyond the standard model.

U(2) comes from the exact solution for two contact-interacting atoms in an
isotropic harmonic trap, rescaled for the anharmonicity of the lattice well
by the ratio of the Born results in the lattice and in the trap.  The
three-body combination 3U(3) - 2U(2) follows from the closed renormalized
form U(2)/(1 + 1.34 U(2)/(hbar*omega)) with hbar*omega the band gap.

Conventions: the trap model always uses the harmonic site frequency
hbar*omega = 2*sqrt(V0 E_R); the relative-motion problem of two equal-mass
atoms in that trap has oscillator length sqrt(hbar/(2*mu*omega)) which for
mu = m/2 equals the single-particle length a_ho = sqrt(hbar/(m*omega)), and
the transcendental relation below takes a_S in units of that length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.optimize import brentq
from scipy.special import digamma, gammaln

from .bands import band_gap, bands_cached
from .errors import (InvalidParameterError, NumericalError,
                     UnsupportedBranchError)
from .units import UnitSystem
from .wannier import u_born, wannier

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class BuschSolution:
    """Repulsive-ground-branch solution of the trapped-pair relation."""

    nu: float        # branch parameter in [0, 1/2)
    E_rel: float     # relative-motion energy, units of hbar*omega
    delta_E: float   # interaction shift E_rel - 3/2
    a_ratio: float   # a_S / a_ho input
    residual: float  # |a_ratio * f(nu) - 1| of the solved relation


def _log_f(nu: float) -> float:
    """log of f(nu) = sqrt(2) Gamma(-nu)/Gamma(-nu-1/2), rearranged pole-free.

    With Gamma(z) = Gamma(z+1)/z applied to both factors,
    f(nu) = sqrt(2) * Gamma(1-nu) * (nu + 1/2) / (nu * Gamma(1/2 - nu)),
    which keeps every Gamma argument positive for nu in (0, 1/2).
    """
    return (0.5 * math.log(2.0) + gammaln(1.0 - nu) + math.log(nu + 0.5)
            - math.log(nu) - gammaln(0.5 - nu))


def _dlog_f(nu: float) -> float:
    return (-digamma(1.0 - nu) + 1.0 / (nu + 0.5) - 1.0 / nu
            + digamma(0.5 - nu))


def busch_energy(a_ratio: float, branch: str = "repulsive_ground") -> BuschSolution:
    """Solve sqrt(2)*Gamma(-nu)/Gamma(-nu-1/2) = 1/a_ratio on nu in [0, 1/2).

    ``a_ratio`` is the scattering length over the relative-motion trap
    length; ``a_ratio = inf`` is accepted as the unitarity point nu = 1/2.
    Only the repulsive ground branch is defined; a_ratio < 0 raises
    :class:`UnsupportedBranchError`.
    """
    if branch != "repulsive_ground":
        raise UnsupportedBranchError(f"unknown branch {branch!r}")
    if math.isnan(a_ratio):
        raise InvalidParameterError("a_ratio must not be NaN")
    if a_ratio < 0.0:
        raise UnsupportedBranchError(
            "a_S < 0 lies on the attractive/molecular branch, which is "
            "deliberately not extrapolated")
    if a_ratio == 0.0:
        return BuschSolution(nu=0.0, E_rel=1.5, delta_E=0.0,
                             a_ratio=0.0, residual=0.0)
    if math.isinf(a_ratio):
        return BuschSolution(nu=0.5, E_rel=2.5, delta_E=1.0,
                             a_ratio=a_ratio, residual=0.0)

    def h(nu: float) -> float:
        # Monotone decreasing: +inf at nu -> 0+, -1 at nu -> 1/2-.
        return a_ratio * math.exp(_log_f(nu)) - 1.0

    lo = max(min(1e-4, 0.1 * a_ratio / math.sqrt(2.0 * math.pi)), 1e-300)
    hi = 0.5 - 1e-13
    if h(lo) <= 0.0 or h(hi) >= 0.0:
        raise NumericalError(
            f"root not bracketed for a_ratio = {a_ratio!r}")
    nu = brentq(h, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)

    # Two Newton polish steps drive the residual to rounding level.
    for _ in range(2):
        val = a_ratio * math.exp(_log_f(nu))
        step = (val - 1.0) / (val * _dlog_f(nu))
        nu_new = nu - step
        if 0.0 < nu_new < 0.5:
            nu = nu_new
    residual = abs(a_ratio * math.exp(_log_f(nu)) - 1.0)
    return BuschSolution(nu=nu, E_rel=2.0 * nu + 1.5, delta_E=2.0 * nu,
                         a_ratio=a_ratio, residual=residual)


def harmonic_born_shift_ER(v0: float, k_as: float) -> float:
    """Born interaction energy of the trapped pair, in E_R.

    sqrt(2/pi) * hbar*omega * a_S/a_ho with hbar*omega = 2*sqrt(V0 E_R) and
    a_ho the single-particle oscillator length (k*a_ho = V0^(-1/4)).
    """
    hbar_omega = 2.0 * math.sqrt(v0)
    a_ho_tilde = v0 ** -0.25
    return SQRT_2_OVER_PI * hbar_omega * k_as / a_ho_tilde


@lru_cache(maxsize=256)
def rescaling_ratio(v0: float, wavelength: float, planewave_cutoff: int = 41,
                    q_grid: int = 101, wannier_sites: int = 5,
                    wannier_points: int = 2048) -> float:
    """Anharmonicity ratio R = U_born(lattice) / U_born(harmonic trap).

    Both Born energies are linear in a_S, so R depends on the depth and the
    numerical cutoffs only; it is computed once per depth and cached.
    """
    bs = bands_cached(v0, wavelength, planewave_cutoff, q_grid, 1)
    w = wannier(bs, n_sites=wannier_sites, n_points=wannier_points)
    quartic = w.quartic_integral()
    u_lattice_per_kas = 8.0 * math.pi * quartic ** 3
    u_harm_per_kas = harmonic_born_shift_ER(v0, 1.0)
    return u_lattice_per_kas / u_harm_per_kas


def u2_lattice(v0: float, a_s_a0: float, units: UnitSystem,
               planewave_cutoff: int = 41, q_grid: int = 101) -> float:
    """On-site energy of two atoms, E2 = U(2), in E_R.

    The exact trapped-pair shift (harmonic site frequency
    2*sqrt(V0 E_R)) is rescaled by the a_S-independent lattice-to-trap Born
    ratio, so that U(2) -> U1_born as a_S -> 0 and saturates below the
    linear Born result at large a_S.
    """
    if a_s_a0 < 0.0:
        raise UnsupportedBranchError("a_S must be >= 0")
    if not 5.0 <= v0 <= 50.0:
        raise InvalidParameterError("u2_lattice expects V0 in [5, 50] E_R")
    k_as = units.scattering_length_dimensionless(a_s_a0)
    hbar_omega = 2.0 * math.sqrt(v0)
    a_ho_tilde = v0 ** -0.25
    sol = busch_energy(k_as / a_ho_tilde)
    r = rescaling_ratio(v0, units.wavelength, planewave_cutoff, q_grid)
    return sol.delta_E * hbar_omega * r


def u3_combination(u2: float, gap: float) -> float:
    """Renormalized three-body combination 3U(3) - 2U(2), in units of u2.

    Returns u2 / (1 + 1.34 * u2/gap); at second order in u2/gap this equals
    u2 * (1 - 1.34 u2/gap).
    """
    if gap <= 0.0:
        raise InvalidParameterError("band gap must be positive")
    if u2 < 0.0:
        raise InvalidParameterError("u2 must be >= 0")
    return u2 / (1.0 + 1.34 * u2 / gap)


def u3_from_combination(u2: float, gap: float) -> float:
    """Per-particle-pair three-body energy U(3) implied by the closed form."""
    return (u3_combination(u2, gap) + 2.0 * u2) / 3.0


@dataclass(frozen=True)
class InteractionLadder:
    """Total on-site energies per occupation: E1 = 0, E2 = U(2), E3 = 3U(3)."""

    E2: float
    E3: float
    E1: float = 0.0
    V0: float | None = None
    a_S: float | None = None
    gap_mode: str = "harmonic"

    def __post_init__(self):
        if self.E1 != 0.0:
            raise InvalidParameterError("E1 must be zero by convention")
        if self.E2 < 0.0:
            raise InvalidParameterError("E2 must be >= 0 on the repulsive branch")
        if self.E3 - 2.0 * self.E2 > self.E2 * (1.0 + 1e-12) + 1e-15:
            raise InvalidParameterError(
                "ladder violates 3U(3)-2U(2) <= U(2); not a repulsive-branch "
                "ladder")

    def energy(self, n: int) -> float:
        if n <= 1:
            return 0.0
        if n == 2:
            return self.E2
        if n == 3:
            return self.E3
        raise InvalidParameterError(f"ladder defines occupations up to 3, got {n}")


def uniform_ladder(u1: float) -> InteractionLadder:
    """Ladder equivalent to the standard uniform-U model: E_n = U n(n-1)/2."""
    return InteractionLadder(E2=u1, E3=3.0 * u1)


def _gap_for_mode(v0: float, gap_mode: str, units: UnitSystem,
                  planewave_cutoff: int, q_grid: int) -> float:
    if gap_mode == "harmonic":
        return 2.0 * math.sqrt(v0)
    bs = bands_cached(v0, units.wavelength, planewave_cutoff, q_grid, 2)
    return band_gap(bs, gap_mode)


def interaction_ladder(v0: float, a_s_a0: float, units: UnitSystem,
                       gap_mode: str = "harmonic", planewave_cutoff: int = 41,
                       q_grid: int = 101) -> InteractionLadder:
    """Regularized ladder {E1, E2, E3} at one lattice depth."""
    u2 = u2_lattice(v0, a_s_a0, units, planewave_cutoff, q_grid)
    gap = _gap_for_mode(v0, gap_mode, units, planewave_cutoff, q_grid)
    u3 = u3_from_combination(u2, gap)
    return InteractionLadder(E2=u2, E3=3.0 * u3, V0=v0, a_S=a_s_a0,
                             gap_mode=gap_mode)


@dataclass(frozen=True)
class ResonancePredictions:
    """Predicted modulation-resonance energies at one (V0, a_S), in E_R.

    ``r2`` is the singly-occupied-shell line U(2); ``r1`` the
    doubly-occupied-shell line 3U(3) - 2U(2); ``edge`` the shell-edge
    combination 3U(3) - U(2); ``half`` = U(2)/2; ``u1``/``two_u1`` the
    standard-model values for comparison.
    """

    V0: float
    a_S: float
    u1: float
    two_u1: float
    r2: float
    r1: float
    edge: float
    half: float
    gap_mode: str

    def in_kHz(self, units: UnitSystem) -> dict[str, float]:
        f = units.recoil_frequency_Hz / 1e3
        return {name: getattr(self, name) * f
                for name in ("u1", "two_u1", "r2", "r1", "edge", "half")}


def resonance_predictions(v0: float, a_s_a0: float, units: UnitSystem,
                          gap_mode: str = "harmonic",
                          planewave_cutoff: int = 41,
                          q_grid: int = 101) -> ResonancePredictions:
    """All six resonance-energy predictions; r1 < r2 strictly for a_S > 0."""
    bs = bands_cached(v0, units.wavelength, planewave_cutoff, q_grid, 2)
    w = wannier(bs)
    u1 = u_born(w, a_s_a0, units)
    u2 = u2_lattice(v0, a_s_a0, units, planewave_cutoff, q_grid)
    gap = _gap_for_mode(v0, gap_mode, units, planewave_cutoff, q_grid)
    r1 = u3_combination(u2, gap)
    u3 = (r1 + 2.0 * u2) / 3.0
    return ResonancePredictions(
        V0=v0, a_S=a_s_a0, u1=u1, two_u1=2.0 * u1, r2=u2, r1=r1,
        edge=3.0 * u3 - u2, half=u2 / 2.0, gap_mode=gap_mode)
