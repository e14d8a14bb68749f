"""Physical constants and the lattice unit system.

Internal convention used throughout the package: energies in units of the
recoil energy E_R = h^2/(2 m lambda^2), lengths in units of 1/k with
k = 2*pi/lambda the lattice wavevector.  Scattering lengths enter in Bohr
radii and are converted at the boundary.  Constants are CODATA-2018 and can
be overridden through :class:`PhysicalConstants` for reproducibility tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidParameterError, UnitError

# CODATA-2018
PLANCK_H = 6.62607015e-34          # J s (exact)
HBAR = PLANCK_H / (2.0 * math.pi)  # J s
ATOMIC_MASS_UNIT = 1.66053906660e-27  # kg
BOHR_RADIUS = 5.29177210903e-11    # m

CS_MASS_U = 132.905451931          # Cs-133 atomic mass in u
CS_MASS = CS_MASS_U * ATOMIC_MASS_UNIT  # kg

DEFAULT_WAVELENGTH = 1064.5e-9     # m


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants, overridable as a block.

    All values in SI.  ``species_mass`` defaults to Cs-133.
    """

    planck_h: float = PLANCK_H
    hbar: float = HBAR
    atomic_mass_unit: float = ATOMIC_MASS_UNIT
    bohr_radius_a0: float = BOHR_RADIUS
    species_mass: float = CS_MASS

    def __post_init__(self):
        for name in ("planck_h", "hbar", "atomic_mass_unit",
                     "bohr_radius_a0", "species_mass"):
            if not getattr(self, name) > 0.0:
                raise InvalidParameterError(f"{name} must be strictly positive")
        expected_hbar = self.planck_h / (2.0 * math.pi)
        if abs(self.hbar - expected_hbar) > 1e-12 * expected_hbar:
            raise InvalidParameterError(
                "hbar inconsistent with planck_h/(2*pi) beyond 1e-12 relative")


@dataclass(frozen=True)
class UnitSystem:
    """Derived lattice units for one (wavelength, mass) pair."""

    recoil_energy_ER: float      # J
    lattice_wavevector_k: float  # 1/m
    lattice_spacing_d: float     # m
    recoil_frequency_Hz: float   # E_R / h
    wavelength: float            # m
    species_mass: float          # kg
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def energy_ER_to_kHz(self, value_ER: float) -> float:
        return value_ER * self.recoil_frequency_Hz / 1e3

    def scattering_length_dimensionless(self, a_s_a0: float) -> float:
        """k * a_S for a scattering length given in Bohr radii."""
        return self.lattice_wavevector_k * a_s_a0 * self.constants.bohr_radius_a0


def make_units(wavelength: float = DEFAULT_WAVELENGTH,
               species_mass: float | None = None,
               constants: PhysicalConstants | None = None) -> UnitSystem:
    """Build the :class:`UnitSystem` for a lattice wavelength and atom mass.

    Parameters
    ----------
    wavelength : float
        Lattice laser wavelength in meters.
    species_mass : float, optional
        Atom mass in kg; defaults to ``constants.species_mass``.
    constants : PhysicalConstants, optional
        Constant set to use, defaults to CODATA-2018 with Cs mass.
    """
    consts = constants if constants is not None else PhysicalConstants()
    mass = species_mass if species_mass is not None else consts.species_mass
    if not wavelength > 0.0:
        raise InvalidParameterError("wavelength must be strictly positive")
    if not mass > 0.0:
        raise InvalidParameterError("species_mass must be strictly positive")

    e_r = consts.planck_h ** 2 / (2.0 * mass * wavelength ** 2)
    k = 2.0 * math.pi / wavelength
    return UnitSystem(
        recoil_energy_ER=e_r,
        lattice_wavevector_k=k,
        lattice_spacing_d=wavelength / 2.0,
        recoil_frequency_Hz=e_r / consts.planck_h,
        wavelength=wavelength,
        species_mass=mass,
        constants=consts,
    )


# Unit names accepted by convert(); values are (dimension, name of the scale).
_ENERGY_UNITS = {"ER", "E_R", "Hz", "kHz", "J", "joule", "Joule"}
_LENGTH_UNITS = {"a0", "m", "meter", "1/k", "inv_k"}


def _canon(unit: str) -> str:
    aliases = {"E_R": "ER", "joule": "J", "Joule": "J", "meter": "m", "inv_k": "1/k"}
    return aliases.get(unit, unit)


def _to_si(value: float, unit: str, units: UnitSystem) -> tuple[float, str]:
    """Return (value in J or m, dimension tag)."""
    u = _canon(unit)
    if unit in _ENERGY_UNITS or u in ("ER", "Hz", "kHz", "J"):
        h = units.constants.planck_h
        scale = {"ER": units.recoil_energy_ER, "Hz": h, "kHz": 1e3 * h, "J": 1.0}
        if u not in scale:
            raise UnitError(f"unknown unit {unit!r}")
        return value * scale[u], "energy"
    if unit in _LENGTH_UNITS or u in ("a0", "m", "1/k"):
        scale = {"a0": units.constants.bohr_radius_a0, "m": 1.0,
                 "1/k": 1.0 / units.lattice_wavevector_k}
        if u not in scale:
            raise UnitError(f"unknown unit {unit!r}")
        return value * scale[u], "length"
    raise UnitError(f"unknown unit {unit!r}")


def convert(value: float, from_unit: str, to_unit: str, units: UnitSystem) -> float:
    """Exact linear conversion inside one dimension (energy or length).

    Energies may be expressed as frequencies through E = h*f.  Raises
    :class:`UnitError` when the two units carry different dimensions.
    """
    si, dim_from = _to_si(value, from_unit, units)
    one, dim_to = _to_si(1.0, to_unit, units)
    if dim_from != dim_to:
        raise UnitError(f"cannot convert {from_unit!r} ({dim_from}) "
                        f"to {to_unit!r} ({dim_to})")
    return si / one
