"""Coulomb problem on the rotationally invariant fuzzy space.

Exact bound-state spectra and scattering on the fuzzy configuration space
(coordinates x_j = lam a^+ sigma_j a over a two-mode Fock space), together
with a truncated-Fock brute-force oracle validating every closed form.
"""

from .fuzzy import Params, TruncatedFock
from .radial import RadialSeq, Regime, classify, radial_closed_form
from .scattering import smatrix_nc, smatrix_qm
from .spectrum import (
    EnergyLevel,
    bound_energies_I,
    bound_energies_II,
    bound_wavefunction,
    lambda0_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "Params",
    "TruncatedFock",
    "RadialSeq",
    "Regime",
    "classify",
    "radial_closed_form",
    "smatrix_nc",
    "smatrix_qm",
    "EnergyLevel",
    "bound_energies_I",
    "bound_energies_II",
    "bound_wavefunction",
    "lambda0_estimate",
    "__version__",
]
