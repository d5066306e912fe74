"""Doubly-dressed atomic wave packets: dressed-state potentials, Raman-Nath
deflection distributions and a split-operator propagation oracle."""

from .cavity import CavityFieldState, coherent, custom, fock
from .dressed import (
    DoublyDressedState,
    DressedCoefficients,
    DressedState,
    PhysicalParams,
    decompose_ground,
    doubly_dressed_basis,
    dressed_coefficients,
    dressed_states,
    quasienergies,
    rabi_frequency,
    raman_coefficients,
)
from .potentials import (
    ModeFunctions,
    interaction_alpha,
    interaction_beta,
    potential_A,
    potential_B,
    potential_large_detuning,
)
from .raman_nath import (
    MomentumDistribution,
    MomentumGrid,
    deflect_W1,
    deflect_W2,
    initial_distribution,
    peak_table,
    tv_distance,
)

__version__ = "0.1.0"
