"""Dicke model macroscopic quantum states: closed forms and exact diagonalization."""

from . import _core
from ._core import (  # noqa: F401
    Branch,
    BranchResult,
    CutoffPolicy,
    Degeneracy,
    ExactResult,
    FieldPoint,
    ModelParams,
    Phase,
    Pole,
    Variant,
    boson_matrices,
    branch_energy,
    build_coherent,
    build_hamiltonian,
    build_scs,
    critical_coupling,
    energy_functional,
    exact_ground,
    geometric_phase,
    gp_derivative,
    gp_scaling_check,
    jz_expectation,
    low_spectrum,
    make_params,
    numeric_minimize,
    spin_matrices,
    stationary_field,
    trial_energy,
)

__version__ = _core.__version__
