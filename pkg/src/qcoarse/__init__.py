"""Discrete phase space of N qubits over GF(2^N) and its coarse graining."""
from .coarse import (
    CoarseLine,
    SurvivorTable,
    coarse_line_projector,
    coarse_line_projector_by_survivors,
    survivor_table,
    survivors,
)
from .estimators import CoarseWignerTransformer, WignerTransformer
from .field import (
    Basis,
    CosetPartition,
    FieldElement,
    GaloisField,
    coset_decompose_general,
    coset_decompose_subfield,
    expand_in_basis,
    find_self_dual_basis,
    make_field,
)
from .io import parse_state_file
from .pauli import (
    DisplacementLabel,
    PauliString,
    cnot_conjugate,
    displacement_dense,
    displacement_string,
    fourier_dense,
    phase_phi,
)
from .phase_space import INFINITE, LineId, eigensystem, line_projector, mub_table, ray_points
from .wigner import (
    QuantumState,
    WignerTable,
    coarse_kernel,
    coarse_wigner,
    kernel_dense,
    reconstruct_state,
    wigner_of_state,
)

__version__ = "0.1.0"
