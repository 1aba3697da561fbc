"""Dense linear-algebra kernel shared by every physics layer."""

from .operators import (
    CAVITY,
    QRS_QUBIT,
    HilbertLayout,
    annihilation,
    basis_vector,
    commutator,
    dagger,
    embed,
    embed_product,
    number,
    pauli,
    quadrature,
    qubit_label,
    sigma_pm,
    tensor_state,
)
from .spectral import (
    EigenSystem,
    evolve_state,
    evolve_states,
    degenerate_clusters,
    fix_phases,
    hermitian_eig,
    propagator,
    rotate_clusters,
)
from .states import (
    density,
    expectation,
    partial_trace,
    reduced_density,
    trace_distance,
    von_neumann_entropy,
)

__all__ = [
    "CAVITY",
    "QRS_QUBIT",
    "HilbertLayout",
    "annihilation",
    "basis_vector",
    "commutator",
    "dagger",
    "embed",
    "embed_product",
    "number",
    "pauli",
    "quadrature",
    "qubit_label",
    "sigma_pm",
    "tensor_state",
    "EigenSystem",
    "evolve_state",
    "evolve_states",
    "degenerate_clusters",
    "fix_phases",
    "hermitian_eig",
    "propagator",
    "rotate_clusters",
    "density",
    "expectation",
    "partial_trace",
    "reduced_density",
    "trace_distance",
    "von_neumann_entropy",
]
