"""Trotterized trapped-ion simulation compiler."""

from ._iontrotter import (
    Backend,
    GateSequence,
    Hamiltonian,
    PauliSum,
    build_chemistry,
    build_holstein,
    build_hubbard,
    classical_dimension,
    compile,
    estimate_time,
    exact_evolution,
    jw_transform,
    run_cli,
    umq_speedup,
    unitary_distance,
)

__all__ = [
    "Backend",
    "GateSequence",
    "Hamiltonian",
    "PauliSum",
    "build_chemistry",
    "build_holstein",
    "build_hubbard",
    "classical_dimension",
    "compile",
    "estimate_time",
    "exact_evolution",
    "jw_transform",
    "run_cli",
    "umq_speedup",
    "unitary_distance",
]
