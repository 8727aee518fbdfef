"""Compile Clifford simulation kernels to logical circuits on the [[n, n-2, 2]] code."""

from .circuit import Circuit, Gate
from .code import CodeInstance
from .kernel import HadamardPlacement, build_cqsk, logical_action
from .noise import NoiseModel, SimStats, simulate
from .pauli import PauliOperator, SymplecticMatrix, conjugate_by_circuit, tableau_of
from .pbs import SelectionPolicy, compile_pbs, select_strategy
from .strategies import CompilationResult, StrategyId, emit, two_qubit_formula
from .verify import VerificationReport, verify

__all__ = [
    "Circuit", "Gate", "CodeInstance", "HadamardPlacement", "build_cqsk", "logical_action",
    "NoiseModel", "SimStats", "simulate", "PauliOperator", "SymplecticMatrix",
    "conjugate_by_circuit", "tableau_of", "SelectionPolicy", "compile_pbs", "select_strategy",
    "CompilationResult", "StrategyId", "emit", "two_qubit_formula", "VerificationReport", "verify",
]
