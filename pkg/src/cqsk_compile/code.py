"""The [[n, n-2, 2]] code family with logical qubit i living on wire i + 1."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .pauli import PauliOperator, product


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class CodeInstance:
    k: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise CodeError(f"k must be at least 2, got {self.k}")
        if self.k % 2:
            # X_[n] and Z_[n] anticommute for odd n
            raise CodeError(f"k must be even, got {self.k}")

    @property
    def n(self) -> int:
        return self.k + 2

    def embed_index(self, i: int) -> int:
        if not 1 <= i <= self.k:
            raise CodeError(f"logical index {i} out of range 1..{self.k}")
        return i + 1

    def embed_set(self, indices) -> list[int]:
        return sorted(self.embed_index(i) for i in indices)

    @cached_property
    def stabilizers(self) -> tuple[PauliOperator, PauliOperator]:
        wires = range(1, self.n + 1)
        return PauliOperator.on(self.n, X=wires), PauliOperator.on(self.n, Z=wires)

    def logical_reps(self, i: int) -> tuple[PauliOperator, PauliOperator]:
        e = self.embed_index(i)
        return (
            PauliOperator.on(self.n, X=[1, e]),
            PauliOperator.on(self.n, Z=[e, self.n]),
        )

    def embed(self, p: PauliOperator) -> PauliOperator:
        """Physical representative of a logical Pauli, sign tracked exactly.

        Factors are multiplied in ascending logical index, X part before Z part,
        with a logical Y_i written as i * Xbar_i Zbar_i.
        """
        if p.n != self.k:
            raise CodeError(f"logical Pauli has {p.n} qubits, code has k={self.k}")
        factors = []
        i_power = 2 if p.sign < 0 else 0
        for i in range(1, self.k + 1):
            xb, zb = self.logical_reps(i)
            if p.x[i - 1]:
                factors.append(xb)
            if p.z[i - 1]:
                factors.append(zb)
            i_power += int(p.x[i - 1] & p.z[i - 1])
        return product(factors, self.n, i_power)


def stabilizers(code: CodeInstance) -> tuple[PauliOperator, PauliOperator]:
    return code.stabilizers


def logical_reps(code: CodeInstance, i: int) -> tuple[PauliOperator, PauliOperator]:
    return code.logical_reps(i)


def embed_logical_pauli(code: CodeInstance, p: PauliOperator) -> PauliOperator:
    return code.embed(p)
