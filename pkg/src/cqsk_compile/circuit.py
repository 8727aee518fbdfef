"""Gate and circuit representation with depth / two-qubit metrics and JSON I/O.

Wires are 1-based everywhere outside this module's internals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

SINGLE_QUBIT = frozenset({"H", "P", "Pdg", "X", "Z"})
TWO_QUBIT = frozenset({"CX", "CZ"})
KINDS = SINGLE_QUBIT | TWO_QUBIT
# Pdg is internal only; it is written out as three P gates.
EXTERNAL_KINDS = ("H", "P", "X", "Z", "CX", "CZ")


class CircuitError(ValueError):
    """Raised for malformed gates, circuits or circuit JSON."""


@dataclass(frozen=True)
class Gate:
    kind: str
    wires: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        wires = tuple(int(w) for w in self.wires)
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(wires) != arity:
            raise CircuitError(f"{self.kind} takes {arity} wire(s), got {len(wires)}")
        if arity == 2 and wires[0] == wires[1]:
            raise CircuitError("degenerate two-qubit gate")
        if any(w < 1 for w in wires):
            raise CircuitError(f"wire index must be >= 1, got {wires}")
        if self.kind == "CZ":
            wires = tuple(sorted(wires))
        object.__setattr__(self, "wires", wires)

    @property
    def is_two_qubit(self) -> bool:
        return self.kind in TWO_QUBIT

    def inverse(self) -> Gate:
        if self.kind == "P":
            return Gate("Pdg", self.wires)
        if self.kind == "Pdg":
            return Gate("P", self.wires)
        return self

    def __str__(self) -> str:
        if self.kind == "CX":
            return f"CX({self.wires[0]}->{self.wires[1]})"
        return f"{self.kind}({','.join(map(str, self.wires))})"


# Shorthand constructors used by the emitters.
def H(q: int) -> Gate:
    return Gate("H", (q,))


def P(q: int) -> Gate:
    return Gate("P", (q,))


def CX(c: int, t: int) -> Gate:
    return Gate("CX", (c, t))


def CZ(a: int, b: int) -> Gate:
    return Gate("CZ", (a, b))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on ``n`` wires; gates run left to right."""

    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise CircuitError(f"circuit width must be positive, got {self.n}")
        gates = tuple(self.gates)
        for g in gates:
            if max(g.wires) > self.n:
                raise CircuitError(f"wire out of range in {g} for n={self.n}")
        object.__setattr__(self, "gates", gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def then(self, other: Circuit | Iterable[Gate]) -> Circuit:
        """``self`` followed by ``other``."""
        if isinstance(other, Circuit):
            if other.n != self.n:
                raise CircuitError(f"width mismatch {self.n} vs {other.n}")
            other = other.gates
        return Circuit(self.n, self.gates + tuple(other))

    __add__ = then

    def inverse(self) -> Circuit:
        return Circuit(self.n, tuple(g.inverse() for g in reversed(self.gates)))

    def expanded(self) -> Circuit:
        """Same circuit over the external alphabet (Pdg -> P P P)."""
        out: list[Gate] = []
        for g in self.gates:
            if g.kind == "Pdg":
                out.extend([Gate("P", g.wires)] * 3)
            else:
                out.append(g)
        return Circuit(self.n, tuple(out))

    def relabel(self, mapping) -> Circuit:
        """Move every gate from wire ``w`` to ``mapping[w]`` (a permutation of 1..n)."""
        if sorted(mapping[w] for w in range(1, self.n + 1)) != list(range(1, self.n + 1)):
            raise CircuitError("relabel mapping is not a permutation of the wires")
        return Circuit(
            self.n, tuple(Gate(g.kind, tuple(mapping[w] for w in g.wires)) for g in self.gates)
        )

    def depth(self) -> int:
        return depth(self)

    def two_qubit_count(self) -> int:
        return two_qubit_count(self)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.gates) or "<empty>"


def depth(c: Circuit) -> int:
    """ASAP layer count; every gate costs one layer on each of its wires."""
    level = [0] * (c.n + 1)
    d = 0
    for g in c.gates:
        layer = max(level[w] for w in g.wires) + 1
        for w in g.wires:
            level[w] = layer
        d = max(d, layer)
    return d


def two_qubit_count(c: Circuit) -> int:
    return sum(1 for g in c.gates if g.is_two_qubit)


def gate_counts(c: Circuit) -> dict[str, int]:
    counts: dict[str, int] = {}
    for g in c.gates:
        counts[g.kind] = counts.get(g.kind, 0) + 1
    return counts


def to_dict(c: Circuit) -> dict:
    return {
        "n": c.n,
        "gates": [{"g": g.kind, "q": list(g.wires)} for g in c.expanded().gates],
    }


def serialize(c: Circuit) -> str:
    return json.dumps(to_dict(c), separators=(",", ":"))


def from_dict(obj: object) -> Circuit:
    if not isinstance(obj, dict) or "n" not in obj or "gates" not in obj:
        raise CircuitError('circuit JSON must be an object with "n" and "gates"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise CircuitError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(obj["gates"], list):
        raise CircuitError('"gates" must be a list')
    gates = []
    for i, entry in enumerate(obj["gates"]):
        if not isinstance(entry, dict) or "g" not in entry or "q" not in entry:
            raise CircuitError(f'gate #{i} must be an object with "g" and "q"')
        kind, wires = entry["g"], entry["q"]
        if kind not in EXTERNAL_KINDS:
            raise CircuitError(f"unknown gate kind {kind!r} at gate #{i}")
        if not isinstance(wires, list) or not all(
            isinstance(w, int) and not isinstance(w, bool) for w in wires
        ):
            raise CircuitError(f"gate #{i}: wires must be a list of integers")
        gates.append(Gate(kind, tuple(wires)))
    return Circuit(n, tuple(gates))


def parse(text: str) -> Circuit:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitError(f"malformed JSON: {exc}") from exc
    return from_dict(obj)


def cz_block(pairs: Iterable[tuple[int, int]]) -> list[Gate]:
    """CZ gates over unordered pairs, emitted in ascending (i, j) order."""
    return [CZ(i, j) for i, j in sorted({tuple(sorted(p)) for p in pairs})]


def layer(kind: str, wires: Sequence[int]) -> list[Gate]:
    return [Gate(kind, (w,)) for w in sorted(wires)]
