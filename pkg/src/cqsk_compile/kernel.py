"""Clifford simulation kernels: H-conjugated CX ladder around a central P."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from .circuit import CX, Circuit, H, P
from .pauli import PauliOperator, conjugate_by_circuit, symplectic_product


class PlacementError(ValueError):
    pass


@dataclass(frozen=True)
class HadamardPlacement:
    """Kernel width ``k`` and the set ``ih`` of wires carrying Hadamards."""

    k: int
    ih: frozenset[int]

    def __init__(self, k: int, ih=()):
        ih = frozenset(int(i) for i in ih)
        if k < 2:
            raise PlacementError(f"k must be at least 2, got {k}")
        bad = sorted(i for i in ih if not 1 <= i <= k)
        if bad:
            raise PlacementError(f"Hadamard indices {bad} outside 1..{k}")
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "ih", ih)

    @property
    def h(self) -> int:
        return len(self.ih)

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.k + 1)) - self.ih

    @property
    def parity(self) -> str:
        return "odd" if self.h % 2 else "even"

    def to_text(self) -> str:
        return f"k={self.k};Ih={','.join(map(str, sorted(self.ih)))}"

    def label(self) -> str:
        """Compact form for CSV cells."""
        return "-".join(map(str, sorted(self.ih))) or "none"

    @classmethod
    def parse(cls, text: str) -> HadamardPlacement:
        """Parse ``"k=20;Ih=1,3,5"`` (the index list may be empty)."""
        fields = {}
        for part in text.replace(" ", "").split(";"):
            if not part:
                continue
            key, sep, value = part.partition("=")
            if not sep:
                raise PlacementError(f"malformed placement field {part!r}")
            fields[key.lower()] = value
        if "k" not in fields or "ih" not in fields:
            raise PlacementError(f"placement needs k= and Ih=, got {text!r}")
        try:
            k = int(fields["k"])
            ih = [int(v) for v in fields["ih"].split(",") if v]
        except ValueError as exc:
            raise PlacementError(f"malformed placement {text!r}") from exc
        if ih != sorted(set(ih)):
            raise PlacementError("Hadamard indices must be ascending and distinct")
        return cls(k, ih)


def all_placements(k: int, h: int):
    for ih in itertools.combinations(range(1, k + 1), h):
        yield HadamardPlacement(k, ih)


def sample_placements(k: int, h: int, count: int, seed: int) -> list[HadamardPlacement]:
    """``count`` distinct placements of size ``h`` (all of them if fewer exist)."""
    total = comb(k, h)
    if total <= count:
        return list(all_placements(k, h))
    rng = random.Random(f"{seed}:{k}:{h}")
    seen: set[frozenset[int]] = set()
    out = []
    while len(out) < count:
        ih = frozenset(rng.sample(range(1, k + 1), h))
        if ih not in seen:
            seen.add(ih)
            out.append(HadamardPlacement(k, ih))
    return out


def build_cqsk(p: HadamardPlacement) -> Circuit:
    k = p.k
    hs = [H(i) for i in sorted(p.ih)]
    down = [CX(i, k) for i in range(1, k)]
    return Circuit(k, (*hs, *down, P(k), *reversed(down), *hs))


@dataclass(frozen=True)
class LogicalAction:
    """Images of X_i and Z_i (index i - 1) under the kernel."""

    x_images: tuple[PauliOperator, ...]
    z_images: tuple[PauliOperator, ...]

    @property
    def k(self) -> int:
        return len(self.x_images)

    def generators(self):
        """Yield ``(name, source, image)`` for X_1, Z_1, X_2, ..."""
        for i in range(self.k):
            yield f"X{i + 1}", PauliOperator.on(self.k, X=[i + 1]), self.x_images[i]
            yield f"Z{i + 1}", PauliOperator.on(self.k, Z=[i + 1]), self.z_images[i]

    def preserves_commutation(self) -> bool:
        gens = list(self.generators())
        return all(
            symplectic_product(a[1], b[1]) == symplectic_product(a[2], b[2])
            for a, b in itertools.combinations(gens, 2)
        )


def logical_action(p: HadamardPlacement) -> LogicalAction:
    c = build_cqsk(p)
    k = p.k
    xs = tuple(conjugate_by_circuit(PauliOperator.on(k, X=[i]), c) for i in range(1, k + 1))
    zs = tuple(conjugate_by_circuit(PauliOperator.on(k, Z=[i]), c) for i in range(1, k + 1))
    return LogicalAction(xs, zs)
