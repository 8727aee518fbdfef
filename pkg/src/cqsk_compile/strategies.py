"""Closed-form logical realizations of a kernel on the [[n, n-2, 2]] code.

Every strategy is three blocks: a CX entangling layer, an IQP-like H/P/CZ layer
and a diagonal P/CZ layer. The blocks are written over two wire roles:

* ``had``   -- embedded Hadamard wires, plus wire 1 when ``h`` is odd
* ``plain`` -- embedded non-Hadamard wires, plus wire ``n`` when ``h`` is odd

For odd ``h`` the physical representative of the kernel's Pauli picks up X on
wire 1 and Z on wire n, which is why those wires join the two roles.

Gates inside one block commute, so their order is free. The default
``order="scheduled"`` emits each block as an edge colouring computed from the
roles and the rank of each wire inside its role, so that placements with equal
``h`` yield circuits that differ only by a wire relabelling (same depth).
``order="lexicographic"`` emits the plain listing instead: CX with
control > target first, then control < target; CZ pairs ascending.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .circuit import CX, CZ, Circuit, Gate, H, layer
from .kernel import HadamardPlacement

ORDERS = ("scheduled", "lexicographic")


class StrategyError(ValueError):
    pass


class StrategyId(str, enum.Enum):
    LOW = "low"
    MID = "mid"
    HIGH = "high"

    @classmethod
    def parse(cls, text: str | StrategyId) -> StrategyId:
        try:
            return cls(str(getattr(text, "value", text)).lower())
        except ValueError:
            raise StrategyError(f"unknown strategy {text!r}; use low, mid or high") from None


@dataclass(frozen=True)
class WireRoles:
    n: int
    had: tuple[int, ...]
    plain: tuple[int, ...]

    @property
    def canonical(self) -> tuple[int, ...]:
        """All wires ordered by role then rank: 1, Hadamard wires, the rest, n."""
        inner_had = [w for w in self.had if w != 1]
        inner_plain = [w for w in self.plain if w != self.n]
        return (1, *inner_had, *inner_plain, self.n)


def wire_roles(p: HadamardPlacement) -> WireRoles:
    if p.k % 2:
        raise StrategyError(f"k must be even, got {p.k}")
    n = p.k + 2
    had = [i + 1 for i in sorted(p.ih)]
    plain = [i + 1 for i in sorted(p.complement)]
    if p.h % 2:
        had = [1, *had]
        plain = [*plain, n]
    return WireRoles(n, tuple(had), tuple(plain))


# ---------------------------------------------------------------------------
# scheduling of commuting two-qubit blocks


def _round_robin_colour(i: int, j: int, m: int) -> int:
    """Colour of edge (i, j), i < j, in the round-robin colouring of K_m."""
    mm = m + (m % 2)
    if j == mm - 1:
        return (2 * i) % (mm - 1)
    return (i + j) % (mm - 1)


def _cz_gates(pairs, roles: WireRoles, order: str) -> list[Gate]:
    pairs = {tuple(sorted(pr)) for pr in pairs}
    if order == "lexicographic":
        return [CZ(i, j) for i, j in sorted(pairs)]
    pos = {w: r for r, w in enumerate(roles.canonical)}
    m = len(roles.canonical)
    keyed = []
    for a, b in pairs:
        i, j = sorted((pos[a], pos[b]))
        keyed.append(((_round_robin_colour(i, j, m), i, j), CZ(a, b)))
    return [g for _, g in sorted(keyed, key=lambda t: t[0])]


def _cx_fan(controls, targets, order: str) -> list[Gate]:
    """All CX(c -> t) for c in ``controls`` and t in ``targets``."""
    if order == "lexicographic":
        down = [CX(c, t) for c in controls for t in targets if c > t]
        up = [CX(c, t) for c in controls for t in targets if c < t]
        return down + up
    m = max(len(controls), len(targets), 1)
    keyed = [
        (((i + j) % m, i, j), CX(c, t))
        for i, c in enumerate(controls)
        for j, t in enumerate(targets)
    ]
    return [g for _, g in sorted(keyed, key=lambda t: t[0])]


def _diag(p_wires, z_wires) -> list[Gate]:
    """One layer of P on ``p_wires`` and Z on ``z_wires`` (disjoint)."""
    gates = [Gate("P", (w,)) for w in p_wires] + [Gate("Z", (w,)) for w in z_wires]
    return sorted(gates, key=lambda g: g.wires)


def _pairs(wires):
    return itertools.combinations(sorted(wires), 2)


def _pairs_outside(n: int, excluded) -> list[tuple[int, int]]:
    ex = set(excluded)
    return [(i, j) for i, j in _pairs(range(1, n + 1)) if not (i in ex and j in ex)]


# ---------------------------------------------------------------------------
# blocks


def entangling_block(r: WireRoles, order: str = "scheduled") -> list[Gate]:
    return _cx_fan(r.plain, r.had, order)


def iqp_block_mid(r: WireRoles, order: str = "scheduled") -> list[Gate]:
    return [
        *layer("H", r.had),
        *layer("P", r.had),
        *_cz_gates(_pairs(r.had), r, order),
        *layer("H", r.had),
    ]


def iqp_block_high(r: WireRoles, order: str = "scheduled") -> list[Gate]:
    wires = range(1, r.n + 1)
    # Z on the Hadamard wires fixes the signs of their logical Z images
    return [
        *layer("H", wires),
        *_diag([w for w in wires if w not in r.had], r.had),
        *_cz_gates(_pairs_outside(r.n, r.had), r, order),
        *layer("H", wires),
    ]


def diagonal_block_mid(r: WireRoles, order: str = "scheduled") -> list[Gate]:
    return [*layer("P", r.plain), *_cz_gates(_pairs(r.plain), r, order)]


def diagonal_block_low(r: WireRoles, order: str = "scheduled") -> list[Gate]:
    wires = range(1, r.n + 1)
    # Z on the plain wires fixes the signs of their logical X images
    return [
        *_diag([w for w in wires if w not in r.plain], r.plain),
        *_cz_gates(_pairs_outside(r.n, r.plain), r, order),
    ]


# ---------------------------------------------------------------------------
# emitters


def _require_parity(p: HadamardPlacement, parity: str) -> None:
    if p.parity != parity:
        raise StrategyError(f"placement has {p.parity} h={p.h}, emitter needs {parity}")


def _mid(p: HadamardPlacement, order: str) -> Circuit:
    r = wire_roles(p)
    return Circuit(r.n, (*entangling_block(r, order), *iqp_block_mid(r, order),
                         *diagonal_block_mid(r, order)))


def _low(p: HadamardPlacement, order: str) -> Circuit:
    r = wire_roles(p)
    return Circuit(r.n, (*entangling_block(r, order), *iqp_block_mid(r, order),
                         *diagonal_block_low(r, order)))


def _high(p: HadamardPlacement, order: str) -> Circuit:
    r = wire_roles(p)
    return Circuit(r.n, (*entangling_block(r, order), *iqp_block_high(r, order),
                         *diagonal_block_mid(r, order)))


def emit_mid_even(p: HadamardPlacement, order: str = "scheduled") -> Circuit:
    _require_parity(p, "even")
    return _mid(p, order)


def emit_mid_odd(p: HadamardPlacement, order: str = "scheduled", check: bool = True) -> Circuit:
    """Mid strategy for odd ``h``.

    The closed form is the even rule on the extended roles. With ``check`` the
    result is verified and, should it ever fail, replaced by the residual
    completion from :mod:`cqsk_compile.lcs`.
    """
    _require_parity(p, "odd")
    c = _mid(p, order)
    if check:
        from .verify import verify

        if not verify(c, p).passed:
            from .lcs import complete_by_residual

            c = complete_by_residual(c, p)
    return c


def emit_low_even(p: HadamardPlacement, order: str = "scheduled") -> Circuit:
    _require_parity(p, "even")
    return _low(p, order)


def emit_low_odd(p: HadamardPlacement, order: str = "scheduled") -> Circuit:
    _require_parity(p, "odd")
    return _low(p, order)


def emit_high_even(p: HadamardPlacement, order: str = "scheduled") -> Circuit:
    _require_parity(p, "even")
    return _high(p, order)


def emit_high_odd(p: HadamardPlacement, order: str = "scheduled") -> Circuit:
    _require_parity(p, "odd")
    return _high(p, order)


_EMITTERS = {
    (StrategyId.LOW, "even"): emit_low_even,
    (StrategyId.LOW, "odd"): emit_low_odd,
    (StrategyId.MID, "even"): emit_mid_even,
    (StrategyId.MID, "odd"): emit_mid_odd,
    (StrategyId.HIGH, "even"): emit_high_even,
    (StrategyId.HIGH, "odd"): emit_high_odd,
}


@dataclass(frozen=True)
class CompilationResult:
    circuit: Circuit
    strategy: StrategyId
    placement: HadamardPlacement

    @property
    def parity(self) -> str:
        return self.placement.parity

    @property
    def depth(self) -> int:
        return self.circuit.depth()

    @property
    def two_qubit_count(self) -> int:
        return self.circuit.two_qubit_count()

    def metrics(self) -> dict:
        return {
            "strategy": self.strategy.value,
            "parity": self.parity,
            "depth": self.depth,
            "twoq": self.two_qubit_count,
            "gates": len(self.circuit),
        }


def emit(strategy, p: HadamardPlacement, order: str = "scheduled") -> CompilationResult:
    if order not in ORDERS:
        raise StrategyError(f"unknown order {order!r}")
    sid = StrategyId.parse(strategy)
    circuit = _EMITTERS[sid, p.parity](p, order)
    return CompilationResult(circuit, sid, p)


def two_qubit_formula(strategy, k: int, h: int) -> int:
    """Closed-form two-qubit count of the emitted circuits."""
    sid = StrategyId.parse(strategy)
    n = k + 2
    a = h + (h % 2)  # size of the Hadamard role
    b = n - a if h % 2 else k - h  # size of the plain role
    c2 = lambda m: m * (m - 1) // 2  # noqa: E731
    cx = a * b
    if sid is StrategyId.MID:
        return cx + c2(a) + c2(b)
    if sid is StrategyId.LOW:
        return cx + c2(a) + c2(n) - c2(b)
    return cx + c2(b) + c2(n) - c2(a)
