"""Pauli-frame Monte Carlo for noisy logical circuits on the [[n, n-2, 2]] code.

Encoding, syndrome extraction and readout are ideal, so the outcome of a shot
depends only on the Pauli error accumulated by the logical circuit. Frames are
tracked without their sign, which is a global phase here.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from itertools import product as cartesian

import numpy as np

from .circuit import Circuit, Gate
from .code import CodeInstance
from .pauli import PauliOperator, apply_gate, conjugate_by_gate, mul, reduce_mod_span, symplectic_product

REJECTED = "rejected"
ACCEPTED_FAULT = "accepted_fault"
SUCCESS = "success"

SIM_COLUMNS = (
    "k", "h", "placement", "strategy", "p1", "p2", "shots", "seed",
    "p_acc", "p_acc_ci", "p_succ", "p_succ_ci", "depth", "twoq",
)
BLOCK = 8192  # shots per RNG stream
Z95 = 1.959963984540054


@dataclass(frozen=True)
class NoiseModel:
    p1: float = 0.0
    p2: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p1", "p2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0 or math.isnan(v):
                raise ValueError(f"{name} must be a probability, got {v}")

    def rate(self, g: Gate) -> float:
        return self.p2 if g.is_two_qubit else self.p1


def wilson_halfwidth(count: int, shots: int, z: float = Z95) -> float:
    """Half-width of the Wilson score interval."""
    if shots <= 0:
        raise ValueError("shots must be positive")
    p = count / shots
    denom = 1 + z * z / shots
    return z / denom * math.sqrt(p * (1 - p) / shots + z * z / (4 * shots * shots))


def combined_halfwidth(a: float, b: float) -> float:
    """Half-width for a difference of two independent estimates."""
    return math.hypot(a, b)


@dataclass(frozen=True)
class SimStats:
    shots: int
    accepted_count: int
    success_count: int
    seed: int

    def __post_init__(self) -> None:
        if not 0 <= self.success_count <= self.accepted_count <= self.shots:
            raise ValueError("need success <= accepted <= shots")

    @property
    def p_acc(self) -> float:
        return self.accepted_count / self.shots

    @property
    def p_succ(self) -> float:
        return self.success_count / self.shots

    @property
    def p_acc_ci(self) -> float:
        return wilson_halfwidth(self.accepted_count, self.shots)

    @property
    def p_succ_ci(self) -> float:
        return wilson_halfwidth(self.success_count, self.shots)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(p_acc=self.p_acc, p_acc_ci=self.p_acc_ci, p_succ=self.p_succ, p_succ_ci=self.p_succ_ci)
        return d


# ---------------------------------------------------------------------------
# single frames


def _error_bits(idx: int, arity: int) -> list[tuple[int, int]]:
    """(x, z) per wire for outcome ``idx`` in 1..4**arity - 1."""
    return [((idx >> (2 * i)) & 1, (idx >> (2 * i + 1)) & 1) for i in range(arity)]


def sample_gate_error(g: Gate, model: NoiseModel, rng: np.random.Generator, n: int) -> PauliOperator:
    """Depolarizing error after ``g``: uniform over the non-identity Paulis on its wires."""
    err = PauliOperator.identity(n)
    arity = len(g.wires)
    if rng.random() >= model.rate(g):
        return err
    idx = int(rng.integers(1, 4**arity))
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    for w, (xb, zb) in zip(g.wires, _error_bits(idx, arity)):
        x[w - 1], z[w - 1] = xb, zb
    return PauliOperator(x, z)


def run_frame(c: Circuit, model: NoiseModel, rng: np.random.Generator) -> PauliOperator:
    """Net error at the end of ``c``: propagate, then inject, gate by gate."""
    e = PauliOperator.identity(c.n)
    for g in c.gates:
        e = conjugate_by_gate(e, g)
        e = mul(sample_gate_error(g, model, rng, c.n), e)[0]
    return e


def propagate_errors(c: Circuit, errors: dict[int, PauliOperator]) -> PauliOperator:
    """Net error when ``errors[i]`` strikes right after gate ``i`` (0-based)."""
    e = PauliOperator.identity(c.n)
    for i, g in enumerate(c.gates):
        e = conjugate_by_gate(e, g)
        if i in errors:
            e = mul(errors[i], e)[0]
    return e


def classify_frame(e: PauliOperator, code: CodeInstance) -> str:
    if e.n != code.n:
        raise ValueError(f"frame has {e.n} qubits, code has n={code.n}")
    if any(symplectic_product(e, s) for s in code.stabilizers):
        return REJECTED
    in_span, _, _ = reduce_mod_span(e, code.stabilizers)
    return SUCCESS if in_span else ACCEPTED_FAULT


# ---------------------------------------------------------------------------
# batched frames


def _run_block(c: Circuit, model: NoiseModel, shots: int, rng: np.random.Generator):
    n = c.n
    x = np.zeros((shots, n), dtype=np.uint8)
    z = np.zeros((shots, n), dtype=np.uint8)
    for g in c.gates:
        apply_gate(x, z, None, g)
        p = model.rate(g)
        if p <= 0:
            continue
        hits = np.nonzero(rng.random(shots) < p)[0]
        if hits.size == 0:
            continue
        arity = len(g.wires)
        idx = rng.integers(1, 4**arity, size=hits.size)
        for i, w in enumerate(g.wires):
            x[hits, w - 1] ^= ((idx >> (2 * i)) & 1).astype(np.uint8)
            z[hits, w - 1] ^= ((idx >> (2 * i + 1)) & 1).astype(np.uint8)
    return x, z


def classify_frames(x: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Accepted and success masks for a stack of frames."""
    accepted = (x.sum(axis=1) % 2 == 0) & (z.sum(axis=1) % 2 == 0)
    trivial_x = (x == x[:, :1]).all(axis=1)
    trivial_z = (z == z[:, :1]).all(axis=1)
    return accepted, accepted & trivial_x & trivial_z


def _block_counts(c, model, seed, block, shots):
    rng = np.random.default_rng(np.random.SeedSequence([seed, block]))
    acc, succ = classify_frames(*_run_block(c, model, shots, rng))
    return int(acc.sum()), int(succ.sum())


def simulate(
    c: Circuit, model: NoiseModel, shots: int, seed: int, workers: int = 1
) -> SimStats:
    """Monte Carlo acceptance and success counts.

    Shots are split into fixed blocks of :data:`BLOCK`, block ``b`` drawing from
    the stream ``SeedSequence([seed, b])``; results do not depend on ``workers``.
    """
    if shots < 1:
        raise ValueError("shots must be at least 1")
    if c.n % 2:
        raise ValueError(f"circuit width must be even, got {c.n}")
    sizes = [min(BLOCK, shots - b) for b in range(0, shots, BLOCK)]
    jobs = [(c, model, seed, b, s) for b, s in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            counts = list(ex.map(lambda j: _block_counts(*j), jobs))
    else:
        counts = [_block_counts(*j) for j in jobs]
    acc = sum(a for a, _ in counts)
    succ = sum(s for _, s in counts)
    return SimStats(shots, acc, succ, seed)


# ---------------------------------------------------------------------------
# exact reference


def _state_bits(n: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(4**n)
    x = ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    z = ((idx[:, None] >> (n + np.arange(n))) & 1).astype(np.uint8)
    return x, z


def _state_index(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    n = x.shape[1]
    w = 1 << np.arange(n)
    return (x.astype(np.int64) @ w) + ((z.astype(np.int64) @ w) << n)


def exact_rates(c: Circuit, model: NoiseModel, max_n: int = 8) -> tuple[float, float]:
    """Exact ``(p_acc, p_succ)`` from the full distribution over the 4**n frames."""
    n = c.n
    if n > max_n:
        raise ValueError(f"exact rates limited to n <= {max_n}")
    bx, bz = _state_bits(n)
    states = np.arange(4**n)
    dist = np.zeros(4**n)
    dist[0] = 1.0
    for g in c.gates:
        x, z = bx.copy(), bz.copy()
        apply_gate(x, z, None, g)
        moved = np.zeros_like(dist)
        np.add.at(moved, _state_index(x, z), dist)
        p = model.rate(g)
        arity = len(g.wires)
        masks = []
        for idx in range(1, 4**arity):
            m = 0
            for w, (xb, zb) in zip(g.wires, _error_bits(idx, arity)):
                m |= xb << (w - 1) | zb << (n + w - 1)
            masks.append(m)
        dist = (1 - p) * moved + p / len(masks) * sum(moved[states ^ m] for m in masks)
    acc, succ = classify_frames(bx, bz)
    return float(dist[acc].sum()), float(dist[succ].sum())


def enumerate_rates(c: Circuit, model: NoiseModel, max_configs: int = 2_000_000) -> tuple[float, float]:
    """Brute-force sum over every per-gate error outcome; only for tiny circuits.

    Sign-free propagation is linear, so each outcome is pushed to the end of the
    circuit once and a configuration's net frame is the XOR of its parts.
    """
    options = []
    total = 1
    for i, g in enumerate(c.gates):
        arity = len(g.wires)
        p = model.rate(g)
        outs = [(0, 1 - p)]
        for idx in range(1, 4**arity):
            x = np.zeros(c.n, dtype=np.uint8)
            z = np.zeros(c.n, dtype=np.uint8)
            for w, (xb, zb) in zip(g.wires, _error_bits(idx, arity)):
                x[w - 1], z[w - 1] = xb, zb
            e = propagate_errors(c, {i: PauliOperator(x, z)})
            outs.append((int(_state_index(e.x[None, :], e.z[None, :])[0]), p / (4**arity - 1)))
        options.append([o for o in outs if o[1] > 0])
        total *= len(options[-1])
    if total > max_configs:
        raise ValueError(f"{total} configurations exceed the limit {max_configs}")
    dist: dict[int, float] = {}
    for combo in cartesian(*options):
        frame = 0
        weight = 1.0
        for m, w in combo:
            frame ^= m
            weight *= w
        dist[frame] = dist.get(frame, 0.0) + weight
    code = CodeInstance(c.n - 2)
    acc = succ = 0.0
    for frame, weight in dist.items():
        bits = [(frame >> j) & 1 for j in range(2 * c.n)]
        outcome = classify_frame(PauliOperator(bits[: c.n], bits[c.n :]), code)
        if outcome != REJECTED:
            acc += weight
        if outcome == SUCCESS:
            succ += weight
    return acc, succ
