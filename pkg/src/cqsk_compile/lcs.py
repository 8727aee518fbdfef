"""Logical Clifford synthesis for the [[n, n-2, 2]] family.

The 2k logical constraints plus the two fixed stabilizers pin down all but the
images of the two pure errors. Those may be shifted by stabilizers through a
symmetric 2 x 2 matrix ``A`` (``E_j -> E_j prod_m S_m^A[j, m]``), which gives
the eight solutions. Solutions are turned into circuits by a staged
elimination, so their gate counts are not those of any particular
elementary-form decomposition.

Solutions are solved and synthesized in a canonical wire frame (wire 1, the
Hadamard role, the plain role, wire n; see :func:`strategies.wire_roles`) and
then relabelled back. Placements with the same ``h`` have constraint systems
that agree up to that relabelling, so their circuits differ only by wire names.
``frame="raw"`` skips the relabelling.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .circuit import Circuit, Gate
from .code import CodeInstance
from .kernel import HadamardPlacement, all_placements, logical_action
from .pauli import PauliOperator, SymplecticMatrix, _from_rows, apply_gate, tableau_of
from .strategies import wire_roles
from .tables import read_csv, write_csv

SWEEP_COLUMNS = ("k", "h", "placement", "label", "depth", "twoq")
SWEEP_SCHEMA = "cqsk-sweep/1"
FRAMES = ("canonical", "raw")


class LCSError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConstraintSystem:
    placement: HadamardPlacement
    inputs: tuple[PauliOperator, ...]
    outputs: tuple[PauliOperator, ...]
    names: tuple[str, ...]
    n_logical_rows: int

    @property
    def n(self) -> int:
        return self.inputs[0].n

    @property
    def stabilizers(self) -> tuple[PauliOperator, ...]:
        return self.inputs[self.n_logical_rows :]


@dataclass(frozen=True)
class SolutionDescriptor:
    label: int
    A: np.ndarray
    F: SymplecticMatrix
    circuit: Circuit


def build_constraints(p: HadamardPlacement) -> ConstraintSystem:
    code = CodeInstance(p.k)
    action = logical_action(p)
    ins, outs, names = [], [], []
    for name, source, image in action.generators():
        ins.append(code.embed(source))
        outs.append(code.embed(image))
        names.append(name)
    for name, s in zip(("X[n]", "Z[n]"), code.stabilizers):
        ins.append(s)
        outs.append(s)
        names.append(name)
    return ConstraintSystem(p, tuple(ins), tuple(outs), tuple(names), 2 * p.k)


def _sym_rows(vectors: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Rows r such that r @ e equals the symplectic product <v, e>."""
    om = gf2.omega(n)
    return np.array([gf2.matmul(om, v.reshape(-1, 1)).reshape(-1) for v in vectors])


def _pure_errors(logicals: Sequence[PauliOperator], stabs: Sequence[PauliOperator]):
    """Partners E_a with <E_a, S_b> = delta_ab, commuting with logicals and each other."""
    n = stabs[0].n
    errors: list[np.ndarray] = []
    for a in range(len(stabs)):
        vecs = [s.vector for s in stabs] + [l.vector for l in logicals] + errors
        rhs = [int(b == a) for b in range(len(stabs))] + [0] * (len(logicals) + len(errors))
        e = gf2.solve(_sym_rows(vecs, n), np.array(rhs, dtype=np.uint8))
        if e is None:
            raise LCSError("no pure error partner exists; constraints are inconsistent")
        errors.append(e)
    return errors


def _symmetric_matrices(r: int = 2) -> list[np.ndarray]:
    mats = []
    idx = [(i, j) for i in range(r) for j in range(i, r)]
    for bits in itertools.product((0, 1), repeat=len(idx)):
        a = np.zeros((r, r), dtype=np.uint8)
        for (i, j), b in zip(idx, bits):
            a[i, j] = a[j, i] = b
        mats.append(a)
    return mats


def _label(a: np.ndarray) -> int:
    return int(a[0, 0]) | int(a[0, 1]) << 1 | int(a[1, 1]) << 2


def _fix_phases(F: np.ndarray, ins, want_signs) -> SymplecticMatrix:
    """Attach phase bits so every input row maps with the wanted sign."""
    n = F.shape[0] // 2
    tab0 = SymplecticMatrix(n, F, np.zeros(2 * n, dtype=np.uint8))
    got = [tab0.image(p) for p in ins]
    d = np.array([int(g.sign != w) for g, w in zip(got, want_signs)], dtype=np.uint8)
    # a trailing Pauli sigma flips exactly the images that anticommute with it
    sigma = gf2.solve(_sym_rows([g.vector for g in got], n), d)
    if sigma is None:  # pragma: no cover - images form a basis
        raise LCSError("phase correction is unsolvable")
    flips = gf2.matmul(_sym_rows([sigma], n), F.T).reshape(-1)
    return SymplecticMatrix(n, F, flips)


def _solution(cs: ConstraintSystem, a: np.ndarray) -> SymplecticMatrix:
    n = cs.n
    nl = cs.n_logical_rows
    stabs = cs.stabilizers
    e_in = _pure_errors(cs.inputs[:nl], stabs)
    e_out = _pure_errors(cs.outputs[:nl], stabs)
    e_out = [
        e ^ gf2.matmul(a[j].reshape(1, -1), np.array([s.vector for s in stabs])).reshape(-1)
        for j, e in enumerate(e_out)
    ]
    b_in = np.array([p.vector for p in cs.inputs] + e_in, dtype=np.uint8)
    b_out = np.array([p.vector for p in cs.outputs] + e_out, dtype=np.uint8)
    try:
        F = gf2.matmul(gf2.inverse(b_in), b_out)
    except np.linalg.LinAlgError as exc:
        raise LCSError("constraint inputs are not independent") from exc
    ins = list(cs.inputs) + [PauliOperator(e[:n], e[n:]) for e in e_in]
    want = [p.sign for p in cs.outputs] + [1] * len(e_in)
    tab = _fix_phases(F, ins, want)
    if not tab.is_symplectic():
        raise LCSError("completed matrix is not symplectic")
    return tab


def solve_base(cs: ConstraintSystem) -> SymplecticMatrix:
    return _solution(cs, np.zeros((2, 2), dtype=np.uint8))


def _permute_pauli(p: PauliOperator, mapping: dict[int, int]) -> PauliOperator:
    """Move the letter on wire ``w`` to wire ``mapping[w]``."""
    x = np.zeros_like(p.x)
    z = np.zeros_like(p.z)
    for w, v in mapping.items():
        x[v - 1] = p.x[w - 1]
        z[v - 1] = p.z[w - 1]
    return PauliOperator(x, z, p.sign)


def _permute_tableau(t: SymplecticMatrix, mapping: dict[int, int]) -> SymplecticMatrix:
    """Tableau of the relabelled Clifford: q -> mapping(t(mapping^-1(q)))."""
    back = {v: w for w, v in mapping.items()}
    n = t.n
    rows = []
    for j in range(2 * n):
        src = back[j % n + 1] - 1 + (n if j >= n else 0)
        rows.append(_permute_pauli(t.row(src), mapping))
    return _from_rows(n, rows)


def canonical_frame(p: HadamardPlacement) -> dict[int, int]:
    """Physical wire -> wire in the canonical role order."""
    return {w: i + 1 for i, w in enumerate(wire_roles(p).canonical)}


def _in_frame(cs: ConstraintSystem, mapping: dict[int, int]) -> ConstraintSystem:
    return ConstraintSystem(
        cs.placement,
        tuple(_permute_pauli(q, mapping) for q in cs.inputs),
        tuple(_permute_pauli(q, mapping) for q in cs.outputs),
        cs.names,
        cs.n_logical_rows,
    )


def enumerate_solutions(
    cs: ConstraintSystem, with_circuits: bool = True, frame: str = "canonical"
) -> list[SolutionDescriptor]:
    if frame not in FRAMES:
        raise ValueError(f"unknown frame {frame!r}; use one of {FRAMES}")
    to_frame = canonical_frame(cs.placement) if frame == "canonical" else None
    work = _in_frame(cs, to_frame) if to_frame else cs
    back = {v: w for w, v in to_frame.items()} if to_frame else None
    sols = []
    for a in _symmetric_matrices(len(cs.stabilizers)):
        tab = _solution(work, a)
        circ = synthesize(tab) if with_circuits else Circuit(cs.n)
        if back:
            tab = _permute_tableau(tab, back)
            circ = circ.relabel(back)
        sols.append(SolutionDescriptor(_label(a), a, tab, circ))
    return sorted(sols, key=lambda s: s.label)


# ---------------------------------------------------------------------------
# synthesis


def synthesize(F: SymplecticMatrix) -> Circuit:
    """Circuit over {H, P, Pdg, X, Z, CX, CZ} whose tableau equals ``F``.

    Gates are appended until the tableau reduces to the identity, one qubit at
    a time; the circuit is the inverse of that reduction.
    """
    if not F.is_symplectic():
        raise LCSError("input matrix is not symplectic")
    n = F.n
    x = F.F[:, :n].copy()
    z = F.F[:, n:].copy()
    s = F.phase_bits.copy()
    ops: list[Gate] = []

    def do(kind: str, *wires: int) -> None:
        g = Gate(kind, tuple(w + 1 for w in wires))
        apply_gate(x, z, s, g)
        ops.append(g)

    for q in range(n):
        xr, zr = q, n + q
        # image of X_q -> X_q
        for j in range(q, n):
            if not x[xr, j] and z[xr, j]:
                do("H", j)
        if not x[xr, q]:
            j = q + int(np.nonzero(x[xr, q:])[0][0])
            do("CX", j, q)
        for j in range(q + 1, n):
            if x[xr, j]:
                do("CX", q, j)
        if z[xr, q]:
            do("P", q)
        for j in range(q + 1, n):
            if z[xr, j]:
                do("CZ", q, j)
        # image of Z_q -> Z_q, keeping X_q fixed
        if x[zr, q]:
            do("H", q)
            do("P", q)
            do("H", q)
        for j in range(q + 1, n):
            if x[zr, j] and z[zr, j]:
                do("P", j)
            if x[zr, j]:
                do("H", j)
        for j in range(q + 1, n):
            if z[zr, j]:
                do("CX", j, q)
    for q in range(n):
        if s[q]:
            do("Z", q)
        if s[n + q]:
            do("X", q)
    if not (np.array_equal(x, np.eye(2 * n, n, dtype=np.uint8))
            and np.array_equal(z, np.eye(2 * n, n, -n, dtype=np.uint8)) and not s.any()):
        raise LCSError("elimination did not reach the identity")  # pragma: no cover
    return Circuit(n, tuple(ops)).inverse()


def complete_by_residual(candidate: Circuit, p: HadamardPlacement) -> Circuit:
    """Append the cheapest residual that turns ``candidate`` into a solution."""
    from .verify import verify

    cs = build_constraints(p)
    inv = tableau_of(candidate).inverse()
    best = None
    for sol in enumerate_solutions(cs, with_circuits=False):
        residual = synthesize(inv.then(sol.F))
        composite = candidate.then(residual)
        if verify(composite, p).passed and (
            best is None or composite.two_qubit_count() < best.two_qubit_count()
        ):
            best = composite
    if best is None:
        raise LCSError(f"no residual completion passes verification for {p.to_text()}")
    return best


# ---------------------------------------------------------------------------
# mining


def placements_for(k: int, h: int, cap: int = 256, samples: int = 10, seed: int = 0):
    """All placements of size ``h`` if there are at most ``cap``, else a seeded sample."""
    from .kernel import sample_placements

    if comb(k, h) <= cap:
        return list(all_placements(k, h))
    return sample_placements(k, h, samples, seed)


def depth_sweep(
    k: int,
    labels: Iterable[int] | None,
    placements: Iterable[HadamardPlacement],
    frame: str = "canonical",
) -> list[dict]:
    wanted = set(range(8) if labels is None else labels)
    rows = []
    for p in placements:
        if p.k != k:
            raise ValueError(f"placement {p.to_text()} does not have k={k}")
        for sol in enumerate_solutions(build_constraints(p), frame=frame):
            if sol.label in wanted:
                rows.append({
                    "k": k, "h": p.h, "placement": p.label(), "label": sol.label,
                    "depth": sol.circuit.depth(), "twoq": sol.circuit.two_qubit_count(),
                })
    return rows


def classify_position_invariant(
    k: int, h: int, cap: int = 256, samples: int = 10, seed: int = 0, frame: str = "canonical"
) -> set[int]:
    rows = depth_sweep(k, None, placements_for(k, h, cap, samples, seed), frame)
    depths: dict[int, set[int]] = {}
    for r in rows:
        depths.setdefault(r["label"], set()).add(r["depth"])
    return {label for label, ds in depths.items() if len(ds) == 1}


def write_sweep_csv(rows: Iterable[dict]) -> str:
    return write_csv(rows, SWEEP_COLUMNS, SWEEP_SCHEMA)


def _label_cell(v: str) -> int | str:
    return int(v) if v.isdigit() else v


def read_sweep_csv(text: str) -> list[dict]:
    """Inverse of :func:`write_sweep_csv`; LCS labels come back as ints, strategy names as text."""
    conv = {c: int for c in ("k", "h", "depth", "twoq")}
    conv["label"] = _label_cell
    return read_csv(text, conv)


def random_circuit(n: int, length: int, rng: random.Random) -> Circuit:
    """Uniformly drawn gates over the full alphabet; used for round-trip checks."""
    kinds = ("H", "P", "X", "Z", "CX", "CZ")
    gates = []
    for _ in range(length):
        kind = rng.choice(kinds if n > 1 else kinds[:4])
        if kind in ("CX", "CZ"):
            gates.append(Gate(kind, tuple(rng.sample(range(1, n + 1), 2))))
        else:
            gates.append(Gate(kind, (rng.randint(1, n),)))
    return Circuit(n, tuple(gates))


def random_symplectic(n: int, rng: np.random.Generator) -> SymplecticMatrix:
    """Random tableau: symplectic Gram-Schmidt on random vectors, random signs."""
    om = gf2.omega(n)
    form = lambda a, b: int(a @ om @ b) & 1  # noqa: E731
    xs: list[np.ndarray] = []
    zs: list[np.ndarray] = []

    def project(v):
        for x, z in zip(xs, zs):
            v = v ^ (form(v, z) * x) ^ (form(v, x) * z)
        return v

    while len(xs) < n:
        v = project(rng.integers(0, 2, 2 * n, dtype=np.uint8))
        if not v.any():
            continue
        w = project(rng.integers(0, 2, 2 * n, dtype=np.uint8))
        if form(v, w) == 0:
            continue
        xs.append(v)
        zs.append(w)
    F = np.array(xs + zs, dtype=np.uint8)
    return SymplecticMatrix(n, F, rng.integers(0, 2, 2 * n, dtype=np.uint8))
