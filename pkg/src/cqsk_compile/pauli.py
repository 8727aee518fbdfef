"""Binary symplectic Pauli operators and Clifford conjugation.

A Pauli on ``n`` qubits is stored as bit vectors ``x`` and ``z`` plus a sign and
stands for ``sign * prod_j i^(x_j z_j) X_j^x_j Z_j^z_j``, so ``Y`` is ``x = z = 1``
and every representable operator is Hermitian.

Conjugation always means ``U p U^dagger`` where ``U`` is the circuit unitary
(first gate applied first). Tableaux use the row-vector convention: row ``j`` of
``F`` is the image of ``X_j``, row ``n + j`` the image of ``Z_j``, and running
``c1`` then ``c2`` gives ``F(c1) @ F(c2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .circuit import Circuit, Gate


class PauliOperator:
    """Immutable Hermitian Pauli operator."""

    __slots__ = ("n", "x", "z", "sign")

    def __init__(self, x, z, sign: int = 1):
        x = np.array(x, dtype=np.uint8).reshape(-1) & 1
        z = np.array(z, dtype=np.uint8).reshape(-1) & 1
        if x.shape != z.shape:
            raise ValueError(f"x/z length mismatch: {x.size} vs {z.size}")
        if x.size == 0:
            raise ValueError("Pauli operator needs at least one qubit")
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "n", int(x.size))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "sign", int(sign))

    def __setattr__(self, name, value):
        raise AttributeError("PauliOperator is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(np.zeros(n), np.zeros(n))

    @classmethod
    def from_str(cls, text: str) -> PauliOperator:
        """Parse ``"-XIYZ"``; the leading sign is optional."""
        sign = 1
        if text[:1] in "+-":
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        table = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
        try:
            bits = [table[c] for c in text.upper()]
        except KeyError as exc:
            raise ValueError(f"bad Pauli letter in {text!r}") from exc
        x, z = zip(*bits)
        return cls(x, z, sign)

    @classmethod
    def on(cls, n: int, sign: int = 1, **letters: Iterable[int]) -> PauliOperator:
        """Build from 1-based supports, e.g. ``on(4, X=[1, 2], Z=[4])``."""
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for letter, wires in letters.items():
            for w in wires:
                if not 1 <= w <= n:
                    raise ValueError(f"wire {w} out of range for n={n}")
                if letter in ("X", "Y"):
                    x[w - 1] ^= 1
                if letter in ("Z", "Y"):
                    z[w - 1] ^= 1
        return cls(x, z, sign)

    # views ----------------------------------------------------------------
    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def is_identity(self) -> bool:
        return not (self.x.any() or self.z.any())

    def with_sign(self, sign: int) -> PauliOperator:
        return PauliOperator(self.x, self.z, sign)

    def __neg__(self) -> PauliOperator:
        return self.with_sign(-self.sign)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        r, parity = mul(self, other)
        if parity:
            raise ValueError(f"product {self} * {other} is not Hermitian")
        return r

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (
            self.n == other.n
            and self.sign == other.sign
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self) -> int:
        return hash((self.sign, self.x.tobytes(), self.z.tobytes()))

    def letters(self) -> str:
        return "".join("IZXY"[2 * a + b] for a, b in zip(self.x, self.z))

    def __str__(self) -> str:
        return ("+" if self.sign == 1 else "-") + self.letters()

    def __repr__(self) -> str:
        return f"PauliOperator({str(self)!r})"


def _check_same_n(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n}")


def _raw_exponent(x: np.ndarray, z: np.ndarray, sign: int) -> int:
    """Power of i in front of prod X^x Z^z (X factors left of Z factors)."""
    return (2 * (sign < 0) + int(np.count_nonzero(x & z))) % 4


def _from_raw(x: np.ndarray, z: np.ndarray, e: int) -> tuple[PauliOperator, int]:
    e_h = (e - int(np.count_nonzero(x & z))) % 4
    parity = e_h & 1
    # odd residue: operator = (-i)^parity * r, so i^1 -> r = -P and i^3 -> r = +P
    sign = -1 if e_h in (2, 1) else 1
    return PauliOperator(x, z, sign), parity


def mul(p: PauliOperator, q: PauliOperator) -> tuple[PauliOperator, int]:
    """Operator product ``p q``.

    Returns ``(r, i_parity)`` with ``p q = (-i)^i_parity * r``; ``i_parity`` is 1
    exactly when ``p`` and ``q`` anticommute.
    """
    _check_same_n(p, q)
    e = _raw_exponent(p.x, p.z, p.sign) + _raw_exponent(q.x, q.z, q.sign)
    # moving q's X factors left through p's Z factors
    e += 2 * int(np.count_nonzero(p.z & q.x))
    return _from_raw(p.x ^ q.x, p.z ^ q.z, e)


def product(
    paulis: Sequence[PauliOperator], n: int | None = None, i_power: int = 0
) -> PauliOperator:
    """``i^i_power`` times the left-to-right product; the result must be Hermitian."""
    if not paulis and n is None:
        raise ValueError("empty product needs n")
    n = paulis[0].n if paulis else n
    x = np.zeros(n, dtype=np.uint8)
    z = np.zeros_like(x)
    e = i_power
    for f in paulis:
        if f.n != n:
            raise ValueError(f"dimension mismatch: {f.n} vs {n}")
        e += _raw_exponent(f.x, f.z, f.sign) + 2 * int(np.count_nonzero(z & f.x))
        x ^= f.x
        z ^= f.z
    r, parity = _from_raw(x, z, e)
    if parity:
        raise ValueError("product is not Hermitian")
    return r


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """0 if ``p`` and ``q`` commute, 1 if they anticommute."""
    _check_same_n(p, q)
    return int((np.count_nonzero(p.x & q.z) + np.count_nonzero(p.z & q.x)) & 1)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) == 0


# ---------------------------------------------------------------------------
# gate action on stacks of Paulis


def apply_gate(x: np.ndarray, z: np.ndarray, s: np.ndarray | None, gate: Gate) -> None:
    """Conjugate a stack of Paulis by ``gate`` in place.

    ``x`` and ``z`` are (m, n) bit arrays, ``s`` an (m,) array of sign bits
    (1 = negative) or None when signs are irrelevant (Pauli frames).
    """
    w = [q - 1 for q in gate.wires]
    k = gate.kind
    if k == "H":
        a = w[0]
        if s is not None:
            s ^= x[:, a] & z[:, a]
        tmp = x[:, a].copy()
        x[:, a] = z[:, a]
        z[:, a] = tmp
    elif k == "P":
        a = w[0]
        if s is not None:
            s ^= x[:, a] & z[:, a]
        z[:, a] ^= x[:, a]
    elif k == "Pdg":
        a = w[0]
        if s is not None:
            s ^= x[:, a] & (z[:, a] ^ 1)
        z[:, a] ^= x[:, a]
    elif k == "X":
        if s is not None:
            s ^= z[:, w[0]]
    elif k == "Z":
        if s is not None:
            s ^= x[:, w[0]]
    elif k == "CX":
        c, t = w
        if s is not None:
            s ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
        x[:, t] ^= x[:, c]
        z[:, c] ^= z[:, t]
    elif k == "CZ":
        a, b = w
        if s is not None:
            s ^= x[:, a] & x[:, b] & (z[:, a] ^ z[:, b])
        z[:, a] ^= x[:, b]
        z[:, b] ^= x[:, a]
    else:  # pragma: no cover - Gate validates kinds
        raise ValueError(f"unsupported gate {gate}")


def _check_wires(n: int, gate: Gate) -> None:
    if max(gate.wires) > n:
        raise ValueError(f"wire out of range in {gate} for n={n}")


def conjugate_by_gate(p: PauliOperator, gate: Gate) -> PauliOperator:
    """``g p g^dagger`` with exact sign."""
    _check_wires(p.n, gate)
    x = p.x.reshape(1, -1).copy()
    z = p.z.reshape(1, -1).copy()
    s = np.array([p.sign < 0], dtype=np.uint8)
    apply_gate(x, z, s, gate)
    return PauliOperator(x[0], z[0], -1 if s[0] else 1)


def conjugate_by_circuit(p: PauliOperator, c: Circuit) -> PauliOperator:
    """``U p U^dagger`` for the unitary ``U`` of ``c``."""
    if p.n != c.n:
        raise ValueError(f"dimension mismatch: Pauli on {p.n}, circuit on {c.n}")
    x = p.x.reshape(1, -1).copy()
    z = p.z.reshape(1, -1).copy()
    s = np.array([p.sign < 0], dtype=np.uint8)
    for g in c.gates:
        apply_gate(x, z, s, g)
    return PauliOperator(x[0], z[0], -1 if s[0] else 1)


# ---------------------------------------------------------------------------
# tableaux


@dataclass(frozen=True, eq=False)
class SymplecticMatrix:
    """Clifford tableau: symplectic ``F`` (2n x 2n) and generator image signs."""

    n: int
    F: np.ndarray
    phase_bits: np.ndarray

    def __post_init__(self) -> None:
        F = gf2.as_bits(self.F).copy()
        ph = gf2.as_bits(self.phase_bits).reshape(-1).copy()
        if F.shape != (2 * self.n, 2 * self.n) or ph.shape != (2 * self.n,):
            raise ValueError("tableau shape does not match n")
        F.setflags(write=False)
        ph.setflags(write=False)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "phase_bits", ph)

    @classmethod
    def identity(cls, n: int) -> SymplecticMatrix:
        return cls(n, np.eye(2 * n, dtype=np.uint8), np.zeros(2 * n, dtype=np.uint8))

    def is_symplectic(self) -> bool:
        om = gf2.omega(self.n)
        return bool(np.array_equal(gf2.matmul(gf2.matmul(self.F, om), self.F.T), om))

    def row(self, j: int) -> PauliOperator:
        """Image of generator ``j`` (0-based; X_1..X_n then Z_1..Z_n)."""
        r = self.F[j]
        return PauliOperator(r[: self.n], r[self.n :], -1 if self.phase_bits[j] else 1)

    def image(self, p: PauliOperator) -> PauliOperator:
        if p.n != self.n:
            raise ValueError(f"dimension mismatch: {p.n} vs {self.n}")
        n = self.n
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        e = _raw_exponent(p.x, p.z, p.sign)
        for j in np.concatenate([np.nonzero(p.x)[0], n + np.nonzero(p.z)[0]]):
            r = self.row(int(j))
            e += _raw_exponent(r.x, r.z, r.sign) + 2 * int(np.count_nonzero(z & r.x))
            x ^= r.x
            z ^= r.z
        out, parity = _from_raw(x, z, e)
        if parity:
            raise ValueError("tableau is not a valid Clifford (non-Hermitian image)")
        return out

    def then(self, other: SymplecticMatrix) -> SymplecticMatrix:
        """Tableau of running ``self`` first and ``other`` second."""
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        rows = [other.image(self.row(j)) for j in range(2 * self.n)]
        return _from_rows(self.n, rows)

    def inverse(self) -> SymplecticMatrix:
        n = self.n
        om = gf2.omega(n)
        finv = gf2.matmul(gf2.matmul(om, self.F.T), om)
        rows = []
        for j in range(2 * n):
            v = finv[j]
            pre = PauliOperator(v[:n], v[n:])
            rows.append(pre.with_sign(self.image(pre).sign))
        return _from_rows(n, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.F, other.F)
            and np.array_equal(self.phase_bits, other.phase_bits)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.F.tobytes(), self.phase_bits.tobytes()))


def _from_rows(n: int, rows: Sequence[PauliOperator]) -> SymplecticMatrix:
    F = np.array([r.vector for r in rows], dtype=np.uint8)
    ph = np.array([r.sign < 0 for r in rows], dtype=np.uint8)
    return SymplecticMatrix(n, F, ph)


def tableau_of(c: Circuit) -> SymplecticMatrix:
    n = c.n
    x = np.zeros((2 * n, n), dtype=np.uint8)
    z = np.zeros((2 * n, n), dtype=np.uint8)
    x[:n] = np.eye(n, dtype=np.uint8)
    z[n:] = np.eye(n, dtype=np.uint8)
    s = np.zeros(2 * n, dtype=np.uint8)
    for g in c.gates:
        apply_gate(x, z, s, g)
    return SymplecticMatrix(n, np.hstack([x, z]), s)


# ---------------------------------------------------------------------------
# span reduction


def reduce_mod_span(
    p: PauliOperator, generators: Sequence[PauliOperator]
) -> tuple[bool, np.ndarray, int]:
    """Express ``p`` through ``generators`` over GF(2).

    Returns ``(in_span, combination, residual_sign)`` where ``residual_sign`` is
    the sign of ``p`` relative to the ordered product of the selected
    generators (only meaningful when ``in_span``).
    """
    m = len(generators)
    if m == 0:
        return p.is_identity(), np.zeros(0, dtype=np.uint8), p.sign
    for g in generators:
        _check_same_n(p, g)
    A = np.array([g.vector for g in generators], dtype=np.uint8).T
    comb = gf2.solve(A, p.vector)
    if comb is None:
        return False, np.zeros(m, dtype=np.uint8), 1
    chosen = [g for g, c in zip(generators, comb) if c]
    ref = product(chosen, p.n)
    return True, comb, p.sign * ref.sign
