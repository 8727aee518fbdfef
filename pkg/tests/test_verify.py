import json
import random

import numpy as np
import pytest

from cqsk_compile.circuit import CZ, Circuit, Gate, H
from cqsk_compile.code import CodeInstance
from cqsk_compile.kernel import HadamardPlacement, all_placements, logical_action
from cqsk_compile.lcs import random_circuit
from cqsk_compile.pauli import PauliOperator, conjugate_by_circuit
from cqsk_compile.strategies import emit
from cqsk_compile.verify import (
    EXACT,
    FAIL,
    SIGN_FLIP,
    VerificationError,
    check_logical_constraints,
    check_stabilizer_preservation,
    verify,
)

from dense_oracle import circuit_unitary, code_projector, conjugate, pauli_matrix


def _even_placements_with_last_plain(k):
    for h in range(0, k, 2):
        for p in all_placements(k, h):
            if k - 1 not in p.ih:
                yield p


@pytest.mark.parametrize("k", [4, 6, 8])
def test_mid_even_reference_image(k):
    # physical wire k is E(k - 1), a non-Hadamard wire here
    n = k + 2
    for p in _even_placements_with_last_plain(k):
        had = [i + 1 for i in p.ih]
        plain = [i + 1 for i in p.complement if i + 1 != k]
        want = PauliOperator.on(n, X=[1, *had], Y=[k], Z=plain)
        got = conjugate_by_circuit(PauliOperator.on(n, X=[1, k]), emit("mid", p).circuit)
        assert str(got) == str(want)


def test_identity_circuit_fails_logical_constraints():
    p = HadamardPlacement(4, [1, 3])
    records = check_logical_constraints(Circuit(6), p)
    assert any(r.status == FAIL for r in records)
    assert not verify(Circuit(6), p).passed


def test_low_even_signs_are_all_positive():
    for h in range(0, 5, 2):
        for p in all_placements(4, h):
            rec = check_logical_constraints(emit("low", p).circuit, p)
            assert all(r.ok and r.sign == 1 for r in rec)


def test_stabilizer_examples():
    recs = check_stabilizer_preservation(Circuit(4))
    assert [r.status for r in recs] == [EXACT, EXACT]
    recs = check_stabilizer_preservation(Circuit(4, (H(1),)))
    assert recs[0].status == FAIL
    with pytest.raises(VerificationError):
        check_stabilizer_preservation(Circuit(5))


def test_high_odd_preserves_stabilizers():
    for h in (1, 3):
        for p in all_placements(4, h):
            assert verify(emit("high", p).circuit, p).stabilizer_ok


def test_width_mismatch():
    with pytest.raises(VerificationError):
        verify(Circuit(4), HadamardPlacement(4, [1]))


def test_appended_cz_degrades_a_constraint():
    p = HadamardPlacement(4, [1, 3])
    c = emit("mid", p).circuit
    before = verify(c, p)
    after = verify(c.then([CZ(1, 2)]), p)
    assert before.passed and not after.passed
    assert [r.status for r in before.logical] != [r.status for r in after.logical]


def test_logical_pauli_shows_as_sign_flip():
    p = HadamardPlacement(4, [1, 3])
    # applied first, Z_2 only meets Xbar_1 = X_1 X_2 among the inputs
    c = Circuit(6, (Gate("Z", (2,)),)).then(emit("mid", p).circuit)
    report = verify(c, p)
    assert [r.constraint for r in report.failures()] == ["X1"]
    assert report.failures()[0].status == SIGN_FLIP


def test_mutations_are_detected():
    rng = random.Random(0)
    p = HadamardPlacement(4, [2])
    base = emit("low", p).circuit
    ref = [r.status for r in verify(base, p).logical]
    changed = 0
    for _ in range(100):
        g = random_circuit(6, 1, rng).gates[0]
        pos = rng.randint(0, len(base))
        gates = list(base.gates)
        gates.insert(pos, g)
        report = verify(Circuit(6, tuple(gates)), p)
        changed += [r.status for r in report.logical] != ref or not report.passed
    assert changed > 0


def test_report_json_schema():
    p = HadamardPlacement(4, [1])
    d = json.loads(verify(emit("mid", p).circuit, p).to_json())
    assert d["passed"] is True
    assert len(d["logical"]) == 2 * 4 and len(d["stabilizer"]) == 2
    assert set(d["logical"][0]) == {"constraint", "status", "stabilizer_factor", "sign", "image", "target"}


def _dense_verdict(c, p):
    code = CodeInstance(p.k)
    u = circuit_unitary(c)
    proj = code_projector(code.n)
    for _, src, img in logical_action(p).generators():
        a = conjugate(u, pauli_matrix(code.embed(src)))
        if not np.allclose(a @ proj, pauli_matrix(code.embed(img)) @ proj):
            return False
    for s in code.stabilizers:
        img = conjugate(u, pauli_matrix(s)) @ proj
        if not (np.allclose(img, proj) or np.allclose(img, -proj)):
            return False
    return True


@pytest.mark.parametrize("k", [2, 4])
def test_verdict_agrees_with_dense_projector_check(k):
    rng = random.Random(k)
    for h in range(k + 1):
        for p in all_placements(k, h):
            for s in ("low", "mid", "high"):
                c = emit(s, p).circuit
                assert _dense_verdict(c, p) is True
                for _ in range(3):
                    m = c.then(random_circuit(k + 2, rng.randint(1, 2), rng))
                    assert _dense_verdict(m, p) == verify(m, p).passed
