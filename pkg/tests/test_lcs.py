import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cqsk_compile import gf2
from cqsk_compile.circuit import CZ, Circuit
from cqsk_compile.code import CodeError, CodeInstance
from cqsk_compile.kernel import HadamardPlacement, LogicalAction, all_placements, logical_action
from cqsk_compile.lcs import (
    ConstraintSystem,
    LCSError,
    build_constraints,
    classify_position_invariant,
    complete_by_residual,
    depth_sweep,
    enumerate_solutions,
    placements_for,
    random_circuit,
    read_sweep_csv,
    solve_base,
    synthesize,
    write_sweep_csv,
)
from cqsk_compile.pauli import PauliOperator, SymplecticMatrix, mul, symplectic_product, tableau_of
from cqsk_compile.strategies import WireRoles, diagonal_block_mid, emit, entangling_block, iqp_block_mid
from cqsk_compile.verify import check_logical_constraints, verify


def _p(k, *ih):
    return HadamardPlacement(k, ih)


def test_row_count():
    cs = build_constraints(_p(2))
    assert len(cs.inputs) == len(cs.outputs) == 2 * 2 + 2 and cs.n == 4


@pytest.mark.parametrize("ih", [(), (1,), (2, 3), (1, 2, 3, 4)])
def test_outputs_preserve_symplectic_products(ih):
    cs = build_constraints(_p(4, *ih))
    for a, b in zip(cs.inputs, cs.outputs):
        for c, d in zip(cs.inputs, cs.outputs):
            assert symplectic_product(a, c) == symplectic_product(b, d)


def test_rows_match_hand_embedding():
    p = _p(4, 2, 3)
    cs = build_constraints(p)
    code = CodeInstance(4)
    act = logical_action(p)
    for (name, _, image), out in zip(act.generators(), cs.outputs):
        # multiply logical representatives letter by letter
        acc = PauliOperator.identity(6).with_sign(image.sign)
        phase = 0
        for i in range(4):
            xb, zb = code.logical_reps(i + 1)
            if image.x[i]:
                acc, par = mul(acc, xb)
                phase += par
            if image.z[i]:
                acc, par = mul(acc, zb)
                phase += par
        # every logical Y costs one factor -i, which its i prefactor cancels
        assert phase == int(np.count_nonzero(image.x & image.z))
        assert acc == out, name


def test_odd_k_rejected():
    with pytest.raises(CodeError):
        build_constraints(_p(5, 1))


def test_identity_action_completes_to_identity():
    code = CodeInstance(4)
    ins = [code.embed(src) for _, src, _ in logical_action(_p(4)).generators()] + list(code.stabilizers)
    cs = ConstraintSystem(_p(4), tuple(ins), tuple(ins), tuple(map(str, ins)), 8)
    assert solve_base(cs) == SymplecticMatrix.identity(6)


@pytest.mark.parametrize("ih", [(), (1,), (1, 2), (2,)])
def test_base_is_symplectic_and_verifies(ih):
    p = _p(2, *ih)
    base = solve_base(build_constraints(p))
    assert base.is_symplectic()
    assert verify(synthesize(base), p).passed


def test_label_zero_is_base_in_raw_frame():
    cs = build_constraints(_p(4, 1, 3))
    assert enumerate_solutions(cs, frame="raw")[0].F == solve_base(cs)


@pytest.mark.parametrize("frame", ["canonical", "raw"])
def test_eight_distinct_verified_solutions(frame):
    p = _p(4, 1, 3)
    sols = enumerate_solutions(build_constraints(p), frame=frame)
    assert [s.label for s in sols] == list(range(8))
    assert len({s.F for s in sols}) == 8
    for s in sols:
        assert np.array_equal(s.A, s.A.T)
        assert tableau_of(s.circuit) == s.F
        assert verify(s.circuit, p).passed


def test_solutions_differ_by_logical_identity():
    p = _p(4, 2)
    k = 4
    ident = LogicalAction(
        tuple(PauliOperator.on(k, X=[i]) for i in range(1, k + 1)),
        tuple(PauliOperator.on(k, Z=[i]) for i in range(1, k + 1)),
    )
    sols = enumerate_solutions(build_constraints(p))
    for a in sols:
        for b in sols:
            diff = a.circuit.then(b.circuit.inverse())
            assert all(r.ok for r in check_logical_constraints(diff, p, ident))


def test_synthesize_examples():
    assert synthesize(SymplecticMatrix.identity(3)) == Circuit(3)
    t = tableau_of(Circuit(2, (CZ(1, 2),)))
    assert tableau_of(synthesize(t)) == t
    t = tableau_of(random_circuit(6, 50, random.Random(1)))
    assert tableau_of(synthesize(t)) == t


def test_synthesize_rejects_non_symplectic():
    bad = SymplecticMatrix(2, np.ones((4, 4), dtype=np.uint8), np.zeros(4, dtype=np.uint8))
    with pytest.raises(LCSError):
        synthesize(bad)


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_synthesize_round_trip(n, seed):
    t = tableau_of(random_circuit(n, 8 * n, random.Random(seed)))
    c = synthesize(t)
    assert tableau_of(c) == t
    assert {g.kind for g in c.gates} <= {"H", "P", "Pdg", "X", "Z", "CX", "CZ"}


def _literal_mid(p):
    # blocks over the bare embedded sets, without the outer wires
    n = p.k + 2
    r = WireRoles(n, tuple(i + 1 for i in sorted(p.ih)), tuple(i + 1 for i in sorted(p.complement)))
    return Circuit(n, (*entangling_block(r), *iqp_block_mid(r), *diagonal_block_mid(r)))


@pytest.mark.parametrize("ih", [(2,), (1, 2, 4)])
def test_residual_completion_repairs_a_failing_candidate(ih):
    p = _p(4, *ih)
    cand = _literal_mid(p)
    assert not verify(cand, p).passed
    fixed = complete_by_residual(cand, p)
    assert verify(fixed, p).passed
    assert fixed.gates[: len(cand)] == cand.gates


def test_classify_extremes_and_determinism():
    assert classify_position_invariant(6, 0) == set(range(8))
    assert classify_position_invariant(6, 6) == set(range(8))
    assert classify_position_invariant(6, 3) == classify_position_invariant(6, 3)


def test_every_h_has_an_invariant_label_at_k8():
    for h in range(9):
        assert classify_position_invariant(8, h)


def test_sampled_classification_uses_ten_placements():
    rows = depth_sweep(20, [0], placements_for(20, 3))
    assert len(rows) == 10


def test_depth_sweep_rows_and_csv_round_trip():
    ps = list(all_placements(4, 2))
    rows = depth_sweep(4, [0, 3, 5], ps)
    assert len(rows) == 3 * len(ps)
    assert read_sweep_csv(write_sweep_csv(rows)) == rows
    with pytest.raises(ValueError):
        depth_sweep(6, None, ps)


def test_low_beats_mid_below_quarter_at_k20():
    for h in range(0, 5):
        p = HadamardPlacement(20, range(1, h + 1))
        assert emit("low", p).two_qubit_count < emit("mid", p).two_qubit_count


def test_gf2_symplectic_condition_for_all_solutions():
    om = gf2.omega(6)
    for s in enumerate_solutions(build_constraints(_p(4, 3)), with_circuits=False):
        assert np.array_equal(gf2.matmul(gf2.matmul(s.F.F, om), s.F.F.T), om)


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_random_symplectic_is_symplectic_and_round_trips(n, seed):
    from cqsk_compile.lcs import random_symplectic

    t = random_symplectic(n, np.random.default_rng(seed))
    assert t.is_symplectic()
    assert tableau_of(synthesize(t)) == t
