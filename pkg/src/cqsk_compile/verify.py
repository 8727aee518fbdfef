"""Check logical Pauli constraints and stabilizer preservation of a candidate."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .circuit import Circuit
from .code import CodeInstance
from .kernel import HadamardPlacement, LogicalAction, logical_action
from .pauli import PauliOperator, mul, reduce_mod_span, tableau_of

EXACT = "exact"
UP_TO_STABILIZER = "up_to_stabilizer"
SIGN_FLIP = "sign_flip"
FAIL = "fail"

_FACTOR_NAMES = {(0, 0): "I", (1, 0): "X[n]", (0, 1): "Z[n]", (1, 1): "X[n]Z[n]"}


class VerificationError(ValueError):
    pass


@dataclass
class ConstraintRecord:
    constraint: str
    status: str
    stabilizer_factor: str | None
    sign: int | None
    image: str
    target: str | None = None

    @property
    def ok(self) -> bool:
        return self.status in (EXACT, UP_TO_STABILIZER)


@dataclass
class VerificationReport:
    k: int
    ih: list[int]
    logical: list[ConstraintRecord] = field(default_factory=list)
    stabilizer: list[ConstraintRecord] = field(default_factory=list)

    @property
    def logical_ok(self) -> bool:
        return all(r.ok for r in self.logical)

    @property
    def stabilizer_ok(self) -> bool:
        # stabilizer images may come back with sign -1
        return all(r.status != FAIL for r in self.stabilizer)

    @property
    def passed(self) -> bool:
        return self.logical_ok and self.stabilizer_ok

    def failures(self) -> list[ConstraintRecord]:
        bad = [r for r in self.logical if not r.ok]
        return bad + [r for r in self.stabilizer if r.status == FAIL]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "ih": self.ih,
            "passed": self.passed,
            "logical_ok": self.logical_ok,
            "stabilizer_ok": self.stabilizer_ok,
            "logical": [asdict(r) for r in self.logical],
            "stabilizer": [asdict(r) for r in self.stabilizer],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _classify(
    name: str, image: PauliOperator, target: PauliOperator, stabs
) -> ConstraintRecord:
    diff, parity = mul(image, target)
    if parity:
        return ConstraintRecord(name, FAIL, None, None, str(image), str(target))
    in_span, comb, sign = reduce_mod_span(diff, stabs)
    if not in_span:
        return ConstraintRecord(name, FAIL, None, None, str(image), str(target))
    factor = _FACTOR_NAMES[tuple(int(c) for c in comb)]
    if sign < 0:
        status = SIGN_FLIP
    else:
        status = EXACT if factor == "I" else UP_TO_STABILIZER
    return ConstraintRecord(name, status, factor, sign, str(image), str(target))


def _check_width(candidate: Circuit, code: CodeInstance) -> None:
    if candidate.n != code.n:
        raise VerificationError(
            f"candidate has {candidate.n} wires, code needs n = k + 2 = {code.n}"
        )


def check_logical_constraints(
    candidate: Circuit,
    p: HadamardPlacement,
    action: LogicalAction | None = None,
) -> list[ConstraintRecord]:
    code = CodeInstance(p.k)
    _check_width(candidate, code)
    action = action or logical_action(p)
    tab = tableau_of(candidate)
    stabs = code.stabilizers
    records = []
    for name, source, image in action.generators():
        got = tab.image(code.embed(source))
        want = code.embed(image)
        records.append(_classify(name, got, want, stabs))
    return records


def check_stabilizer_preservation(candidate: Circuit) -> list[ConstraintRecord]:
    n = candidate.n
    if n % 2:
        raise VerificationError(f"stabilizer check needs even width, got {n}")
    code = CodeInstance(n - 2)
    tab = tableau_of(candidate)
    records = []
    for name, s in zip(("X[n]", "Z[n]"), code.stabilizers):
        got = tab.image(s)
        in_span, comb, sign = reduce_mod_span(got, code.stabilizers)
        if not in_span:
            records.append(ConstraintRecord(name, FAIL, None, None, str(got)))
            continue
        factor = _FACTOR_NAMES[tuple(int(c) for c in comb)]
        if sign < 0:
            status = SIGN_FLIP
        else:
            status = EXACT if factor == name else UP_TO_STABILIZER
        records.append(ConstraintRecord(name, status, factor, sign, str(got)))
    return records


def verify(
    candidate: Circuit, p: HadamardPlacement, action: LogicalAction | None = None
) -> VerificationReport:
    return VerificationReport(
        k=p.k,
        ih=sorted(p.ih),
        logical=check_logical_constraints(candidate, p, action),
        stabilizer=check_stabilizer_preservation(candidate),
    )
