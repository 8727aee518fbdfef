"""Pick the cheapest closed-form strategy for a given Hadamard count."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from .kernel import HadamardPlacement
from .strategies import CompilationResult, StrategyId, emit, two_qubit_formula

log = logging.getLogger(__name__)

RULE_MIN_K = 11  # the threshold rule is only used above k = 10
_TIE_ORDER = (StrategyId.LOW, StrategyId.MID, StrategyId.HIGH)


class Mode(str, enum.Enum):
    RULE = "rule"
    EMPIRICAL = "empirical"
    AUTO = "auto"


@dataclass(frozen=True)
class SelectionPolicy:
    """``auto`` uses the rule for k > 10 and the empirical argmin otherwise."""

    mode: Mode = Mode.AUTO
    low_fraction: float = 0.25
    high_fraction: float = 0.75

    @classmethod
    def parse(cls, text: str) -> SelectionPolicy:
        try:
            return cls(Mode(text.lower()))
        except ValueError:
            raise ValueError(f"unknown policy {text!r}; use rule, empirical or auto") from None

    def resolve(self, k: int) -> Mode:
        if self.mode is Mode.AUTO:
            return Mode.RULE if k >= RULE_MIN_K else Mode.EMPIRICAL
        if self.mode is Mode.RULE and k < RULE_MIN_K:
            log.warning("threshold rule is not defined for k=%d; using empirical selection", k)
            return Mode.EMPIRICAL
        return self.mode


def _check(k: int, h: int) -> None:
    if k < 2 or k % 2:
        raise ValueError(f"k must be even, got {k}")
    if not 0 <= h <= k:
        raise ValueError(f"h must lie in 0..{k}, got {h}")


def rule_strategy(k: int, h: int, policy: SelectionPolicy = SelectionPolicy()) -> StrategyId:
    _check(k, h)
    if h == 0:
        return StrategyId.LOW
    if h == k:
        return StrategyId.HIGH
    if h < policy.low_fraction * k:
        return StrategyId.LOW
    if h > policy.high_fraction * k:
        return StrategyId.HIGH
    return StrategyId.MID


def empirical_strategy(k: int, h: int) -> StrategyId:
    """Fewest two-qubit gates among the emitted circuits; ties go Low < Mid < High.

    Counts do not depend on where the Hadamards sit, so any placement of size
    ``h`` gives the same answer.
    """
    _check(k, h)
    p = HadamardPlacement(k, range(1, h + 1))
    counts = {s: emit(s, p).two_qubit_count for s in _TIE_ORDER}
    return min(_TIE_ORDER, key=lambda s: (counts[s], _TIE_ORDER.index(s)))


def select_strategy(k: int, h: int, policy: SelectionPolicy = SelectionPolicy()) -> StrategyId:
    mode = policy.resolve(k)
    if mode is Mode.RULE:
        sid = rule_strategy(k, h, policy)
        best = min(_TIE_ORDER, key=lambda s: (two_qubit_formula(s, k, h), _TIE_ORDER.index(s)))
        if two_qubit_formula(sid, k, h) > two_qubit_formula(best, k, h):
            log.info("rule picks %s at k=%d h=%d, argmin is %s", sid.value, k, h, best.value)
        return sid
    return empirical_strategy(k, h)


def compile_pbs(p: HadamardPlacement, policy: SelectionPolicy = SelectionPolicy(), order: str = "scheduled") -> CompilationResult:
    return emit(select_strategy(p.k, p.h, policy), p, order)
