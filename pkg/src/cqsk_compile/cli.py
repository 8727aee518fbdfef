"""Command-line front end: compile, verify, sweep, simulate, enumerate-lcs.

Exit codes: 0 ok, 1 internal error, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import lcs
from .circuit import Circuit, CircuitError, parse, to_dict
from .kernel import HadamardPlacement, PlacementError, sample_placements
from .noise import SIM_COLUMNS, NoiseModel, simulate
from .pbs import SelectionPolicy, compile_pbs
from .strategies import ORDERS, CompilationResult, StrategyId, emit
from .tables import write_csv
from .verify import verify

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3
SIM_SCHEMA = "cqsk-sim/1"

log = logging.getLogger("cqsk_compile")


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    k: int | None = None
    ih: str | None = None
    h: int | None = None
    placement_seed: int = 0
    strategy: str | None = None
    policy: str = "auto"
    p1: float = 0.01
    p2: float = 0.01
    shots: int = 100_000
    seed: int = 0
    out: str | None = None
    fmt: str = "json"

    @classmethod
    def from_args(cls, a: argparse.Namespace) -> ExperimentConfig:
        cfg = cls(
            command=a.command, k=a.k, ih=a.ih, h=a.h, placement_seed=a.placement_seed,
            strategy=a.strategy, policy=a.policy, p1=a.p1, p2=a.p2, shots=a.shots,
            seed=a.seed, out=a.out, fmt=a.format,
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.k is not None and (self.k < 2 or self.k % 2):
            raise UsageError(f"k must be even and at least 2, got {self.k}")
        if self.ih is not None and self.h is not None:
            raise UsageError("give either --ih or --h, not both")
        if self.h is not None and self.k is not None and not 0 <= self.h <= self.k:
            raise UsageError(f"--h must lie in 0..{self.k}")
        if self.strategy is not None:
            try:
                StrategyId.parse(self.strategy)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        for name in ("p1", "p2"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise UsageError(f"--{name} must lie in [0, 1]")
        if self.shots < 1:
            raise UsageError("--shots must be positive")

    def need_k(self) -> int:
        if self.k is None:
            raise UsageError("--k is required")
        return self.k

    def placement(self) -> HadamardPlacement:
        k = self.need_k()
        if self.ih is not None:
            try:
                return HadamardPlacement(k, [int(v) for v in self.ih.split(",") if v.strip()])
            except (ValueError, PlacementError) as exc:
                raise UsageError(f"bad --ih: {exc}") from None
        if self.h is not None:
            return sample_placements(k, self.h, 1, self.placement_seed)[0]
        raise UsageError("give a placement with --ih or a Hadamard count with --h")

    def selection(self) -> SelectionPolicy:
        try:
            return SelectionPolicy.parse(self.policy)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _emit_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _compile(cfg: ExperimentConfig, p: HadamardPlacement, order: str) -> CompilationResult:
    if cfg.strategy is not None:
        return emit(cfg.strategy, p, order)
    return compile_pbs(p, cfg.selection(), order)


def _require_pass(circuit: Circuit, p: HadamardPlacement) -> None:
    report = verify(circuit, p)
    if not report.passed:
        raise VerificationFailed(report)


# ---------------------------------------------------------------------------
# commands


def cmd_compile(cfg: ExperimentConfig, a) -> int:
    p = cfg.placement()
    res = _compile(cfg, p, a.order)
    if not a.no_verify:
        _require_pass(res.circuit, p)
    doc = to_dict(res.circuit)
    doc["placement"] = p.to_text()
    doc["strategy"] = res.strategy.value
    metrics = {"strategy": res.strategy.value, "depth": res.depth, "twoq": res.two_qubit_count}
    if cfg.out:
        _emit_output(json.dumps(doc, separators=(",", ":")), cfg.out)
    else:
        print(json.dumps(doc, separators=(",", ":")))
    print(json.dumps(metrics))
    return EXIT_OK


def cmd_verify(cfg: ExperimentConfig, a) -> int:
    try:
        text = Path(a.circuit).read_text()
        circuit = parse(text)
        stored = json.loads(text).get("placement")
    except OSError as exc:
        raise UsageError(f"cannot read circuit file: {exc}") from None
    except CircuitError as exc:
        raise UsageError(str(exc)) from None
    if cfg.ih is not None or cfg.h is not None:
        cfg_k = cfg if cfg.k is not None else _with(cfg, k=circuit.n - 2)
        p = cfg_k.placement()
    elif stored:
        try:
            p = HadamardPlacement.parse(stored)
        except PlacementError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("give --ih, or a circuit file that records its placement")
    if circuit.n != p.k + 2:
        raise UsageError(f"circuit has {circuit.n} wires, placement needs {p.k + 2}")
    report = verify(circuit, p)
    _emit_output(report.to_json(indent=2), cfg.out)
    for r in report.failures():
        print(f"FAIL {r.constraint}: {r.status} (image {r.image}, target {r.target})", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _with(cfg: ExperimentConfig, **kw) -> ExperimentConfig:
    d = dict(cfg.__dict__)
    d.update(kw)
    return ExperimentConfig(**d)


def _sweep_placements(cfg: ExperimentConfig, a, k: int, h: int):
    if cfg.ih is not None:
        return [cfg.placement()]
    if a.exhaustive:
        return lcs.placements_for(k, h, cap=float("inf"))
    return sample_placements(k, h, a.samples, cfg.placement_seed)


def cmd_sweep(cfg: ExperimentConfig, a) -> int:
    k = cfg.need_k()
    names = [s for s in (a.strategies or "").split(",") if s]
    if not names and not a.lcs_all:
        names = ["low", "mid", "high"]
    try:
        sids = [StrategyId.parse(s) for s in names]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    hs = [cfg.placement().h] if cfg.ih is not None else ([cfg.h] if cfg.h is not None else range(k + 1))
    rows = []
    for h in hs:
        for p in _sweep_placements(cfg, a, k, h):
            for sid in sids:
                res = emit(sid, p, a.order)
                rows.append({"k": k, "h": h, "placement": p.label(), "label": sid.value,
                             "depth": res.depth, "twoq": res.two_qubit_count})
            if a.lcs_all:
                rows.extend(lcs.depth_sweep(k, None, [p], a.frame))
    order = {s.value: i for i, s in enumerate(StrategyId)}
    rows.sort(key=lambda r: (r["h"], r["placement"], (0, order[r["label"]]) if isinstance(r["label"], str) else (1, r["label"])))
    if cfg.fmt == "csv":
        _emit_output(write_csv(rows, lcs.SWEEP_COLUMNS, lcs.SWEEP_SCHEMA), cfg.out)
    else:
        _emit_output(json.dumps(rows, indent=1), cfg.out)
    return EXIT_OK


def _stream_seed(seed: int, h: int, tag: int) -> int:
    return int(np.random.SeedSequence([seed, h, tag]).generate_state(1)[0])


def cmd_simulate(cfg: ExperimentConfig, a) -> int:
    k = cfg.need_k()
    model = NoiseModel(cfg.p1, cfg.p2)
    policy = cfg.selection()
    if cfg.ih is not None or cfg.h is not None:
        placements = [cfg.placement()]
    else:
        placements = [sample_placements(k, h, 1, cfg.placement_seed)[0] for h in range(1, k)]
    rows = []
    for p in placements:
        runs = [("sas", emit(StrategyId.MID, p)), (None, compile_pbs(p, policy))]
        for tag, (name, res) in enumerate(runs):
            if not a.no_verify:
                _require_pass(res.circuit, p)
            s = _stream_seed(cfg.seed, p.h, tag)
            stats = simulate(res.circuit, model, cfg.shots, s, workers=a.workers)
            rows.append({
                "k": k, "h": p.h, "placement": p.label(),
                "strategy": name or f"pbs:{res.strategy.value}",
                "p1": cfg.p1, "p2": cfg.p2, "shots": cfg.shots, "seed": s,
                "p_acc": f"{stats.p_acc:.6f}", "p_acc_ci": f"{stats.p_acc_ci:.6f}",
                "p_succ": f"{stats.p_succ:.6f}", "p_succ_ci": f"{stats.p_succ_ci:.6f}",
                "depth": res.depth, "twoq": res.two_qubit_count,
            })
            log.info("h=%d %s p_acc=%.4f p_succ=%.4f", p.h, rows[-1]["strategy"], stats.p_acc, stats.p_succ)
    rows.sort(key=lambda r: (r["h"], r["placement"], r["strategy"] != "sas"))
    if cfg.fmt == "json":
        _emit_output(json.dumps(rows, indent=1), cfg.out)
    else:
        _emit_output(write_csv(rows, SIM_COLUMNS, SIM_SCHEMA), cfg.out)
    return EXIT_OK


def cmd_enumerate_lcs(cfg: ExperimentConfig, a) -> int:
    p = cfg.placement()
    out = []
    for sol in lcs.enumerate_solutions(lcs.build_constraints(p), frame=a.frame):
        report = verify(sol.circuit, p)
        if not report.passed:
            raise VerificationFailed(report)
        out.append({
            "label": sol.label, "A": sol.A.tolist(), "depth": sol.circuit.depth(),
            "twoq": sol.circuit.two_qubit_count(), "circuit": to_dict(sol.circuit),
        })
    if cfg.fmt == "csv":
        rows = [{"k": p.k, "h": p.h, "placement": p.label(), **o} for o in out]
        _emit_output(write_csv(rows, lcs.SWEEP_COLUMNS, lcs.SWEEP_SCHEMA), cfg.out)
    else:
        _emit_output(json.dumps({"placement": p.to_text(), "solutions": out}), cfg.out)
    return EXIT_OK


COMMANDS = {
    "compile": cmd_compile,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "enumerate-lcs": cmd_enumerate_lcs,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--ih", help="comma list of Hadamard wires, e.g. 1,3")
    common.add_argument("--h", type=int, help="Hadamard count (placement drawn with --placement-seed)")
    common.add_argument("--placement-seed", type=int, default=0)
    common.add_argument("--strategy", help="low, mid or high")
    common.add_argument("--policy", default="auto", help="rule, empirical or auto")
    common.add_argument("--p1", type=float, default=0.01)
    common.add_argument("--p2", type=float, default=0.01)
    common.add_argument("--shots", type=int, default=100_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--order", choices=ORDERS, default="scheduled")
    common.add_argument("--no-verify", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="cqsk", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("compile", parents=[common], help="compile one placement")
    v = sub.add_parser("verify", parents=[common], help="check a circuit file")
    v.add_argument("--circuit", required=True)
    s = sub.add_parser("sweep", parents=[common], help="depth and two-qubit counts over h")
    s.add_argument("--strategies")
    s.add_argument("--lcs-all", action="store_true")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--samples", type=int, default=1)
    s.add_argument("--frame", choices=lcs.FRAMES, default="canonical")
    m = sub.add_parser("simulate", parents=[common], help="noisy acceptance/success rates")
    m.add_argument("--workers", type=int, default=1)
    e = sub.add_parser("enumerate-lcs", parents=[common], help="all 8 solutions for one placement")
    e.add_argument("--frame", choices=lcs.FRAMES, default="canonical")
    return ap


_DEFAULT_FORMAT = {"sweep": "csv", "simulate": "csv"}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if a.format is None:
        a.format = _DEFAULT_FORMAT.get(a.command, "json")
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = ExperimentConfig.from_args(a)
        return COMMANDS[a.command](cfg, a)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as exc:
        print(exc.report.to_json(indent=2))
        for r in exc.report.failures():
            print(f"FAIL {r.constraint}: {r.status}", file=sys.stderr)
        return EXIT_VERIFY
    except Exception as exc:  # noqa: BLE001 - report, never traceback at the user
        log.debug("internal error", exc_info=True)
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
