"""Acceptance and success rates of the mid baseline versus PBS at one noise level."""

import argparse
import sys
from dataclasses import dataclass

from cqsk_compile.cli import main as cli_main
from cqsk_compile.noise import combined_halfwidth
from cqsk_compile.tables import read_csv


@dataclass
class Config:
    k: int = 20
    p: float = 0.01
    shots: int = 100_000
    seed: int = 7
    workers: int = 4
    out: str = "noise_k20.csv"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    code = cli_main([
        "simulate", "--k", str(cfg.k), "--p1", str(cfg.p), "--p2", str(cfg.p),
        "--shots", str(cfg.shots), "--seed", str(cfg.seed), "--workers", str(cfg.workers),
        "--out", cfg.out,
    ])
    if code:
        sys.exit(code)
    rows = read_csv(open(cfg.out).read())
    by_h: dict[int, dict] = {}
    for r in rows:
        by_h.setdefault(int(r["h"]), {})["sas" if r["strategy"] == "sas" else "pbs"] = r
    print(f"{'h':>3} {'sas p_succ':>11} {'pbs p_succ':>11} {'gap/ci':>8}  pbs strategy")
    for h, pair in sorted(by_h.items()):
        s, b = pair["sas"], pair["pbs"]
        gap = float(b["p_succ"]) - float(s["p_succ"])
        ci = combined_halfwidth(float(s["p_succ_ci"]), float(b["p_succ_ci"]))
        print(f"{h:>3} {float(s['p_succ']):>11.4f} {float(b['p_succ']):>11.4f} {gap / ci:>8.1f}  {b['strategy']}")


if __name__ == "__main__":
    main()
