"""Two-qubit count and depth of the three strategies and PBS across h."""

import argparse
from dataclasses import dataclass

from cqsk_compile import HadamardPlacement, compile_pbs, emit, two_qubit_formula
from cqsk_compile.kernel import sample_placements


@dataclass
class Config:
    k: int = 20
    samples: int = 3
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    rows = []
    for h in range(cfg.k + 1):
        for p in sample_placements(cfg.k, h, cfg.samples, cfg.seed):
            row = {"h": h, "placement": p.label()}
            for s in ("low", "mid", "high"):
                r = emit(s, p)
                assert r.two_qubit_count == two_qubit_formula(s, cfg.k, h)
                row[s] = (r.two_qubit_count, r.depth)
            pbs = compile_pbs(p)
            row["pbs"] = (pbs.strategy.value, pbs.two_qubit_count, pbs.depth)
            rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=Config.k)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(ap.parse_args()))
    print(f"{'h':>3} {'placement':<22} {'low':>10} {'mid':>10} {'high':>10}  pbs")
    for r in run(cfg):
        cells = " ".join(f"{r[s][0]:>4}/{r[s][1]:<5}" for s in ("low", "mid", "high"))
        name, twoq, depth = r["pbs"]
        print(f"{r['h']:>3} {r['placement']:<22} {cells}  {name} {twoq}/{depth}")


if __name__ == "__main__":
    main()
