"""Which of the eight LCS solutions keep their depth across Hadamard placements."""

import argparse

from cqsk_compile.lcs import FRAMES, classify_position_invariant


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--frame", choices=FRAMES, default="canonical")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    for h in range(a.k + 1):
        labels = sorted(classify_position_invariant(a.k, h, seed=a.seed, frame=a.frame))
        print(f"h={h:>2} invariant labels: {labels}")


if __name__ == "__main__":
    main()
