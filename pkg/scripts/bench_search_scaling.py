#!/usr/bin/env python3
"""Benchmark: search wall time as the ED text grows.

Generates random ED texts of increasing total size, runs the fast
segment-by-segment engine (and optionally the quadratic reference
oracle) on each, and writes one CSV row per (size, algorithm) pair.

Usage:
    python3 scripts/bench_search_scaling.py --out results/search_scaling.csv
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from edsm import EDString, Pattern, Segment, search
from edsm.oracles import BudgetExceededError, brute_edsm


@dataclass(frozen=True)
class SweepConfig:
    pattern_length: int = 64
    sizes: tuple[int, ...] = (1_000, 3_000, 10_000, 30_000, 100_000, 300_000)
    algos: tuple[str, ...] = ("ap-fast", "naive-oracle")
    max_alts: int = 4
    max_alt_len: int = 12
    eps_prob: float = 0.1
    alphabet: str = "ab"
    seed: int = 0
    repeats: int = 3


@dataclass
class Row:
    m: int
    n: int
    size: int
    algo: str
    seconds: str
    matches: int | str = ""

    def as_list(self) -> list:
        return [self.m, self.n, self.size, self.algo, self.seconds, self.matches]


def random_text(rng: random.Random, target_size: int, cfg: SweepConfig) -> EDString:
    segs, total = [], 0
    while total < target_size:
        alts = set()
        if rng.random() < cfg.eps_prob:
            alts.add("")
        for _ in range(rng.randint(1, cfg.max_alts)):
            length = rng.randint(1, cfg.max_alt_len)
            alts.add("".join(rng.choice(cfg.alphabet) for _ in range(length)))
        seg = Segment(frozenset(alts))
        segs.append(seg)
        total += seg.size
    return EDString(tuple(segs))


def run(cfg: SweepConfig, out_path: Path) -> None:
    rows: list[Row] = []
    for size in cfg.sizes:
        rng = random.Random(cfg.seed * 1_000_003 + size)
        pattern = Pattern(
            "".join(rng.choice(cfg.alphabet) for _ in range(cfg.pattern_length))
        )
        text = random_text(rng, size, cfg)
        for algo in cfg.algos:
            best, matches = None, "?"
            for _ in range(cfg.repeats):
                start = time.perf_counter()
                try:
                    if algo == "ap-fast":
                        matches = len(search(pattern, text).positions)
                    else:
                        matches = len(brute_edsm(pattern, text, window_cap=text.n))
                except BudgetExceededError:
                    best = None
                    break
                elapsed = time.perf_counter() - start
                best = elapsed if best is None or elapsed < best else best
            seconds = f"{best:.6f}" if best is not None else "skipped"
            rows.append(Row(pattern.m, text.n, text.N, algo, seconds, matches))
            print(f"N={text.N:>8}  n={text.n:>6}  {algo:<13} {seconds:>10}s"
                  f"  matches={matches}")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "n", "N", "algo", "seconds", "matches"])
        writer.writerows(r.as_list() for r in rows)
    print(f"wrote {out_path}")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results/search_scaling.csv"))
    ap.add_argument("--sizes", type=str, default=None,
                    help="comma-separated total text sizes")
    ap.add_argument("--m", type=int, default=SweepConfig.pattern_length)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-oracle", action="store_true",
                    help="benchmark only the fast engine")
    args = ap.parse_args(argv)
    cfg = SweepConfig(
        pattern_length=args.m,
        sizes=tuple(int(s) for s in args.sizes.split(",")) if args.sizes
        else SweepConfig.sizes,
        algos=("ap-fast",) if args.skip_oracle else SweepConfig.algos,
        seed=args.seed,
    )
    run(cfg, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
