#!/usr/bin/env python3
"""Cross-check the two diagram-order deciders on an exhaustive corpus.

For every ordered pair of link diagrams with at most ``--max-crossings``
crossings, compares the Tait-minor decider against the move-search
decider and reports disagreements (expected: none) with per-decider
timings.
"""

from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass

from sphereminors import (
    MODES,
    REFLECTIVE,
    diagram_leq,
    diagram_leq_bruteforce,
    enumerate_diagrams,
    zero_crossing_diagram,
)


@dataclass(frozen=True)
class Config:
    max_crossings: int
    mode: str


def parse_args() -> Config:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-crossings", type=int, default=3)
    parser.add_argument("--mode", choices=sorted(MODES), default=REFLECTIVE)
    args = parser.parse_args()
    return Config(max_crossings=args.max_crossings, mode=args.mode)


def main(cfg: Config) -> None:
    corpus = [zero_crossing_diagram()]
    for n in range(1, cfg.max_crossings + 1):
        corpus.extend(enumerate_diagrams(n))
    print(f"{len(corpus)} diagrams, {len(corpus) ** 2} ordered pairs, mode={cfg.mode}")

    disagreements = []
    time_fast = 0.0
    time_slow = 0.0
    positives = 0
    for b, a in itertools.product(corpus, corpus):
        t0 = time.perf_counter()
        left = diagram_leq(a, b, cfg.mode)
        t1 = time.perf_counter()
        right = diagram_leq_bruteforce(a, b, cfg.mode)
        t2 = time.perf_counter()
        time_fast += t1 - t0
        time_slow += t2 - t1
        positives += left
        if left != right:
            disagreements.append((a, b, left, right))

    print(f"positives: {positives}")
    print(f"tait-minor decider: {time_fast:.1f}s   move search: {time_slow:.1f}s")
    print(f"disagreements: {len(disagreements)}")
    for a, b, left, right in disagreements[:10]:
        print(f"  {a!r} vs {b!r}: tait={left} search={right}")
    if disagreements:
        raise SystemExit(1)


if __name__ == "__main__":
    main(parse_args())
