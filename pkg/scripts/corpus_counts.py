#!/usr/bin/env python3
"""Tabulate the enumerated corpora: maps, projections, and diagrams.

Prints one row per size with cumulative and exact counts, plus wall
time, so regressions in the enumerators (or their dedup) show up as a
changed table.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from sphereminors import (
    enumerate_connected_maps,
    enumerate_diagrams,
    enumerate_projections,
)


@dataclass(frozen=True)
class Config:
    max_edges: int
    max_crossings: int


def parse_args() -> Config:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-edges", type=int, default=5)
    parser.add_argument("--max-crossings", type=int, default=4)
    args = parser.parse_args()
    return Config(max_edges=args.max_edges, max_crossings=args.max_crossings)


def main(cfg: Config) -> None:
    start = time.perf_counter()
    maps = list(enumerate_connected_maps(cfg.max_edges))
    print(f"connected sphere maps with <= {cfg.max_edges} edges: {len(maps)}")
    print("edges  exact  cumulative")
    seen = 0
    for e in range(1, cfg.max_edges + 1):
        exact = sum(1 for m in maps if m.edge_count == e)
        seen += exact
        print(f"{e:>5}  {exact:>5}  {seen:>10}")

    print()
    print("crossings  projections  diagrams")
    for n in range(1, cfg.max_crossings + 1):
        projections = len(enumerate_projections(n))
        diagrams = len(enumerate_diagrams(n))
        print(f"{n:>9}  {projections:>11}  {diagrams:>8}")
    print(f"\ntotal {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main(parse_args())
