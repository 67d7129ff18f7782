#!/usr/bin/env python3
"""Benchmark the minor search against seeded random hosts.

Generates random connected hosts, runs the pattern against each, and
reports the answer split, witness verification, and timing percentiles.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time
from dataclasses import dataclass

from sphereminors import (
    SearchBudgetExceeded,
    cycle_map,
    is_sphere_minor,
    path_map,
    random_connected_map,
    verify_model,
)

PATTERNS = {
    "path4": lambda: path_map(4),
    "cycle4": lambda: cycle_map(4),
    "cycle6": lambda: cycle_map(6),
}


@dataclass(frozen=True)
class Config:
    pattern: str
    host_edges: int
    hosts: int
    seed: int


def parse_args() -> Config:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pattern", choices=sorted(PATTERNS), default="path4")
    parser.add_argument("--host-edges", type=int, default=25)
    parser.add_argument("--hosts", type=int, default=100)
    parser.add_argument("--seed", type=int, default=20260822)
    args = parser.parse_args()
    return Config(
        pattern=args.pattern,
        host_edges=args.host_edges,
        hosts=args.hosts,
        seed=args.seed,
    )


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    pattern = PATTERNS[cfg.pattern]()
    hosts = [random_connected_map(cfg.host_edges, rng) for _ in range(cfg.hosts)]
    print(
        f"pattern {cfg.pattern} ({pattern.edge_count} edges) against "
        f"{cfg.hosts} random hosts with {cfg.host_edges} edges, seed {cfg.seed}"
    )

    times = []
    yes = no = budget = bad_witness = 0
    for host in hosts:
        t0 = time.perf_counter()
        try:
            answer = is_sphere_minor(pattern, host)
        except SearchBudgetExceeded:
            budget += 1
            times.append(time.perf_counter() - t0)
            continue
        times.append(time.perf_counter() - t0)
        if answer.result:
            yes += 1
            if not verify_model(pattern, answer.witness):
                bad_witness += 1
        else:
            no += 1

    times.sort()
    print(f"yes={yes} no={no} budget-errors={budget} bad-witnesses={bad_witness}")
    print(
        f"total {sum(times):.2f}s  median {statistics.median(times) * 1000:.1f}ms  "
        f"p90 {times[int(0.9 * (len(times) - 1))] * 1000:.1f}ms  "
        f"max {times[-1] * 1000:.1f}ms"
    )
    if budget or bad_witness:
        raise SystemExit(1)


if __name__ == "__main__":
    main(parse_args())
