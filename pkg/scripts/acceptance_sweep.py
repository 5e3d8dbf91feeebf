"""Sweep random configurations and check the index against the linear scan.

For every configuration (p, distribution, mode, d) a clustered dataset is
generated, an index is built and each query is compared with the exact scan:
no point within r may be missed and no reported point may lie beyond c * r.
Full-expansion and light indexes sharing a seed and k must also agree.

Usage:
    python scripts/acceptance_sweep.py
    python scripts/acceptance_sweep.py --n 2000 --queries 50 --json
"""

import argparse
import itertools
import json
import sys
import time
from pathlib import Path

from certann.analysis import DistributionKind, tau
from certann.config import Config
from certann.index import IndexMode, build, query_many
from certann.validation import check_sandwich, random_workload

P_VALUES = ("1", "1.5", "2", "3", "inf")
DIMENSIONS = (8, 32)
C_OVER_TAU = 1.5
K = 3


def run_configuration(  # noqa: PLR0913
    p: str,
    dist: DistributionKind,
    d: int,
    n: int,
    queries: int,
    seed: int,
) -> dict:
    """Build both index layouts and compare them with the oracle."""
    config = Config.create(
        p=p,
        distribution=dist,
        c=C_OVER_TAU * tau(dist, d, p),
        seed=seed,
    )
    params = config.analysis_params(d)
    dataset, points = random_workload(params, n, queries, seed)
    started = time.perf_counter()
    row: dict = {"p": p, "distribution": str(dist), "d": d}
    results = {}
    for mode in IndexMode:
        index = build(dataset, params, mode, K, seed)
        report = check_sandwich(index, list(points), config.threads)
        row[f"{mode}_failures"] = len(report.failures)
        row[f"{mode}_mean_candidates"] = report.mean_candidates
        results[mode] = [r.id_set for r in query_many(index, points, config.threads)]
    row["modes_agree"] = results[IndexMode.FULL_EXPANSION] == results[IndexMode.LIGHT]
    row["seconds"] = time.perf_counter() - started
    return row


def main():
    """Run the sweep and print one line per configuration."""
    parser = argparse.ArgumentParser(
        description="Compare certann indexes with an exact linear scan",
    )
    parser.add_argument("--n", type=int, default=5000, help="Points per dataset")
    parser.add_argument("--queries", type=int, default=200, help="Queries per run")
    parser.add_argument("--seed", type=int, default=0, help="Base seed")
    parser.add_argument("--json", action="store_true", help="Output results as JSON")
    parser.add_argument("--save", type=str, help="Save JSON results to this file")
    args = parser.parse_args()

    rows = []
    grid = itertools.product(P_VALUES, DistributionKind, DIMENSIONS)
    for number, (p, dist, d) in enumerate(grid):
        row = run_configuration(p, dist, d, args.n, args.queries, args.seed + number)
        rows.append(row)
        if not args.json:
            print(
                f"p={p:<4} {dist!s:<11} d={d:<3} "
                f"full misses={row['full_failures']} "
                f"light misses={row['light_failures']} "
                f"modes agree={row['modes_agree']} ({row['seconds']:.2f}s)",
            )

    failed = [
        row
        for row in rows
        if row["full_failures"] or row["light_failures"] or not row["modes_agree"]
    ]
    if args.json:
        output = json.dumps(rows, indent=2)
        if args.save:
            Path(args.save).write_text(output)
        else:
            print(output)
    else:
        print(f"\n{len(rows) - len(failed)}/{len(rows)} configurations pass")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
