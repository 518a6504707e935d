#!/usr/bin/env python3
"""Regenerate the frozen oracle corpus shipped as ml2v/data/oracle_corpus.jsonl.

The corpus freezes extended-precision values for the point families the test
suite replays: the cross-validation grid over three parameter sets, the
closed-form family alpha = beta = mu = 1, the algebraic-decay family
alpha = beta = 1/2 at x = y = -t, and two dispatcher anchor points.
Running this script is only needed when the corpus layout changes; the
checked-in file is authoritative for tests.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ml2v.core import validate_params  # noqa: E402
from ml2v.oracle import make_record, write_corpus  # noqa: E402

DEFAULT_OUT = (
    Path(__file__).resolve().parents[1] / "src" / "ml2v" / "data" / "oracle_corpus.jsonl"
)

# three parameter sets crossed with a real 5x5 grid plus complex corners
GRID_SETS = ((0.5, 0.8, 1 + 0j), (1.2, 0.9, 1 + 0j), (0.7, 0.7, 0.5 + 0.3j))
AXIS = (-4.0, -2.0, 0.0, 2.0, 4.0)
CORNER_PAIRS = (
    (4 + 4j, -4 + 4j),
    (-4 - 4j, 4 - 4j),
    (4 + 4j, 4 - 4j),
    (-4 + 4j, -4 - 4j),
)

DECAY_T = (10.0, 20.0, 40.0, 80.0)
ANCHORS_08 = ((-5 - 0j, -5 - 0j), (6 + 0j, 7 + 0j))


def closed_form_points() -> list[tuple[complex, complex]]:
    """20 deterministic points with |x|, |y| <= 5 for the closed-form family."""
    rng = np.random.default_rng(7)
    pts: list[tuple[complex, complex]] = [(2 + 0j, 1 + 0j), (1.5 + 0j, 1.5 + 0j)]
    while len(pts) < 20:
        if rng.uniform() < 0.4:
            x = complex(rng.uniform(-4.5, 4.5), 0.0)
            y = complex(rng.uniform(-4.5, 4.5), 0.0)
        else:
            x = complex(rng.uniform(-3.3, 3.3), rng.uniform(-3.3, 3.3))
            y = complex(rng.uniform(-3.3, 3.3), rng.uniform(-3.3, 3.3))
        if abs(x) <= 5 and abs(y) <= 5 and abs(x - y) > 1e-3:
            pts.append((x, y))
    return pts


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=30)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args(argv)

    jobs: list[tuple[complex, complex, float, float, complex]] = []
    for a, b, mu in GRID_SETS:
        for xr in AXIS:
            for yr in AXIS:
                jobs.append((complex(xr), complex(yr), a, b, mu))
        for x, y in CORNER_PAIRS:
            jobs.append((x, y, a, b, mu))
    for x, y in closed_form_points():
        jobs.append((x, y, 1.0, 1.0, 1 + 0j))
    for t in DECAY_T:
        jobs.append((complex(-t), complex(-t), 0.5, 0.5, 1 + 0j))
    for x, y in ANCHORS_08:
        jobs.append((x, y, 0.8, 0.8, 1 + 0j))

    records = []
    t0 = time.time()
    for i, (x, y, a, b, mu) in enumerate(jobs):
        params = validate_params(a, b, mu)
        records.append(make_record(x, y, params, digits=args.digits))
        if (i + 1) % 20 == 0:
            print(f"{i + 1}/{len(jobs)} records, {time.time() - t0:.1f}s", flush=True)

    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_corpus(records, args.out)
    print(f"wrote {len(records)} records to {args.out} in {time.time() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
