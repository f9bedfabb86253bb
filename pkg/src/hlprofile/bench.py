"""Timing harness for the word-problem decision procedure."""

from __future__ import annotations

import statistics
import time

import numpy as np

from .kgroup import is_trivial
from .oracles import soup_of_length

DEFAULT_LENGTHS = (1000, 2000, 4000, 8000, 16000, 32000)


def bench(lengths=DEFAULT_LENGTHS, trials: int = 3, seed: int = 0) -> dict:
    """Median ``is_trivial`` time on soups stretched to each length, plus the log-log slope."""
    lengths = [int(k) for k in lengths]
    if not lengths or any(k < 1 for k in lengths):
        raise ValueError("lengths must be positive")
    if lengths != sorted(lengths):
        raise ValueError("lengths must be ascending")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows = []
    for i, target in enumerate(lengths):
        times = []
        actual = []
        for trial in range(trials):
            w = soup_of_length(target, seed * 1_000_003 + i * 1009 + trial)
            start = time.perf_counter()
            trivial, _ = is_trivial(w)
            times.append(time.perf_counter() - start)
            if not trivial:
                raise AssertionError(f"soup of length {w.length} decided non-trivial")
            actual.append(w.length)
        rows.append({"target": target, "median_length": statistics.median(actual),
                     "median_seconds": statistics.median(times), "max_seconds": max(times)})
    slope = None
    if len(rows) >= 2:
        x = np.log([r["median_length"] for r in rows])
        y = np.log([max(r["median_seconds"], 1e-9) for r in rows])
        slope = float(np.polyfit(x, y, 1)[0])
    return {"rows": rows, "slope": slope, "trials": trials}
