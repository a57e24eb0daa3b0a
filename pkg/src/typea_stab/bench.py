"""Micro-benchmarks for the hot paths. Report-only; nothing here gates a build."""

from __future__ import annotations

import hashlib
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .config import ModelDef
from .dynamics import net_acceleration, rk4_integrate
from .machine import electrical_torque, thevenin_reduce
from .roa import classify_grid


@dataclass(frozen=True)
class BenchResult:
    name: str
    iterations: int
    ns_per_op: float
    throughput: float  # ops/s, or grid nodes/s for grid benchmarks


def _median_seconds(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def bench_torque(model: ModelDef, repeats=10, calls=10_000):
    m = model.machine
    th = thevenin_reduce(m)

    def run():
        for k in range(calls):
            electrical_torque(th, m.r_r, m.r_mult, 0.02 + 1e-7 * k)

    per_op = _median_seconds(run, repeats) / calls
    return BenchResult("electrical_torque", repeats * calls, per_op * 1e9, 1.0 / per_op)


def bench_grid(model: ModelDef, n=500, repeats=10, threads=1):
    per_grid = _median_seconds(
        lambda: classify_grid(model, mesh=(n, n), threads=threads), repeats
    )
    nodes = n * n
    return BenchResult(f"classify_grid_{n}x{n}_t{threads}", repeats, per_grid * 1e9 / nodes, nodes / per_grid)


def bench_rk4(model: ModelDef, steps=100_000, repeats=10, v_w=1.0):
    def f(y):
        return net_acceleration(model, v_w, y)

    per_run = _median_seconds(lambda: rk4_integrate(f, 0.001, 1e-3, steps), repeats)
    return BenchResult("rk4_steps", repeats * steps, per_run * 1e9 / steps, steps / per_run)


def bench_suite(model: ModelDef, repeats=10, grid=500, steps=100_000, calls=10_000, threads=1):
    return [
        bench_torque(model, repeats, calls),
        bench_grid(model, grid, repeats, threads),
        bench_rk4(model, steps, repeats),
    ]


def grid_scaling(model: ModelDef, n=500, repeats=3):
    """Time ratio of an ``n x n`` grid to an ``n/2 x n/2`` one; about 4 for O(cells) cost."""
    big = _median_seconds(lambda: classify_grid(model, mesh=(n, n), threads=1), repeats)
    small = _median_seconds(lambda: classify_grid(model, mesh=(n // 2, n // 2), threads=1), repeats)
    return big / small


def thread_speedup(model: ModelDef, n=500, workers=4, repeats=3):
    one = _median_seconds(lambda: classify_grid(model, mesh=(n, n), threads=1), repeats)
    many = _median_seconds(lambda: classify_grid(model, mesh=(n, n), threads=workers), repeats)
    return one / many


def probe_checksum(model: ModelDef, mesh=(40, 30), threads=1) -> str:
    """Hash of a small grid map; must not change with benchmarking or thread count."""
    g = classify_grid(model, mesh=mesh, threads=threads)
    h = hashlib.sha256()
    for arr in (g.s_axis, g.v_axis, g.w_value, g.w_sign, g.in_basin):
        h.update(np.ascontiguousarray(arr).tobytes())
    return h.hexdigest()
