#!/usr/bin/env python3
"""Compiled vs numpy kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each case runs once per available backend on identical inputs; the outputs
are compared so a speedup is never reported for a wrong answer.
"""
from __future__ import annotations

import argparse
import json
import statistics
import time

import numpy as np

from symdual import kernels
from symdual.seeds import shipped


def _case_enum(code, w):
    g, piv = code.systematic()
    mask = np.ones(code.n, dtype=bool)
    mask[list(piv)] = False
    table = kernels.multiple_table(g[:, mask], code.p)

    def run(backend):
        msg = np.zeros(code.k, dtype=np.int64)
        best, count = kernels.enum_level(table, w, 0, code.k, code.n + 1, msg, backend=backend)
        return best, count
    return run


def _case_gray(code):
    gen = code.gen.data

    def run(backend):
        msg = np.zeros(code.k, dtype=np.int64)
        return kernels.gray_min_weight(gen, code.p, msg, backend=backend)
    return run


def _case_rref(code, reps):
    rng = np.random.default_rng(0)
    orders = [rng.permutation(code.n).astype(np.int64) for _ in range(reps)]

    def run(backend):
        piv = np.zeros(code.k, dtype=np.int64)
        g = np.empty_like(code.gen.data)
        acc = 0
        for order in orders:
            g[:] = code.gen.data
            acc += kernels.rref_inplace(g, order, code.p, code.ctx.inv_table, piv, backend=backend)
            acc += int(g.sum() % 1000003)
        return acc
    return run


CASES = {
    "enum_level a11_32 w=4": lambda: _case_enum(shipped("a11_32"), 4),
    "enum_level a23_40 w=3": lambda: _case_enum(shipped("a23_40"), 3),
    "gray_min_weight gf19_g2": lambda: _case_gray(shipped("gf19_g2")),
    "rref_inplace a19_40 x200": lambda: _case_rref(shipped("a19_40"), 200),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    backends = kernels.available_backends()
    rows = []
    for name, make in CASES.items():
        run = make()
        times, outs = {}, {}
        for b in backends:
            samples = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                outs[b] = run(b)
                samples.append(time.perf_counter() - t0)
            times[b] = statistics.median(samples)
        agree = len({repr(o) for o in outs.values()}) == 1
        row = {"case": name, "agree": agree, **{f"{b}_s": round(t, 5) for b, t in times.items()}}
        if "cython" in times and "python" in times:
            row["speedup"] = round(times["python"] / times["cython"], 1)
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=1))
        return
    head = f"{'case':28} " + " ".join(f"{b + ' [s]':>12}" for b in backends) + "   speedup  agree"
    print(head)
    for r in rows:
        cols = " ".join(f"{r[b + '_s']:12.5f}" for b in backends)
        print(f"{r['case']:28} {cols}   {str(r.get('speedup', '-')):>7}  {r['agree']}")


if __name__ == "__main__":
    main()
