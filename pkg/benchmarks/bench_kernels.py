"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Tracking: certify every bundled monodromy model (each certificate tracks
every loop twice, once at half step).  Enumeration: the raw depth-first
count search for a few search boxes, without the Python post-processing.
"""
from __future__ import annotations

import argparse
import statistics
import time

from agcover import kernels
from agcover.feasibility import EnumerationQuery, _slot_caps, _slots, _weights
from agcover.monodromy import TrackingParams, certify, make_model
from agcover.profile import delta_invariant

MODELS = [("s3", n) for n in range(1, 5)] + [("s2pair", k) for k in range(1, 5)] + [("smooth2", None)]


def bench(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def tracking_job(backend: str, params: TrackingParams):
    def run():
        for kind, index in MODELS:
            cert = certify(make_model(kind, index), params, backend)
            assert cert.ok
    return run


def enumeration_job(backend: str, q: EnumerationQuery):
    slots = _slots(q.k_max)
    caps = _slot_caps(q, slots)
    cusps, nodes = _weights(slots)
    deltas = [delta_invariant(c) for c in slots]
    k = kernels.get(backend)

    def run():
        found, visited, exceeded = k.enumerate_counts(
            2 * q.d**2, 2 * q.d * (2 * q.d - 1), q.delta_budget, deltas, cusps, nodes, caps, q.node_limit
        )
        assert not exceeded
        run.result = (len(found), visited)
    return run


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is timed")

    cases = [
        ("tracking, 9 models, default steps", lambda b: tracking_job(b, TrackingParams())),
        ("tracking, 9 models, max_step=0.005", lambda b: tracking_job(b, TrackingParams(max_step=0.005))),
    ]
    for d, k_max in [(6, 2), (7, 2), (10, 1)]:
        q = EnumerationQuery(d, None, k_max, node_limit=10**9)
        cases.append((f"enumeration d={d} k_max={k_max}", lambda b, q=q: enumeration_job(b, q)))

    header = f"{'case':40s}" + "".join(f"{b:>12s}" for b in backends) + ("   speedup" if len(backends) > 1 else "")
    print(header)
    print("-" * len(header))
    for name, make in cases:
        times, extra = [], ""
        for b in backends:
            job = make(b)
            times.append(bench(job, args.repeat))
            if hasattr(job, "result"):
                extra = f"   ({job.result[0]} vectors, {job.result[1]} nodes)"
        row = f"{name:40s}" + "".join(f"{t:11.4f}s" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:9.1f}x"
        print(row + extra)


if __name__ == "__main__":
    main()
