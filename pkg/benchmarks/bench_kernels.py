"""Time the enumeration kernels under the compiled and pure-Python backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--threads T]
"""

import argparse
import time

from ldpc_gauge import kernels
from ldpc_gauge.code import distance
from ldpc_gauge.barriers import energy_barrier, locally_minimal_distance
from ldpc_gauge.families import ising, random_expander_code, toric_complex
from ldpc_gauge.gauge import css_from_complex, quantum_distances


def workloads():
    expander = random_expander_code(36, 3, 6, seed=1).code
    ising2 = ising(2, 4)
    toric = css_from_complex(toric_complex(2, 4).complex)
    return [
        ("distance expander n=36", lambda t: distance(expander, threads=t)),
        ("quantum_distances toric L=4", lambda t: quantum_distances(toric, threads=t)),
        ("energy_barrier ising2 L=4 F<=6", lambda t: energy_barrier(ising2.code, 6, threads=t)),
        ("locally_minimal ising2 L=4", lambda t: locally_minimal_distance(ising2.complex, threads=t)),
    ]


def best_of(fn, threads, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(threads)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    backends = kernels.available_backends()
    print(f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in workloads():
        row, results = [], []
        for b in backends:
            with kernels.use_backend(b):
                secs, res = best_of(fn, args.threads, args.repeat)
            row.append(secs)
            results.append(res)
        # both backends must agree before the timing means anything
        assert all(r == results[0] for r in results), name
        line = f"{name:34s}" + "".join(f"{s:11.4f}s" for s in row)
        if len(row) > 1:
            line += f"{row[1] / row[0]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
