"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--order 1000] [--repeat 3]

Each workload is run under every available backend and the outputs are
checked to be identical before timings are printed.
"""

import argparse
import time

from oddparts import kernels, series
from oddparts.series import named_gf


def _clear():
    series._cache.clear()


def workloads(order):
    pod = named_gf("pod", order)
    qq = series.pochhammer(series.poch(1, 1, 1), order=order)
    small = series.TruncatedSeries.from_coeffs([(-1) ** k * (k % 7) for k in range(order + 1)], order)
    small = small - small[0] + 1
    return {
        "pod product/quotient": lambda: (_clear(), named_gf("pod", order))[1],
        "o3 ratio sum": lambda: (_clear(), named_gf("o3_sum", order))[1],
        "ab2 lhs (sum x product)": lambda: (_clear(), named_gf("ab2_lhs", order))[1],
        "invert (q;q)_inf": lambda: series.series_invert(qq),
        "invert small coeffs": lambda: series.series_invert(small),
        "square big coeffs": lambda: series.series_mul(pod, pod),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=1000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available_backends()
    jobs = workloads(args.order)
    print("order %d, backends: %s" % (args.order, ", ".join(b.BACKEND for b in backends)))
    print("%-26s" % "workload" + "".join("%12s" % b.BACKEND for b in backends) + "     speedup")
    for name, fn in jobs.items():
        times, results = [], []
        for b in backends:
            with kernels.use_backend(b):
                best = float("inf")
                for _ in range(args.repeat):
                    t0 = time.perf_counter()
                    res = fn()
                    best = min(best, time.perf_counter() - t0)
            times.append(best)
            results.append(res)
        assert all(r == results[0] for r in results), "backends disagree on %s" % name
        speed = times[-1] / times[0] if len(times) > 1 else 1.0
        print("%-26s" % name + "".join("%11.4fs" % t for t in times) + "%11.1fx" % speed)


if __name__ == "__main__":
    main()
