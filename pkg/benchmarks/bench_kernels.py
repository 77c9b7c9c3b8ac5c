"""Compare the compiled and pure-Python kernels on the workloads that use them.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from lattcert import kernels
from lattcert.constructions.splitting import primes_up_to
from lattcert.exact import parse_poly
from lattcert.exact.roots import reduce_poly
from lattcert.matrix import companion


def density_sweep():
    # every prime to 10^4 against the cubic: the splitting-density workload
    f = parse_poly("t^3-5t^2+6t-1")
    count = 0
    for p in primes_up_to(10**4):
        if len(kernels.roots_mod_p(reduce_poly(f, p, p), p)) == 3:
            count += 1
    return count


def unit_box():
    # determinant search behind unit_search(M, 13, 1, 5)
    M = companion(parse_poly("t^3-5t^2+6t-1"))
    powers = [M**i for i in range(3)]
    mats = [[int(x) for r in P.rows for x in r] for P in powers]
    return len(kernels.det_box_search(mats, 3, 5, 13**3))


def timed(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends available: {', '.join(backends)}")
    for name, fn in (("roots mod p, primes <= 1e4", density_sweep), ("det box search, B = 5", unit_box)):
        times = {}
        results = set()
        for b in backends:
            old = kernels.use_backend(b)
            try:
                times[b], res = timed(fn, args.repeat)
            finally:
                kernels.use_backend(old)
            results.add(res)
        assert len(results) == 1, f"backends disagree on {name}: {results}"
        line = "  ".join(f"{b} {t * 1000:9.1f} ms" for b, t in times.items())
        if len(times) == 2:
            line += f"  speedup {times['python'] / times['cython']:.1f}x"
        print(f"{name:30s} {line}  (result {results.pop()})")


if __name__ == "__main__":
    main()
