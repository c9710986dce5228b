"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs on both backends; the table reports the best wall time
per call and the speed-up. Results must agree to 1e-13 relative.
"""

import argparse
import timeit

from mievirial import kernels, oracle
from mievirial.mie import MiePotential


def workloads(mod):
    p = MiePotential(12, 6)

    def quad():
        saved = kernels.gk15_mie
        kernels.gk15_mie = mod.gk15_mie
        try:
            return oracle.quadrature_b(p, 0.5).value
        finally:
            kernels.gk15_mie = saved

    return {
        "series (12,6) T*=0.05": lambda: mod.mie_series_sum(12.0, 6.0, 0.05, 1e-12, 10000, 0)[0],
        "series (7.5,4.2) T*=1": lambda: mod.mie_series_sum(7.5, 4.2, 1.0, 1e-12, 10000, 0)[0],
        "2F4 z=0.5": lambda: mod.pfq_sum((0.25, 0.75), (0.6, 0.8, 1.2, 1.4), 0.5, 1e-15, 10000)[0],
        "1F1 dd z=-20": lambda: mod.pfq_sum_dd((-0.25,), (0.5,), -20.0, 1e-15, 10000)[0],
        "GK15 panel": lambda: mod.gk15_mie(0.0, 1.0, 12.0, 6.0, 2.0, 0)[0],
        "quadrature (12,6) T*=0.5": quad,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the Python fallback is available")
    mods = {name: kernels.load_backend(name) for name in backends}
    loads = {name: workloads(mod) for name, mod in mods.items()}
    print(f"{'workload':28s} " + " ".join(f"{b + ' [us]':>14s}" for b in backends) + "   speed-up")
    for label in loads["python"]:
        times, values = {}, {}
        for name in backends:
            fn = loads[name][label]
            values[name] = fn()
            number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
            times[name] = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number * 1e6
        ref = values["python"]
        for name, val in values.items():
            assert abs(val - ref) <= 1e-13 * abs(ref), (label, name, val, ref)
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        print(f"{label:28s} " + " ".join(f"{times[b]:14.2f}" for b in backends) + f"   {speed:8.1f}x")


if __name__ == "__main__":
    main()
