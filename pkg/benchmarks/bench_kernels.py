"""numba vs numpy kernel timings.

    python benchmarks/bench_kernels.py            # towers (3,2), (3,3), (5,2)
    python benchmarks/bench_kernels.py --n 3 --k 2 --repeat 5 --json

Each backend is run once untimed before timing (excludes JIT compilation),
and outputs are checked for equality across backends.
"""
import argparse
import json

from xcorr4.bench import run_bench


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int)
    ap.add_argument("--k", type=int)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    towers = [(args.n, args.k)] if args.n and args.k else [(3, 2), (3, 3), (5, 2)]
    results = [run_bench(n, k, args.repeat) for n, k in towers]
    if args.json:
        print(json.dumps(results, sort_keys=True, indent=1))
        return
    for res in results:
        sec = res["seconds"]
        print(f"(n,k)=({res['n']},{res['k']})  m={res['m']}")
        print(f"  {'kernel':<18}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
        for kern in sec["numpy"]:
            nb = sec.get("numba", {}).get(kern)
            npy = sec["numpy"][kern]
            sp = f"{npy / nb:9.1f}x" if nb else "      n/a"
            nbs = f"{nb:12.5f}" if nb is not None else f"{'-':>12}"
            print(f"  {kern:<18}{nbs}{npy:12.5f}{sp}")


if __name__ == "__main__":
    main()
