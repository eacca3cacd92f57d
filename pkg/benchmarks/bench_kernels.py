"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]
"""

import argparse
import timeit

import numpy as np

from lipext.kernels import available_backends


def cases(scale: float, rng: np.random.Generator):
    n = max(10, int(1000 * scale))
    vx, vy = rng.normal(size=n), rng.normal(size=n)
    pts = np.c_[vx, vy]
    dist = np.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
    yield "lipschitz_scan", f"n={n}", lambda k: k.lipschitz_scan(vx, vy, dist)

    m = max(10, int(200 * scale))
    small = dist[:m, :m].copy()
    yield "triangle_violation", f"n={m}", lambda k: k.triangle_violation(small, 1e-12)

    q, z = max(3, int(50 * scale)), max(10, int(100_000 * scale))
    qx, qy, w = rng.normal(size=q), rng.normal(size=q), rng.uniform(0.5, 2, size=q)
    zx, zy = rng.normal(size=z), rng.normal(size=z)
    yield ("max_weighted_distance", f"{q} points x {z} queries",
           lambda k: k.max_weighted_distance(qx, qy, w, zx, zy))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0)
    args = ap.parse_args()
    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only the fallback will be timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24}{'size':<28}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, size, call in cases(args.scale, rng):
        times = {b: min(timeit.repeat(lambda: call(k), number=1, repeat=args.repeat))
                 for b, k in backends.items()}
        row = f"{name:<24}{size:<28}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
