"""Compare the compiled bending kernel against the pure-Python fallback.

Run:  python benchmarks/bench_kernel.py
"""

import time

from softfish import _core_py
from softfish.hyperelastic import DEMO_MATERIAL

try:
    from softfish import _core
except ImportError:
    _core = None

H = 0.015
W = 0.04
C1, C2 = DEMO_MATERIAL.c1, DEMO_MATERIAL.c2
KAPPAS = [(-6.0 + 12.0 * i / 9999) or 1e-9 for i in range(10000)]
LOADS = [(-0.6 + 1.2 * i / 999) for i in range(1000)]


def bench(label, mod):
    t0 = time.perf_counter()
    acc = 0.0
    for k in KAPPAS:
        acc += mod.bend_moment(C1, C2, H, W, k)
        acc += mod.bend_stiffness(C1, C2, H, W, k)
    t_eval = time.perf_counter() - t0

    t0 = time.perf_counter()
    for load in LOADS:
        mod.solve_kappa(C1, C2, H, W, load)
    t_solve = time.perf_counter() - t0

    print(f"{label:8s} moment+stiffness x10k: {t_eval * 1e3:7.2f} ms   "
          f"solve x1k: {t_solve * 1e3:7.2f} ms   (checksum {acc:.6e})")
    return t_eval, t_solve


def main():
    py_eval, py_solve = bench("python", _core_py)
    if _core is None:
        print("compiled kernel not built; nothing to compare")
        return
    cy_eval, cy_solve = bench("cython", _core)
    print(f"speedup: eval x{py_eval / cy_eval:.1f}, "
          f"solve x{py_solve / cy_solve:.1f}")


if __name__ == "__main__":
    main()
