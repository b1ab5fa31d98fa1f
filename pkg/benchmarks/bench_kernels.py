"""Benchmark the two lattice-sum backends and a catalog sweep on each.

Usage:
    python3 benchmarks/bench_kernels.py [--radii 10,20,40] [--repeat 200]

Times the raw kernels at several truncation radii, cross-checks that both
backends agree to rounding, then times a short identity-catalog sweep under
each backend (the sweep honours HYPERTHETA_BACKEND, so it is re-run in a
subprocess per backend).
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hypertheta.backends import (  # noqa: E402
    HAS_NUMBA,
    lattice_sum_numba,
    lattice_sum_numpy,
)

ARGS = (0.5, 0.0, 0.21 - 0.12j, -0.34 + 0.05j,
        0.3 + 1.1j, -0.2 + 1.4j, 0.15 + 0.25j)


def time_kernel(fn, radius: int, repeat: int) -> tuple[float, complex]:
    value = fn(*ARGS, radius)  # warm-up (and JIT compile for numba)
    started = time.perf_counter()
    for _ in range(repeat):
        value = fn(*ARGS, radius)
    return (time.perf_counter() - started) / repeat, value


def sweep_wall_time(backend: str) -> float:
    """Identity-catalog sweep timed in a fresh process pinned to a backend."""
    script = (
        "import time, hypertheta\n"
        "t0 = time.perf_counter()\n"
        "rows = hypertheta.verify_catalog(n_samples=5, seed=0)\n"
        "assert all(r.passed for r in rows)\n"
        "print(time.perf_counter() - t0)\n")
    proc = subprocess.run(
        [sys.executable, "-c", script], capture_output=True, text=True,
        check=True, env={"HYPERTHETA_BACKEND": backend, "PATH": "/usr/bin:/bin",
                         "PYTHONPATH": str(Path(__file__).resolve().parent.parent / "src")})
    return float(proc.stdout.strip())


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--radii", default="10,20,40",
                        help="comma-separated truncation radii")
    parser.add_argument("--repeat", type=int, default=200,
                        help="kernel repetitions per timing")
    args = parser.parse_args()
    radii = [int(r) for r in args.radii.split(",")]

    print(f"numba available: {HAS_NUMBA}")
    results = {"kernels": [], "sweep": {}}
    for radius in radii:
        t_np, v_np = time_kernel(lattice_sum_numpy, radius, args.repeat)
        line = {"radius": radius, "numpy_s": round(t_np, 8)}
        if HAS_NUMBA:
            t_nb, v_nb = time_kernel(lattice_sum_numba, radius, args.repeat)
            gap = abs(v_np - v_nb) / max(abs(v_np), 1e-30)
            assert gap < 1e-12, f"backends disagree at radius {radius}: {gap}"
            line.update(numba_s=round(t_nb, 8),
                        speedup=round(t_np / t_nb, 2),
                        agreement=f"{gap:.1e}")
        results["kernels"].append(line)
        print(line)

    for backend in (("numba",) if HAS_NUMBA else ()) + ("numpy",):
        wall = sweep_wall_time(backend)
        results["sweep"][backend] = round(wall, 3)
        print(f"catalog sweep (200 identities x 5 samples, {backend}): "
              f"{wall:.2f} s")
    out = Path(__file__).with_name("results.json")
    out.write_text(json.dumps(results, indent=1) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
