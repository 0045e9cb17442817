"""Timing comparison of the compiled and numpy kernel backends.

Both backend modules are imported directly, so a single run covers both
regardless of the TAUZAK_KERNELS setting.  Workload shapes mirror actual use:
DFT matrices at |K| = 144, Zak gathers on the 18 x 8 torus grid, and the
plane-model quadrature product (sample grid times a dozen lattice translates)
at 32 samples per axis.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--number N]
"""

import argparse
import timeit

import numpy as np

from tauzak import _core_py
from tauzak.groups import FiniteAbelianGroup, Subgroup
from tauzak.rng import PortableRng

try:
    from tauzak import _core
except ImportError:
    _core = None


def make_workloads():
    rng = PortableRng(2024)
    group = FiniteAbelianGroup((12, 12))
    lat = Subgroup(group, [(6, 0), (0, 3)])
    n = group.order
    values = np.asarray(rng.complex_values(n))
    phases = group.pairing_matrix
    spectrum = np.asarray(rng.complex_values(n))

    rep_rows = group.residue_matrix[lat.transversal_indices]
    off_rows = group.residue_matrix[lat.element_indices]
    sums = (rep_rows[:, None, :] + off_rows[None, :, :]) % group.moduli
    idx = group.indices_of_rows(sums)
    angles = np.real(np.asarray(rng.complex_values(len(off_rows) * lat.order)))
    gather_phases = np.exp(2j * np.pi * angles).reshape(len(off_rows), lat.order)
    table = np.asarray(rng.complex_values(len(rep_rows) * lat.order)
                       ).reshape(len(rep_rows), lat.order)

    grid, translates = 32 * 32, 12
    a = np.asarray(rng.complex_values(grid * translates)).reshape(grid, translates)
    b = np.asarray(rng.complex_values(translates * grid)).reshape(translates, grid)

    return [
        ("dft_direct", lambda k: k.dft_direct(values, phases)),
        ("idft_direct", lambda k: k.idft_direct(spectrum, phases)),
        ("gather_sum", lambda k: k.gather_sum(values, idx)),
        ("gather_phase_sum", lambda k: k.gather_phase_sum(values, idx, gather_phases)),
        ("unzak", lambda k: k.unzak(table, idx, gather_phases, n)),
        ("phase_matmul", lambda k: k.phase_matmul(a, b)),
    ]


def best_time(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=50)
    args = parser.parse_args()

    backends = [("python", _core_py)]
    if _core is not None:
        backends.insert(0, ("compiled", _core))
    else:
        print("compiled backend not importable; timing the fallback only")

    print(f"{'kernel':<18}" + "".join(f"{name:>14}" for name, _ in backends)
          + ("   speedup" if len(backends) == 2 else ""))
    for name, call in make_workloads():
        times = [best_time(lambda k=kernels: call(k), args.repeat, args.number)
                 for _, kernels in backends]
        row = f"{name:<18}" + "".join(f"{t * 1e6:>12.1f}us" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:>9.2f}x"
        print(row)

        results = [np.asarray(call(kernels)) for _, kernels in backends]
        if len(results) == 2:
            gap = float(np.max(np.abs(results[0] - results[1])))
            if gap > 1e-9:
                raise SystemExit(f"{name}: backends disagree by {gap:.3e}")


if __name__ == "__main__":
    main()
