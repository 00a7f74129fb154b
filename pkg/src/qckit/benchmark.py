"""Timing comparison of the two weight-enumeration backends.

Runs the exact Gray walk on a few representative codes with the numba kernel
and with the pure-numpy block enumerator, checks that they agree, and prints
a small table.  Usage: python -m qckit.benchmark [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import _kernels
from .gf import field_make
from .lincode import code_from_rows, full_space, min_distance
from .qc import ConstituentAssignment, PairAssignment, SelfrecAssignment, assemble_qc, decompose_ring


def _cases():
    cases = []
    f4 = field_make(2, 2)
    dec = decompose_ring(f4, 7, 3)
    F64 = dec.pair_slots[0][0].cfield
    cp = code_from_rows(F64, 3, [(F64.gen,) * 3])
    qc = assemble_qc(dec, ConstituentAssignment((PairAssignment(cp),),
                                                (SelfrecAssignment(full_space(f4, 3)),)))
    cases.append(("[21,12]_4 QC code (4^12 walk)", qc.lin))
    rng = np.random.default_rng(7)
    f2 = field_make(2, 1)
    cases.append(("random [48,20]_2 (2^20 walk)",
                  code_from_rows(f2, 48, rng.integers(0, 2, size=(20, 48)))))
    f3 = field_make(3, 1)
    cases.append(("random [30,12]_3 (3^12 walk)",
                  code_from_rows(f3, 30, rng.integers(0, 3, size=(12, 30)))))
    return cases


def run(repeats: int = 3) -> None:
    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy backend will run")
    print(f"{'case':<34} {'numba':>10} {'numpy':>10} {'speedup':>9}  d")
    for label, code in _cases():
        times = {}
        d_by_backend = {}
        for backend in ("numba", "numpy"):
            if backend == "numba" and not _kernels.HAVE_NUMBA:
                times[backend] = float("nan")
                continue
            best = float("inf")
            for _ in range(repeats):
                t0 = time.perf_counter()
                rep = min_distance(code, budget=2**28, mode="exact", backend=backend)
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
            d_by_backend[backend] = rep.d_exact
        ds = set(d_by_backend.values())
        assert len(ds) == 1, f"backend disagreement on {label}: {d_by_backend}"
        speed = times["numpy"] / times["numba"] if times.get("numba") else float("nan")
        print(f"{label:<34} {times.get('numba', float('nan')):>9.3f}s {times['numpy']:>9.3f}s "
              f"{speed:>8.1f}x  {ds.pop()}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)
    run(repeats=args.repeats)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
