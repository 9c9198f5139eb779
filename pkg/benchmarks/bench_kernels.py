#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python lane.

Two layers:

  * kernel micro-benchmarks call both lanes directly in-process
    (qaltsum._speedups vs qaltsum._kernels_py, plus the shared Kronecker
    path for context);
  * end-to-end benchmarks drive representative whole-stack workloads and,
    with --both, re-run themselves in a QALTSUM_PURE=1 subprocess so the
    import-time lane selection is exercised for real.

Usage: python benchmarks/bench_kernels.py [--both] [--json]
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import time

from qaltsum import _kernels, _kernels_py, cyclo, polycore, qcomb, verify


def _time(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _rand_coeffs(n, bound, seed):
    rng = random.Random(seed)
    cs = [rng.randint(-bound, bound) for _ in range(n)]
    cs[-1] = cs[-1] or 1
    return cs


def kernel_micro() -> dict[str, dict[str, float]]:
    """Direct lane-vs-lane timings; keys are '<case>' -> lane -> seconds."""
    out: dict[str, dict[str, float]] = {}
    for size in (64, 256, 1024):
        a = _rand_coeffs(size, 10**6, 1)
        b = _rand_coeffs(size, 10**6, 2)
        row = {"pure_schoolbook": _time(lambda: _kernels_py.mul_schoolbook(a, b))}
        row["kronecker"] = _time(lambda: polycore._mul_kronecker(a, b))
        if _kernels.HAVE_COMPILED:
            assert _kernels.try_mul_int64(a, b) == _kernels_py.mul_schoolbook(a, b)
            row["compiled"] = _time(lambda: _kernels.try_mul_int64(a, b))
        out[f"mul dense {size}x{size}"] = row

    quot = _rand_coeffs(600, 10**6, 3)
    div = _rand_coeffs(40, 100, 4)
    prod = _kernels_py.mul_schoolbook(quot, div)
    row = {"pure": _time(lambda: _kernels_py.divexact_steps(prod, div))}
    if _kernels.HAVE_COMPILED:
        assert _kernels.try_divexact_int64(prod, div) == _kernels_py.divexact_steps(prod, div)
        row["compiled"] = _time(lambda: _kernels.try_divexact_int64(prod, div))
    out["divexact 639/40 dense"] = row
    return out


def end_to_end() -> dict[str, float]:
    """Whole-stack workloads under the currently selected lane."""

    def fresh_qbinom():
        qcomb._qbinom_product.cache_clear()
        qcomb.qbinom(60, 30)

    def fresh_expand():
        qcomb._qbinom_product.cache_clear()
        cyclo.expand(qcomb.qbinom_factored(60, 30))

    def triple_case():
        qcomb._qbinom_product.cache_clear()
        assert verify.verify_thm2(3, 2, 2, 2, "t2c3").holds

    def qlucas_sweep():
        qcomb._qbinom_mod.cache_clear()
        assert all(
            qcomb.qlucas_check(d, x1, x2, y1, y2)
            for d in range(2, 9)
            for x1 in range(5)
            for y1 in range(5)
            for x2 in range(d)
            for y2 in range(d)
        )

    return {
        "qbinom(60, 30)": _time(fresh_qbinom, repeat=3),
        "expand(factored(60, 30))": _time(fresh_expand, repeat=3),
        "triple-sum modulus check n=3": _time(triple_case, repeat=3),
        "q-Lucas sweep d<=8": _time(qlucas_sweep, repeat=3),
    }


def _print_table(title, rows):
    print(f"\n{title}")
    width = max(len(name) for name in rows)
    for name, cells in rows.items():
        parts = "  ".join(f"{lane}={secs * 1000:9.3f}ms" for lane, secs in cells.items())
        if "compiled" in cells and "pure" in cells:
            parts += f"  speedup={cells['pure'] / cells['compiled']:.1f}x"
        elif "compiled" in cells and "pure_schoolbook" in cells:
            parts += f"  speedup={cells['pure_schoolbook'] / cells['compiled']:.1f}x"
        print(f"  {name:<{width}}  {parts}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--both", action="store_true",
                        help="also run the end-to-end set in a QALTSUM_PURE=1 subprocess")
    parser.add_argument("--json", action="store_true",
                        help="emit end-to-end timings as JSON (used by --both)")
    args = parser.parse_args(argv)

    if args.json:
        print(json.dumps(end_to_end()))
        return 0

    print(f"kernel backend: {_kernels.BACKEND}")
    _print_table("kernel micro-benchmarks", kernel_micro())

    here = end_to_end()
    if args.both and _kernels.HAVE_COMPILED:
        env = dict(os.environ, QALTSUM_PURE="1")
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--json"],
            env=env, capture_output=True, text=True, check=True,
        )
        pure = json.loads(proc.stdout)
        merged = {
            name: {"compiled": here[name], "pure": pure[name]} for name in here
        }
        _print_table("end-to-end (compiled vs pure lane)", merged)
    else:
        _print_table(f"end-to-end ({_kernels.BACKEND} lane)",
                     {k: {_kernels.BACKEND: v} for k, v in here.items()})
    return 0


if __name__ == "__main__":
    sys.exit(main())
