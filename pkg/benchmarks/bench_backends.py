#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-Python fallbacks.

The package selects the backend at import time from GM_BACKEND; this
script ignores that and times both variants of each kernel directly
(the `*_py` aliases always point at the uncompiled source).

Run:  python3 benchmarks/bench_backends.py
"""

import math
import time

import numpy as np

from gaussmoments import _kernels as K
from gaussmoments._backend import BACKEND, USE_NUMBA
from gaussmoments.factor import family_arrays, primary_squarefree_arrays
from gaussmoments.lfunc import _ensure_tables, afe_cutoff


def timeit(fn, *args, repeat=3):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def row(name, fast, slow, unit=""):
    speedup = slow / fast if fast > 0 else float("inf")
    print(f"{name:<34} numba {fast * 1e3:10.2f} ms   python "
          f"{slow * 1e3:10.2f} ms   speedup {speedup:8.1f}x {unit}")


def main():
    print(f"active package backend: {BACKEND} (numba available: {USE_NUMBA})")
    print("timing both kernel variants directly:\n")

    # quadratic symbol: 200k evaluations against a fixed modulus
    n_evals = 200_000

    def sym_loop(fn, count):
        s = 0
        for j in range(count):
            s += fn((j * 7919) % 2001 - 1000, (j * 104729) % 1999 - 999, 2017, 2000)
        return s

    K.quad_sym(3, 1, 17, 0)  # warm the JIT outside the timer
    t_fast, s1 = timeit(lambda: sym_loop(K.quad_sym, n_evals))
    t_slow, s2 = timeit(lambda: sym_loop(K.quad_sym_py, n_evals // 20))
    assert sym_loop(K.quad_sym, 1000) == sym_loop(K.quad_sym_py, 1000)
    row("quadratic symbol (200k evals)", t_fast, t_slow * 20, "(python scaled)")

    # bulk central values over a small family
    re, im, nm = family_arrays(2e4)
    cut = np.array([afe_cutoff(int(x)) for x in nm], np.int64)
    tab = _ensure_tables(int(cut.max()))
    limits = np.searchsorted(tab["norm"], cut, side="right").astype(np.int64)
    shared = (tab["norm"], tab["inv_sqrt"], tab["prime_pos"],
              tab["prime_re"], tab["prime_im"], tab["spf"], tab["cof"])
    K.lvalues_bulk(re[:2], im[:2], nm[:2], limits[:2], *shared)  # warm
    t_fast, v1 = timeit(K.lvalues_bulk, re, im, nm, limits, *shared)
    t_slow, v2 = timeit(K.lvalues_bulk_py, re, im, nm, limits, *shared,
                        repeat=1)
    assert np.array_equal(v1, v2)
    row(f"central values ({nm.size} members)", t_fast, t_slow)

    # Gauss-sum residue buckets
    K.gauss_buckets(3, 2)  # warm
    t_fast, b1 = timeit(K.gauss_buckets, 217, 148)
    t_slow, b2 = timeit(K.gauss_buckets_py, 217, 148, repeat=1)
    assert np.array_equal(b1, b2)
    row("gauss buckets (norm ~ 69k)", t_fast, t_slow)

    # zeta lattice sum
    K.zeta2_lattice_sum(100)  # warm
    t_fast, z1 = timeit(K.zeta2_lattice_sum, 2_000_000)
    t_slow, z2 = timeit(K.zeta2_lattice_sum_py, 2_000_000, repeat=1)
    assert z1 == z2
    row("zeta_Qi(2) lattice sum (T=2e6)", t_fast, t_slow)

    # large-sieve symbol table
    m_re, m_im = primary_squarefree_arrays(600)
    K.sieve_symbol_table(m_re[:4], m_im[:4], m_re[:4], m_im[:4])  # warm
    t_fast, t1 = timeit(K.sieve_symbol_table, m_re, m_im, m_re, m_im)
    t_slow, t2 = timeit(K.sieve_symbol_table_py, m_re, m_im, m_re, m_im,
                        repeat=1)
    assert np.array_equal(t1, t2)
    row(f"sieve symbol table ({m_re.size}^2)", t_fast, t_slow)


if __name__ == "__main__":
    main()
