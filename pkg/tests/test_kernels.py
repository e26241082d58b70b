"""The compiled kernels and their uncompiled fallbacks must agree exactly;
GM_BACKEND=python swaps the fallbacks in wholesale, so this equivalence is
what keeps the two backends interchangeable."""

import math
import random

import numpy as np

from gaussmoments import _kernels as K
from gaussmoments.factor import ideal_arrays, small_primes
from gaussmoments.lfunc import _ensure_tables, afe_cutoff


def test_symbol_kernel_vs_fallback():
    rng = random.Random(51)
    mods = [(17, 16), (1, 16), (3, 2), (-15, 0), (2017, 2000), (-1, 2)]
    for _ in range(3000):
        ar = rng.randint(-10**6, 10**6)
        ai = rng.randint(-10**6, 10**6)
        nr, ni = rng.choice(mods)
        assert K.quartic_exp(ar, ai, nr, ni) == K.quartic_exp_py(ar, ai, nr, ni)
        assert K.quad_sym(ar, ai, nr, ni) == K.quad_sym_py(ar, ai, nr, ni)


def test_spf_links_vs_fallback():
    X = 500
    re, im, nm = ideal_arrays(X)
    R = math.isqrt(X)
    pos = np.full((R + 1, R + 1), -1, np.int64)
    pos[re, im] = np.arange(re.size, dtype=np.int64)
    spf1, cof1 = K.spf_links(re, im, nm, pos, X)
    spf2, cof2 = K.spf_links_py(re, im, nm, pos, X)
    assert np.array_equal(spf1, spf2) and np.array_equal(cof1, cof2)
    # links reconstruct each composite ideal
    for k in range(re.size):
        if spf1[k] >= 0:
            p, m = spf1[k], cof1[k]
            prod = complex(re[p], im[p]) * complex(re[m], im[m])
            gens = {
                (abs(int(prod.real)), abs(int(prod.imag))),
                (abs(int(prod.imag)), abs(int(prod.real))),
            }
            assert (int(re[k]), int(im[k])) in gens or (
                int(im[k]),
                int(re[k]),
            ) in gens
            assert nm[p] * nm[m] == nm[k]


def test_lvalues_bulk_vs_fallback():
    fam_re = np.array([17, 1, -15], np.int64)
    fam_im = np.array([0, 16, 0], np.int64)
    fam_nm = fam_re * fam_re + fam_im * fam_im
    cut = np.array([afe_cutoff(int(n)) for n in fam_nm], np.int64)
    tab = _ensure_tables(int(cut.max()))
    limits = np.searchsorted(tab["norm"], cut, side="right").astype(np.int64)
    args = (
        tab["norm"],
        tab["inv_sqrt"],
        tab["prime_pos"],
        tab["prime_re"],
        tab["prime_im"],
        tab["spf"],
        tab["cof"],
    )
    v1 = K.lvalues_bulk(fam_re, fam_im, fam_nm, limits, *args)
    v2 = K.lvalues_bulk_py(fam_re, fam_im, fam_nm, limits, *args)
    assert np.array_equal(v1, v2)


def test_smoothed_series_vs_fallback():
    re, im, nm = ideal_arrays(2000)
    deltas = np.array([0.02, 0.01, 0.005], np.float64)
    v1 = K.smoothed_series(17, 0, re, im, nm, deltas)
    v2 = K.smoothed_series_py(17, 0, re, im, nm, deltas)
    assert np.array_equal(v1, v2)


def test_squarefree_mask_vs_fallback():
    rng = random.Random(52)
    cand = []
    for _ in range(500):
        a = rng.randrange(-199, 200, 2)
        b = rng.randrange(-200, 201, 2)
        cand.append((a, b, a * a + b * b))
    re = np.array([c[0] for c in cand], np.int64)
    im = np.array([c[1] for c in cand], np.int64)
    nm = np.array([c[2] for c in cand], np.int64)
    primes = small_primes(300)
    m1 = np.empty(nm.size, np.bool_)
    m2 = np.empty(nm.size, np.bool_)
    K.squarefree_mask(re, im, nm, primes, m1)
    K.squarefree_mask_py(re, im, nm, primes, m2)
    assert np.array_equal(m1, m2)


def test_gauss_buckets_vs_fallback():
    for nr, ni in ((3, 2), (17, 0), (1, 16), (-7, 4)):
        if (nr * nr + ni * ni) % 2 == 0:
            continue
        b1 = K.gauss_buckets(nr, ni)
        b2 = K.gauss_buckets_py(nr, ni)
        assert np.array_equal(b1, b2)
        # a complete residue system has N(n) elements
        # (bucket values sum symbols, so just check the span)
        assert b1.size == nr * nr + ni * ni


def test_lattice_kernels_vs_fallback():
    assert K.zeta2_lattice_sum(5000) == K.zeta2_lattice_sum_py(5000)
    for x in (2, 10, 1234, 99991):
        assert K.residue_class_count(x) == K.residue_class_count_py(x)


def test_sieve_kernels_vs_fallback():
    from gaussmoments.factor import primary_squarefree_arrays

    m_re, m_im = primary_squarefree_arrays(200)
    n_re, n_im = primary_squarefree_arrays(150)
    t1 = K.sieve_symbol_table(m_re, m_im, n_re, n_im)
    t2 = K.sieve_symbol_table_py(m_re, m_im, n_re, n_im)
    assert np.array_equal(t1, t2)
    rng = np.random.default_rng(7)
    cr = rng.standard_normal(n_re.size)
    ci = rng.standard_normal(n_re.size)
    assert K.sieve_quadratic_form(t1, cr, ci) == K.sieve_quadratic_form_py(
        t2, cr, ci
    )
