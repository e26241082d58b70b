import math
import random

import numpy as np
import pytest

from gaussmoments.errors import ResourceLimitError
from gaussmoments.factor import family_arrays
from gaussmoments.lfunc import (
    SMOOTHING_GAUSSIAN,
    SMOOTHING_ONE,
    WeightSpec,
    afe_cutoff,
    afe_tail_bound,
    central_value,
    central_value_series_oracle,
    central_values_at_cutoff,
    central_values_bulk,
    coefficient_assembly,
    dedekind_zeta_2,
    dedekind_zeta_2_direct,
    euler_product_A,
    main_term_coefficient,
    v_weight,
    v_weight_oracle,
)
from gaussmoments.zi import GaussianInt

G = GaussianInt

# frozen from the Mellin-Barnes oracle (two quadrature resolutions agree)
V_AT_ONE = 0.15729920705028513


def test_v_weight_examples():
    assert abs(v_weight(1e-3) - 1.0) < 0.05
    assert abs(v_weight(1.0) - V_AT_ONE) < 1e-12
    assert v_weight(25.0) < 1e-8
    with pytest.raises(ValueError):
        v_weight(0.0)
    with pytest.raises(ValueError):
        v_weight(-1.0)


def test_v_weight_monotone_and_envelope():
    grid = np.geomspace(1e-4, 40, 120)
    vals = [v_weight(x) for x in grid]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    for x, v in zip(grid, vals):
        assert v <= math.exp(-x) * math.sqrt(1.0 + x) + 1e-300


def test_v_weight_matches_oracle_30pt():
    for xi in np.geomspace(1e-3, 20.0, 30):
        o = v_weight_oracle(float(xi))
        assert abs(o.imag) < 1e-10
        assert abs(v_weight(float(xi)) - o.real) < 1e-8


def test_oracle_small_xi_and_gaussian():
    assert abs(v_weight_oracle(1e-3).real - 1.0) < 0.05
    spec = WeightSpec(SMOOTHING_GAUSSIAN, 0.0)
    v = v_weight_oracle(1.0, spec=spec)
    assert np.isfinite(v.real) and np.isfinite(v.imag)
    assert abs(v) <= 1.05  # same scale as the erfc weight at xi = 1


def test_oracle_decay_shape_bound():
    # |V_t(xi)| <= C (1 + xi/(1+|t|))^-3 with a finite fitted C
    C = 0.0
    for t in (0.0, 1.0, 5.0):
        spec = WeightSpec(SMOOTHING_GAUSSIAN, t)
        for xi in (0.1, 1.0, 5.0, 20.0, 50.0):
            v = abs(v_weight_oracle(xi, spec=spec))
            C = max(C, v * (1.0 + xi / (1.0 + abs(t))) ** 3)
    assert math.isfinite(C)
    assert C < 1e4


def test_weight_spec_validation():
    with pytest.raises(ValueError):
        WeightSpec("nope", 0.0)
    assert WeightSpec(SMOOTHING_ONE, 0.0).t == 0.0


def test_central_value_17():
    lv = central_value(G(17, 0))
    assert lv.cutoff == afe_cutoff(289)
    assert lv.tail_bound < 1e-8 * max(1.0, abs(lv.value))
    # independent conditional-convergence oracle
    oracle = central_value_series_oracle(G(17, 0))
    assert abs(lv.value - oracle) < 1e-4


def test_central_value_domain_errors():
    with pytest.raises(ValueError):
        central_value(G(1, 0))  # excluded: zeta pole
    with pytest.raises(ValueError):
        central_value(G(3, 2))  # not 1 mod 16
    with pytest.raises(ValueError):
        central_value(G(17 * 17, 0))  # not squarefree
    with pytest.raises(ResourceLimitError):
        central_value(G(17, 0), tol=1e-30)


def test_cutoff_doubling_stability_17():
    nm = np.array([289], np.int64)
    re = np.array([17], np.int64)
    im = np.array([0], np.int64)
    x = afe_cutoff(289)
    v1 = central_values_at_cutoff(re, im, nm, np.array([x], np.int64))
    v2 = central_values_at_cutoff(re, im, nm, np.array([2 * x], np.int64))
    assert abs(float(v1[0]) - float(v2[0])) < 1e-8
    assert abs(float(v1[0]) - central_value(G(17, 0)).value) < 1e-15


def test_tail_bound_majorizes_actual_tail():
    # the certified bound must cover the observed cutoff-extension change
    re, im, nm = family_arrays(3e3)
    cut = np.array([afe_cutoff(int(n)) for n in nm], np.int64)
    v1 = central_values_at_cutoff(re, im, nm, cut)
    v2 = central_values_at_cutoff(re, im, nm, 4 * cut)
    for j in range(nm.size):
        bound = afe_tail_bound(int(nm[j]), int(cut[j]))
        assert abs(float(v1[j]) - float(v2[j])) <= bound + 1e-15


def test_bulk_matches_scalar_api():
    re, im, nm = family_arrays(2e3)
    values, cutoffs, tails = central_values_bulk(re, im, nm)
    rng = random.Random(41)
    for k in rng.sample(range(nm.size), 10):
        lv = central_value(G(int(re[k]), int(im[k])))
        assert lv.value == float(values[k])
        assert lv.cutoff == int(cutoffs[k])


def test_lvalue_cache_roundtrip(tmp_path):
    from gaussmoments.lfunc import read_lvalue_cache, write_lvalue_cache

    re, im, nm = family_arrays(1e3)
    values, cutoffs, tails = central_values_bulk(re, im, nm)
    path = tmp_path / "lvalues-y1000.csv"
    write_lvalue_cache(path, re, im, nm, values, cutoffs, tails)
    rows = read_lvalue_cache(path)
    assert len(rows) == nm.size
    for j, lv in enumerate(rows):
        assert lv.c == G(int(re[j]), int(im[j]))
        assert lv.value == float(values[j])  # 17-digit bit-exact roundtrip
        assert lv.cutoff == int(cutoffs[j])
    with pytest.raises(ValueError):
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n")
        read_lvalue_cache(bad)


def test_sweep_writes_cache(tmp_path):
    from gaussmoments.moments import first_moment

    first_moment(1e3, cache_dir=tmp_path)
    files = list(tmp_path.glob("lvalues-*.csv"))
    assert len(files) == 1


def test_dedekind_zeta_2():
    z = dedekind_zeta_2()
    assert 1.0 < z < 2.0
    assert abs(z - 1.5067030099229850) < 1e-12
    # raw truncated ideal sum at norm 1e6 agrees to 1e-5
    raw = dedekind_zeta_2_direct(10**6)
    assert abs(raw - z) < 1e-5


def test_euler_product_A():
    # per-prime factor at norm 5 is 1 - 1/30 = 29/30; two conjugate primes
    # of norm 5 exist below 5, so the partial product is its square
    A5, _ = euler_product_A(5)
    assert abs(A5 - (29.0 / 30.0) ** 2) < 1e-15
    A, tail = euler_product_A(10**6)
    assert 0.0 < A < 1.0
    assert tail < 1e-5
    # monotone decreasing partial products
    values = [euler_product_A(x)[0] for x in (10, 100, 10**4, 10**6)]
    assert all(a > b for a, b in zip(values, values[1:]))
    # frozen reference constant for this repo
    assert abs(A - 0.8996775244222589) < 1e-12


def test_main_term_coefficient():
    K = main_term_coefficient()
    assert K > 0
    A, _ = euler_product_A(10**6)
    closed, residue = coefficient_assembly(A)
    assert K == closed
    assert abs(closed - residue) <= 1e-12 * abs(closed)
    # hand-evaluated form
    by_hand = (2 + math.sqrt(2)) * math.pi**2 * A / (3072 * dedekind_zeta_2())
    assert abs(K - by_hand) < 1e-15 * abs(K)
