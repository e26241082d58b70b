"""Quick invariant suite behind the `selftest` CLI subcommand.

A trimmed version of the pytest suite: each block prints one PASS/FAIL
line and the runner returns overall success.  Full coverage lives in
tests/; this exists so a deployed install can be smoke-checked in
seconds.
"""

from __future__ import annotations

import math
import random

import numpy as np

from . import _kernels
from .factor import enumerate_family, factor, primes_by_norm
from .gausssum import gauss_sum_closed, gauss_sum_direct
from .lfunc import (
    central_values_bulk,
    dedekind_zeta_2,
    main_term_coefficient,
    v_weight,
    v_weight_oracle,
)
from .symbols import quartic_symbol, quartic_symbol_prime
from .zi import GaussianInt


def _check(name: str, ok: bool) -> bool:
    print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return ok


def run_selftest() -> bool:
    ok = True
    rng = random.Random(20260810)

    # Euclidean division: remainder norm at most half the divisor norm
    good = True
    for _ in range(2000):
        a = GaussianInt(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        b = GaussianInt(rng.randint(-10**3, 10**3), rng.randint(-10**3, 10**3))
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        if a != q * b + r or 2 * r.norm() > b.norm():
            good = False
            break
    ok &= _check("divmod remainder bound on 2000 random pairs", good)

    # fast symbol vs exponentiation oracle on prime moduli
    primes = [p for p, _ in primes_by_norm(3000)]
    good = True
    for _ in range(300):
        pi = rng.choice(primes)
        a = GaussianInt(rng.randint(-500, 500), rng.randint(-500, 500))
        if quartic_symbol(a, pi) is not quartic_symbol_prime(a, pi):
            good = False
            break
    ok &= _check("quartic symbol matches exponentiation oracle (300 pairs)", good)

    # compiled kernel agrees with the exact Python evaluator
    good = True
    for _ in range(300):
        pi = rng.choice(primes)
        a = GaussianInt(rng.randint(-500, 500), rng.randint(-500, 500))
        want = quartic_symbol(a, pi).exponent
        got = int(_kernels.quartic_exp(a.re, a.im, pi.re, pi.im))
        if (want if want is not None else -1) != got:
            good = False
            break
    ok &= _check("int64 symbol kernel agrees with exact evaluator", good)

    # factorization roundtrip
    good = True
    for _ in range(200):
        n = GaussianInt(rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4))
        if n.is_zero():
            continue
        if factor(n).value() != n:
            good = False
            break
    ok &= _check("factorization roundtrip on 200 random elements", good)

    # Gauss sum closed form vs direct summation
    good = True
    for c in enumerate_family(150.0):
        if abs(gauss_sum_direct(c) - gauss_sum_closed(c)) > 1e-6 * math.sqrt(
            c.norm()
        ):
            good = False
            break
    ok &= _check("Gauss sum direct = closed on a small family window", good)

    # weight closed form vs contour oracle
    good = all(
        abs(v_weight(x) - v_weight_oracle(x).real) < 1e-8
        for x in (1e-3, 0.1, 1.0, 5.0, 20.0)
    )
    ok &= _check("erfc weight matches Mellin-Barnes oracle (5 points)", good)

    # constants: dual zeta routes and the coefficient assembly identity
    try:
        dedekind_zeta_2()
        main_term_coefficient()
        ok &= _check("zeta routes and coefficient assembly identity", True)
    except ArithmeticError:
        ok &= _check("zeta routes and coefficient assembly identity", False)

    # determinism: bulk L-values reproduce one by one
    cs = enumerate_family(300.0)[:10]
    re = np.array([c.re for c in cs], np.int64)
    im = np.array([c.im for c in cs], np.int64)
    nm = np.array([c.norm() for c in cs], np.int64)
    v1, _, _ = central_values_bulk(re, im, nm)
    v2, _, _ = central_values_bulk(re, im, nm)
    ok &= _check("bulk L-values bit-stable across calls", bool(np.all(v1 == v2)))

    print("selftest:", "OK" if ok else "FAILED")
    return bool(ok)
