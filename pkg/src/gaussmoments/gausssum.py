"""Quadratic Gauss sums g(n) over Z[i].

g(n) = sum over x mod n of (x/n) etilde(x/n), where etilde(z) depends only
on Im(z).  The direct evaluator enumerates an exact residue system and is
O(N(n)); the closed form multiplies (-1/pi)_4 N(pi)^(1/2) over the primary
prime factors.  For family members c = 1 mod 16 the closed form collapses
to N(c)^(1/2), i.e. root number +1.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import ResourceLimitError
from .factor import factor
from .zi import GaussianInt, is_one_mod_16, is_primary

DIRECT_NORM_LIMIT = 10**6


def e_tilde(re: Fraction | int, im: Fraction | int) -> complex:
    """etilde(z) = exp(2 pi i Im(z)) for z = re + im*i with exact rational
    parts; the fractional part of Im(z) is reduced exactly before the
    transcendental call."""
    frac = Fraction(im) % 1
    return complex(
        math.cos(2.0 * math.pi * float(frac)),
        math.sin(2.0 * math.pi * float(frac)),
    )


def gauss_sum_direct(n: GaussianInt) -> complex:
    """g(n) by summation over a complete residue system mod n.

    The residues x are bucketed by the exact phase class
    Im(x conj(n)) mod N(n), so the only floating error is in the final
    N(n) root-of-unity multiplies.
    """
    if n.norm() % 2 == 0 or not is_primary(n):
        raise ValueError("gauss_sum_direct requires a primary odd-norm n")
    N = n.norm()
    if N > DIRECT_NORM_LIMIT:
        raise ResourceLimitError(
            f"direct Gauss sum is O(norm); {N} exceeds {DIRECT_NORM_LIMIT}"
        )
    buckets = _kernels.gauss_buckets(n.re, n.im)
    phases = np.exp(2j * np.pi * np.arange(N) / N)
    return complex(np.sum(buckets * phases))


def _closed_form_unit_exponent(n: GaussianInt) -> int:
    """Exponent k with product of (-1/pi)_4 over prime factors = i**k."""
    fac = factor(n)
    if any(e >= 2 for _, e in fac.factors):
        raise ValueError("closed form requires squarefree n")
    k = 0
    for p, _ in fac.factors:
        # (-1/pi)_4 = i**(1 - a) for primary pi = a + bi (supplement squared)
        k += 1 - p.re
    return k % 4


def gauss_sum_closed(n: GaussianInt) -> complex:
    """g(n) for squarefree primary odd-norm n: (-1/n)_4 N(n)^(1/2)."""
    if n.norm() % 2 == 0 or not is_primary(n):
        raise ValueError("gauss_sum_closed requires a primary odd-norm n")
    k = _closed_form_unit_exponent(n)
    unit = (1 + 0j, 1j, -1 + 0j, -1j)[k]
    return unit * math.sqrt(n.norm())


def root_number(c: GaussianInt) -> complex:
    """W(chi_c)/N(c)^(1/2), the normalized functional-equation sign.

    Exactly 1 for every squarefree c = 1 mod 16 (and for c = 1 by the
    g(1) = 1 convention); computed from the exact unit part of the closed
    form, so no floating error is involved.
    """
    if not is_one_mod_16(c):
        raise ValueError("root_number requires c = 1 mod 16")
    if c == GaussianInt(1, 0):
        return 1 + 0j
    k = _closed_form_unit_exponent(c)
    return (1 + 0j, 1j, -1 + 0j, -1j)[k]
