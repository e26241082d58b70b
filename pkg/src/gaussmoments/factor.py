"""Multiplicative structure of Z[i].

Factorization works through the norm: factor N(n) over the rational
integers (trial division, then Brent's rho for what is left), lift each
rational prime to Z[i], and read off exponents.  Enumerators for prime
ideals, general ideals and the c = 1 mod 16 squarefree family live here
too, together with the lattice count used for the circle-problem check.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .zi import GaussianInt, ONE_PLUS_I, primary_normalize

PRIME_CACHE_VERSION = 1


@dataclass(frozen=True)
class GaussianFactorization:
    """n = i**unit_exponent * product(prime**exp), primes pairwise
    non-associate, odd-norm primes primary, 1+i for the even part."""

    unit_exponent: int
    factors: tuple[tuple[GaussianInt, int], ...]

    def value(self) -> GaussianInt:
        out = GaussianInt(1, 0).mul_i(self.unit_exponent)
        for p, e in self.factors:
            out = out * p**e
        return out


@dataclass(frozen=True)
class IdealRep:
    """Canonical generator of a nonzero ideal: re >= 1, im >= 0."""

    gen: GaussianInt

    def __post_init__(self):
        if not (self.gen.re >= 1 and self.gen.im >= 0):
            raise ValueError(f"{self.gen} is not a canonical ideal generator")

    def norm(self) -> int:
        return self.gen.norm()


# ---------------------------------------------------------------------------
# rational integer helpers
# ---------------------------------------------------------------------------

# deterministic Miller-Rabin witness set for n < 2**64
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def small_primes(limit: int) -> np.ndarray:
    """All rational primes <= limit (numpy int64, ascending)."""
    if limit < 2:
        return np.empty(0, np.int64)
    sieve = np.ones(limit + 1, bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite odd n, deterministic parameters."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


_TRIAL_LIMIT = 100_000


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {p: exponent}.

    Trial division over a 6k+-1 wheel up to 1e5, then deterministic
    Miller-Rabin plus Brent's rho for whatever is left.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out: dict[int, int] = {}

    def strip(m: int, p: int) -> int:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        return m

    n = strip(strip(n, 2), 3)
    p = 5
    while p * p <= n and p < _TRIAL_LIMIT:
        n = strip(strip(n, p), p + 2)
        p += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime_int(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.append(d)
        stack.append(m // d)
    return out


def sqrt_minus_one(p: int) -> int:
    """The canonical square root of -1 mod p (p = 1 mod 4).

    Tonelli-Shanks with the smallest quadratic nonresidue as generator;
    of the two roots the smaller is returned, so factorizations are
    reproducible.
    """
    if p % 4 != 1:
        raise ValueError("p must be 1 mod 4")
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    x = pow(z, (p - 1) // 4, p)
    return min(x, p - x)


def prime_above(p: int) -> GaussianInt:
    """A primary Gaussian prime over the split rational prime p = 1 mod 4.

    Runs the Euclid loop on raw integer pairs: the intermediate (p, 0) has
    norm p**2, which may exceed the GaussianInt width limit even though
    the resulting prime (norm p) is comfortably inside it.
    """
    x = sqrt_minus_one(p)
    ar, ai, br, bi = p, 0, x, 1
    while br or bi:
        n = br * br + bi * bi
        ur = ar * br + ai * bi
        ui = ai * br - ar * bi
        qr = -((-(2 * ur - n)) // (2 * n))
        qi = -((-(2 * ui - n)) // (2 * n))
        ar, ai, br, bi = br, bi, ar - (qr * br - qi * bi), ai - (qr * bi + qi * br)
    return primary_normalize(GaussianInt(ar, ai))[1]


# ---------------------------------------------------------------------------
# factorization in Z[i]
# ---------------------------------------------------------------------------


def _exact_div(a: GaussianInt, b: GaussianInt) -> GaussianInt | None:
    """a/b when b | a exactly, else None."""
    n = b.norm()
    ur = a.re * b.re + a.im * b.im
    ui = a.im * b.re - a.re * b.im
    if ur % n or ui % n:
        return None
    return GaussianInt(ur // n, ui // n)


def factor(n: GaussianInt) -> GaussianFactorization:
    """Exact factorization of n != 0 into primary primes (and 1+i)."""
    if n.is_zero():
        raise ValueError("cannot factor 0")
    norm_fac = factor_int(n.norm())
    factors: list[tuple[GaussianInt, int]] = []
    rest = n
    if 2 in norm_fac:
        t = norm_fac.pop(2)
        factors.append((ONE_PLUS_I, t))
        for _ in range(t):
            rest = _exact_div(rest, ONE_PLUS_I)
    for p, e in norm_fac.items():
        if p % 4 == 3:
            q = primary_normalize(GaussianInt(p, 0))[1]
            k = e // 2
            factors.append((q, k))
            for _ in range(k):
                rest = _exact_div(rest, q)
        else:
            pi = primary_normalize(prime_above(p))[1]
            for cand in (pi, primary_normalize(pi.conj())[1]):
                k = 0
                while True:
                    nxt = _exact_div(rest, cand)
                    if nxt is None:
                        break
                    rest = nxt
                    k += 1
                if k:
                    factors.append((cand, k))
    if not rest.is_unit():
        raise AssertionError(f"factorization of {n} left non-unit {rest}")
    s = {1: 0, 1j: 1, -1: 2, -1j: 3}[complex(rest.re, rest.im)]
    factors.sort(key=lambda fe: (fe[0].norm(), fe[0].re, fe[0].im))
    result = GaussianFactorization(s, tuple(factors))
    assert result.value() == n
    return result


def moebius(n: GaussianInt) -> int:
    """Moebius function on odd-norm elements of Z[i]."""
    if n.norm() % 2 == 0:
        raise ValueError("moebius requires odd norm")
    fac = factor(n)
    if any(e >= 2 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def is_squarefree(n: GaussianInt) -> bool:
    if n.is_zero():
        raise ValueError("squarefree test requires n != 0")
    return all(e == 1 for _, e in factor(n).factors)


# ---------------------------------------------------------------------------
# prime ideal enumeration (with the on-disk cache)
# ---------------------------------------------------------------------------


def _generate_primes_by_norm(X: int) -> np.ndarray:
    """(re, im, norm) rows for all odd-norm primary Gaussian primes,
    norm <= X, sorted by (norm, re, im)."""
    rows = []
    for p in small_primes(X):
        p = int(p)
        if p == 2:
            continue
        if p % 4 == 1:
            pi = primary_normalize(prime_above(p))[1]
            pib = primary_normalize(pi.conj())[1]
            rows.append((pi.re, pi.im, p))
            rows.append((pib.re, pib.im, p))
        elif p * p <= X:
            q = primary_normalize(GaussianInt(p, 0))[1]
            rows.append((q.re, q.im, p * p))
    arr = np.array(sorted(rows, key=lambda r: (r[2], r[0], r[1])), np.int64)
    return arr.reshape(-1, 3)


def _prime_cache_path(cache_dir: str | os.PathLike) -> Path:
    return Path(cache_dir) / f"primes-v{PRIME_CACHE_VERSION}.bin"


def primes_by_norm(
    X: int, cache_dir: str | os.PathLike | None = None
) -> list[tuple[GaussianInt, int]]:
    """All odd-norm primary Gaussian primes with norm <= X, by norm.

    Split p = 1 (4) contributes the two non-associate conjugates of norm p,
    inert p = 3 (4) one entry of norm p*p; 1+i is excluded.  When cache_dir
    is given the table is persisted and reused (regenerated when missing,
    version-mismatched, or too small).
    """
    if X < 2:
        raise ValueError("X must be >= 2")
    arr = _primes_array(X, cache_dir)
    return [
        (GaussianInt(int(r), int(i)), int(nm))
        for r, i, nm in arr
    ]


def _primes_array(X: int, cache_dir=None) -> np.ndarray:
    if cache_dir is not None:
        path = _prime_cache_path(cache_dir)
        if path.exists():
            try:
                with np.load(path) as data:
                    if (
                        int(data["version"]) == PRIME_CACHE_VERSION
                        and int(data["X"]) >= X
                    ):
                        table = data["table"]
                        cut = np.searchsorted(table[:, 2], X, side="right")
                        return table[:cut]
            except (OSError, KeyError, ValueError):
                pass  # unreadable or stale: regenerate below
        table = _generate_primes_by_norm(X)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as fh:
            np.savez(
                fh,
                version=np.int64(PRIME_CACHE_VERSION),
                X=np.int64(X),
                table=table,
            )
        return table
    return _generate_primes_by_norm(X)


# ---------------------------------------------------------------------------
# ideal enumeration
# ---------------------------------------------------------------------------


def ideal_arrays(X: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(re, im, norm) int64 arrays of all canonical ideal generators with
    norm <= X, sorted by (norm, re, im)."""
    if X < 1:
        raise ValueError("X must be >= 1")
    R = math.isqrt(X)
    res = []
    ims = []
    for a in range(1, R + 1):
        bmax = math.isqrt(X - a * a)
        res.append(np.full(bmax + 1, a, np.int64))
        ims.append(np.arange(bmax + 1, dtype=np.int64))
    re = np.concatenate(res)
    im = np.concatenate(ims)
    nm = re * re + im * im
    order = np.lexsort((im, re, nm))
    return re[order], im[order], nm[order]


def enumerate_ideals(X: int) -> list[IdealRep]:
    """Every nonzero ideal of norm <= X, once, ordered by norm."""
    re, im, _ = ideal_arrays(X)
    return [IdealRep(GaussianInt(int(a), int(b))) for a, b in zip(re, im)]


def count_residue_class(x: int) -> int:
    """Exact count of a = 1 mod (1+i)^3 with N(a) <= x."""
    if x < 1:
        raise ValueError("x must be >= 1")
    return int(_kernels.residue_class_count(x))


# ---------------------------------------------------------------------------
# the c = 1 mod 16 squarefree family
# ---------------------------------------------------------------------------


def family_arrays(y: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(re, im, norm) of all squarefree c = 1 mod 16, y < N(c) <= 2y,
    sorted by (norm, re, im).  Covers all four sign branches."""
    if y < 16:
        raise ValueError("y must be >= 16")
    hi = 2.0 * y
    R = math.isqrt(int(hi))
    re_vals = np.arange(-((R + 15) // 16) * 16 + 1, R + 1, 16, dtype=np.int64)
    res = []
    ims = []
    for a in re_vals:
        room = int(hi) - int(a) * int(a)
        if room < 0:
            continue
        B = (math.isqrt(room) // 16) * 16
        b = np.arange(-B, B + 1, 16, dtype=np.int64)
        res.append(np.full(b.size, a, np.int64))
        ims.append(b)
    if not res:
        return (np.empty(0, np.int64),) * 3
    re = np.concatenate(res)
    im = np.concatenate(ims)
    nm = re * re + im * im
    keep = (nm > y) & (nm <= hi)
    re, im, nm = re[keep], im[keep], nm[keep]
    primes = small_primes(math.isqrt(int(hi)) + 1)
    mask = np.empty(nm.size, np.bool_)
    _kernels.squarefree_mask(re, im, nm, primes, mask)
    re, im, nm = re[mask], im[mask], nm[mask]
    order = np.lexsort((im, re, nm))
    return re[order], im[order], nm[order]


def enumerate_family(y: float) -> list[GaussianInt]:
    """All squarefree c = 1 mod 16 with y < N(c) <= 2y, each once."""
    re, im, _ = family_arrays(y)
    return [GaussianInt(int(a), int(b)) for a, b in zip(re, im)]


def primary_squarefree_arrays(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """(re, im) of all squarefree primary elements with norm <= limit,
    sorted by (norm, re, im).  One representative per odd-norm ideal."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    R = math.isqrt(limit)
    res = []
    ims = []
    for a in range(-R, R + 1):
        am = a % 4
        if am == 1:
            want = 0
        elif am == 3:
            want = 2
        else:
            continue
        room = limit - a * a
        B = math.isqrt(room)
        lo = -((B + want) // 4) * 4 + want  # smallest b >= -B, b = want (4)
        b = np.arange(lo, B + 1, 4, dtype=np.int64)
        res.append(np.full(b.size, a, np.int64))
        ims.append(b)
    re = np.concatenate(res)
    im = np.concatenate(ims)
    nm = re * re + im * im
    primes = small_primes(math.isqrt(limit) + 1)
    mask = np.empty(nm.size, np.bool_)
    _kernels.squarefree_mask(re, im, nm, primes, mask)
    re, im, nm = re[mask], im[mask], nm[mask]
    order = np.lexsort((im, re, nm))
    return re[order], im[order]
