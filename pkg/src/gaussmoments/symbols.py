"""Quartic and quadratic residue symbols in Z[i].

Two independent evaluators are provided: ``quartic_symbol_prime`` is the
exponentiation definition (the oracle, prime moduli only) and
``quartic_symbol`` is the fast Euclidean evaluator built on quartic
reciprocity and the two supplement laws, valid for any primary odd-norm
modulus.  Agreement of the two on prime moduli is part of the test gate.
"""

from __future__ import annotations

from enum import Enum

from .factor import is_prime_int
from .zi import GaussianInt, decompose, is_one_mod_16, is_primary

_I_POWERS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class QuarticValue(Enum):
    """Value of a quartic residue symbol: i**k for k in 0..3, or zero."""

    ONE = 0
    I = 1
    MINUS_ONE = 2
    MINUS_I = 3
    ZERO = None

    @classmethod
    def from_exponent(cls, k: int | None) -> "QuarticValue":
        if k is None or k < 0:
            return cls.ZERO
        return cls(k % 4)

    @property
    def exponent(self) -> int | None:
        return self.value

    def __mul__(self, other: "QuarticValue") -> "QuarticValue":
        if self is QuarticValue.ZERO or other is QuarticValue.ZERO:
            return QuarticValue.ZERO
        return QuarticValue((self.value + other.value) % 4)

    def as_complex(self) -> complex:
        if self is QuarticValue.ZERO:
            return 0j
        a, b = _I_POWERS[self.value]
        return complex(a, b)

    def square(self) -> int:
        """The quadratic value (this symbol squared) in {-1, 0, 1}."""
        if self is QuarticValue.ZERO:
            return 0
        return -1 if self.value % 2 else 1

    def __str__(self) -> str:
        return {0: "1", 1: "i", 2: "-1", 3: "-i"}.get(self.value, "0")


def is_gaussian_prime(pi: GaussianInt) -> bool:
    """Primality in Z[i]: prime norm, or an associate of an inert rational
    prime q = 3 mod 4 (norm q**2)."""
    n = pi.norm()
    if n <= 1:
        return False
    if is_prime_int(n):
        return True
    if pi.re != 0 and pi.im != 0:
        return False
    q = abs(pi.re) if pi.im == 0 else abs(pi.im)
    return q % 4 == 3 and is_prime_int(q)


def quartic_symbol_prime(a: GaussianInt, pi: GaussianInt) -> QuarticValue:
    """(a/pi)_4 by the defining congruence a**((N(pi)-1)/4) mod pi.

    pi must be a Gaussian prime of odd norm.  This is the oracle: slow,
    but a direct transcription of the definition.
    """
    n = pi.norm()
    if n % 2 == 0 or not is_gaussian_prime(pi):
        raise ValueError(f"{pi} is not a Gaussian prime of odd norm")
    x = _pow_mod(a % pi, (n - 1) // 4, pi)
    for k, (ur, ui) in enumerate(_I_POWERS):
        if _divides(pi, x - GaussianInt(ur, ui)):
            return QuarticValue(k)
    if x.is_zero():
        return QuarticValue.ZERO
    raise AssertionError(f"a^((N-1)/4) mod {pi} is not a fourth root of unity")


def _pow_mod(base: GaussianInt, e: int, mod: GaussianInt) -> GaussianInt:
    out = GaussianInt(1, 0) % mod
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return out


def _divides(d: GaussianInt, z: GaussianInt) -> bool:
    n = d.norm()
    return (z.re * d.re + z.im * d.im) % n == 0 and (
        z.im * d.re - z.re * d.im
    ) % n == 0


def quartic_symbol(a: GaussianInt, n: GaussianInt) -> QuarticValue:
    """(a/n)_4 for primary odd-norm n, by reciprocity and the supplements.

    Mirrors the int64 kernel but runs on exact Python integers, so it
    covers the full accepted input range.  Returns ZERO iff gcd(a, n) != 1.
    """
    if n.norm() % 2 == 0 or not is_primary(n):
        raise ValueError(f"modulus {n} must be primary with odd norm")
    acc = 0
    while True:
        if n.norm() == 1:
            return QuarticValue(acc % 4)
        r = a % n
        if r.is_zero():
            return QuarticValue.ZERO
        dec = decompose(r)
        r1 = dec.primary
        # supplements at the current modulus n = A + Bi
        acc += dec.unit_exponent * ((1 - n.re) // 2)
        acc += dec.two_exponent * ((n.re - n.im - 1 - n.im * n.im) // 4)
        # reciprocity flip for the primary pair (r1, n)
        acc += 2 * (((n.norm() - 1) // 4) & 1) * (((r1.norm() - 1) // 4) & 1)
        a, n = n, r1


def quadratic_symbol(a: GaussianInt, n: GaussianInt) -> int:
    """(a/n) = (a/n)_4 squared, in {-1, 0, 1}."""
    return quartic_symbol(a, n).square()


def chi_c_on_ideal(c: GaussianInt, ideal) -> int:
    """chi_c evaluated on an ideal: the quadratic symbol of any generator.

    Well defined because chi_c is trivial on units for c = 1 mod 16.
    Accepts an IdealRep or a GaussianInt generator.
    """
    if not is_one_mod_16(c):
        raise ValueError("chi_c requires c = 1 mod 16")
    gen = ideal.gen if hasattr(ideal, "gen") else ideal
    return quadratic_symbol(gen, c)
