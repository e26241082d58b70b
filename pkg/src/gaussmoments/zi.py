"""Exact arithmetic in Z[i].

Elements are pairs of Python integers, so every operation is exact; the
constructor rejects anything whose norm exceeds ``NORM_LIMIT`` (2**62) to
keep values inside the range the compiled kernels assume.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass

NORM_LIMIT = 1 << 62


def _round_half_down(num: int, den: int) -> int:
    """Round num/den to the nearest integer, ties toward -infinity.

    den must be positive.  Equals ceil((2*num - den) / (2*den)).
    """
    p = 2 * num - den
    q = 2 * den
    return -((-p) // q)


@dataclass(frozen=True)
class GaussianInt:
    """An element a + bi of Z[i] with componentwise equality."""

    re: int
    im: int

    def __post_init__(self):
        n = self.re * self.re + self.im * self.im
        if n > NORM_LIMIT:
            raise OverflowError(
                f"norm {n} exceeds the working width limit 2**62"
            )

    # -- basic ring structure -------------------------------------------

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def mul_i(self, k: int = 1) -> "GaussianInt":
        """Multiply by i**k."""
        a, b = self.re, self.im
        for _ in range(k % 4):
            a, b = -b, a
        return GaussianInt(a, b)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[i]")
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # -- Euclidean structure --------------------------------------------

    def __divmod__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Z[i]")
        n = other.norm()
        # self/other = self*conj(other)/n, rounded per coordinate with
        # ties toward -infinity (frozen so gcd traces are deterministic).
        ur = self.re * other.re + self.im * other.im
        ui = self.im * other.re - self.re * other.im
        q = GaussianInt(_round_half_down(ur, n), _round_half_down(ui, n))
        r = self - q * other
        return q, r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- text form -------------------------------------------------------

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imtxt = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{imtxt}"

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        """Parse the frozen CLI grammar: "a", "bi", "a+bi", "a-bi".

        Spaces around the middle sign are allowed; a bare "i" means 1i.
        """
        s = text.strip().replace(" ", "")
        m = _re.fullmatch(r"([+-]?\d+)", s)
        if m:
            return cls(int(m.group(1)), 0)
        m = _re.fullmatch(r"([+-]?)(\d*)i", s)
        if m:
            mag = int(m.group(2)) if m.group(2) else 1
            return cls(0, -mag if m.group(1) == "-" else mag)
        m = _re.fullmatch(r"([+-]?\d+)([+-])(\d*)i", s)
        if m:
            mag = int(m.group(3)) if m.group(3) else 1
            return cls(int(m.group(1)), -mag if m.group(2) == "-" else mag)
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")


def _coerce(x):
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x, 0)
    return NotImplemented


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
ONE_PLUS_I = GaussianInt(1, 1)


@dataclass(frozen=True)
class PrimaryDecomposition:
    """n = i**unit_exponent * (1+i)**two_exponent * primary, exactly."""

    unit_exponent: int
    two_exponent: int
    primary: GaussianInt

    def value(self) -> GaussianInt:
        return (
            ONE.mul_i(self.unit_exponent)
            * ONE_PLUS_I ** self.two_exponent
            * self.primary
        )


def norm(z: GaussianInt) -> int:
    """N(a+bi) = a*a + b*b."""
    return z.norm()


def gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Greatest common divisor, canonicalized.

    Odd-norm results are normalized to their primary associate, even-norm
    results to the representative with re >= 1, im >= 0, so downstream
    symbol code never sees stray units.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    if a.norm() % 2 == 1:
        return primary_normalize(a)[1]
    while not (a.re >= 1 and a.im >= 0):
        a = a.mul_i()
    return a


def is_primary(n: GaussianInt) -> bool:
    """True iff n == 1 or n is a non-unit congruent to 1 mod (1+i)**3.

    For n = a+bi that congruence is equivalent to a = 1 (4), b = 0 (4)
    or a = 3 (4), b = 2 (4); the first branch also admits n = 1.
    """
    a, b = n.re % 4, n.im % 4
    return (a == 1 and b == 0) or (a == 3 and b == 2)


def primary_normalize(n: GaussianInt) -> tuple[int, GaussianInt]:
    """Return (s, primary) with i**s * primary == n.

    Exactly one associate of an odd-norm element satisfies the primary
    congruences; units come out as (s, 1).
    """
    if n.norm() % 2 == 0:
        raise ValueError("primary normalization requires odd norm")
    cand = n
    for k in range(4):
        if is_primary(cand):
            return (4 - k) % 4, cand
        cand = cand.mul_i()
    raise AssertionError("unreachable: no primary associate found")


def decompose(n: GaussianInt) -> PrimaryDecomposition:
    """Exact factorization n = i**s * (1+i)**t * primary."""
    if n.is_zero():
        raise ValueError("cannot decompose 0")
    t = 0
    while n.norm() % 2 == 0:
        # n/(1+i) = n*(1-i)/2, exact whenever the norm is even
        n = GaussianInt((n.re + n.im) // 2, (n.im - n.re) // 2)
        t += 1
    s, primary = primary_normalize(n)
    return PrimaryDecomposition(s, t, primary)


def is_one_mod_16(c: GaussianInt) -> bool:
    """True iff 16 | (c - 1) in Z[i]."""
    return (c.re - 1) % 16 == 0 and c.im % 16 == 0
