"""Central values L(1/2, chi_c) via the approximate functional equation.

For this family the functional-equation sign is +1 and the central value
is the real, rapidly convergent smoothed series

    L(1/2, chi_c) = 2 * sum_A chi_c(A) N(A)^(-1/2) V(pi N(A) / N(c)^(1/2)),

with V(xi) = erfc(sqrt(xi)) for the G = 1 smoothing.  The erfc form is
checked against a Mellin-Barnes contour-integral oracle, and whole central
values against an independent Abel-smoothed Dirichlet-series oracle.

Closed-form constants of the first-moment main term (the Euler product A,
zeta_Qi(2), and the assembled coefficient) live here as well.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import gamma as complex_gamma, polygamma

from . import _kernels
from .errors import QuadratureError, ResourceLimitError
from .factor import _primes_array, ideal_arrays, is_squarefree
from .zi import GaussianInt, is_one_mod_16

SMOOTHING_ONE = "G-equals-one"
SMOOTHING_GAUSSIAN = "G-gaussian"

#: cutoff X(c) = ceil(sqrt(N) (log N + CUTOFF_SLACK) / pi); the slack makes
#: the certified erfc tail < 1e-12 with a wide margin at desk scale.
CUTOFF_SLACK = 30.0

_CONTOUR_RE = 2.0
_CONTOUR_IM_LIMIT = 200.0


@dataclass(frozen=True)
class WeightSpec:
    """Choice of smoothing G and spectral parameter t for V_t."""

    smoothing: str = SMOOTHING_ONE
    t: float = 0.0

    def __post_init__(self):
        if self.smoothing not in (SMOOTHING_ONE, SMOOTHING_GAUSSIAN):
            raise ValueError(f"unknown smoothing {self.smoothing!r}")


@dataclass(frozen=True)
class LCentralValue:
    """A computed central value with its certified truncation error."""

    c: GaussianInt
    value: float
    cutoff: int
    tail_bound: float


def v_weight(xi: float) -> float:
    """V(xi) for t = 0, G = 1: the closed form erfc(sqrt(xi)).

    The Mellin transform of the upper incomplete gamma Gamma(a, .) is
    Gamma(s + a)/s, so the contour integral defining V collapses to
    Gamma(1/2, xi)/Gamma(1/2) = erfc(sqrt(xi)).  The identity is gated
    against the contour-integral oracle in the test suite.
    """
    if xi <= 0:
        raise ValueError("xi must be positive")
    return math.erfc(math.sqrt(xi))


def v_weight_oracle(
    xi: float, t: float = 0.0, spec: WeightSpec | None = None
) -> complex:
    """V_t(xi) by direct contour integration on Re(s) = 2.

    Truncated at |Im(s)| <= 200 (the gamma factor has decayed below
    1e-130 by then) and integrated adaptively at two resolutions that
    must agree to 1e-9; disagreement raises QuadratureError.

    Note on G: the Gaussian smoothing is exp(s^2), which is even, equals
    1 at 0 and decays on vertical lines; exp(-s^2) would grow like
    exp(Im(s)^2) and the contour integral would diverge.
    """
    if xi <= 0:
        raise ValueError("xi must be positive")
    if spec is None:
        spec = WeightSpec(SMOOTHING_ONE, t)
    t = spec.t
    gaussian = spec.smoothing == SMOOTHING_GAUSSIAN
    g0 = complex_gamma(0.5 + 1j * t)
    lnxi = math.log(xi)

    def integrand(u: float) -> complex:
        s = complex(_CONTOUR_RE, u)
        w = complex_gamma(s + 0.5 + 1j * t) / g0
        if gaussian:
            w *= np.exp(s * s)
        return w * np.exp(-s * lnxi) / s

    def run(epsabs: float, limit: int) -> complex:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            re, _ = quad(
                lambda u: integrand(u).real,
                -_CONTOUR_IM_LIMIT,
                _CONTOUR_IM_LIMIT,
                epsabs=epsabs,
                epsrel=1e-12,
                limit=limit,
            )
            im, _ = quad(
                lambda u: integrand(u).imag,
                -_CONTOUR_IM_LIMIT,
                _CONTOUR_IM_LIMIT,
                epsabs=epsabs,
                epsrel=1e-12,
                limit=limit,
            )
        return complex(re, im) / (2.0 * math.pi)

    coarse = run(1e-10, 400)
    fine = run(1e-12, 2000)
    if abs(coarse - fine) > 1e-9:
        raise QuadratureError(
            f"contour quadrature unstable at xi={xi}, t={t}, "
            f"spec={spec}: {coarse} vs {fine}"
        )
    return fine


# ---------------------------------------------------------------------------
# the shared AFE tables (ideals, prime positions, factor links)
# ---------------------------------------------------------------------------

_tables: dict = {"X": 0}


def afe_cutoff(norm_c: int) -> int:
    """Ideal-norm cutoff for the AFE sum at modulus norm N(c)."""
    n = float(norm_c)
    return int(math.ceil(math.sqrt(n) * (math.log(n) + CUTOFF_SLACK) / math.pi))


def _ensure_tables(X: int) -> dict:
    if X <= _tables["X"]:
        return _tables
    re, im, nm = ideal_arrays(X)
    R = math.isqrt(X)
    pos = np.full((R + 1, R + 1), -1, np.int64)
    pos[re, im] = np.arange(re.size, dtype=np.int64)
    spf, cof = _kernels.spf_links(re, im, nm, pos, X)
    prime_mask = (spf < 0) & (nm > 1)
    prime_pos = np.flatnonzero(prime_mask).astype(np.int64)
    _tables.update(
        X=X,
        re=re,
        im=im,
        norm=nm,
        inv_sqrt=1.0 / np.sqrt(nm.astype(np.float64)),
        spf=spf,
        cof=cof,
        prime_pos=prime_pos,
        prime_re=re[prime_pos].copy(),
        prime_im=im[prime_pos].copy(),
    )
    return _tables


def afe_tail_bound(norm_c: int, cutoff: int) -> float:
    """Certified bound for the dropped AFE tail at the given cutoff.

    Uses V(xi) = erfc(sqrt(xi)) <= exp(-xi), the crude lattice bound
    sum_{n<=T} r(n) <= 8T, and dyadic blocks above the cutoff:

        2 sum_{n>X} (r(n)/4) n^(-1/2) V(pi n / sqrt(N))
            <= 8 sqrt(X) sum_k 2^(k/2) exp(-q 2^k),   q = pi X / sqrt(N).
    """
    q = math.pi * cutoff / math.sqrt(float(norm_c))
    total = 0.0
    k = 0
    while True:
        term = 8.0 * math.sqrt(cutoff) * 2.0 ** (0.5 * k) * math.exp(-q * 2.0**k)
        total += term
        if term < 1e-300 or k > 60:
            break
        k += 1
    return total


def central_values_bulk(
    fam_re: np.ndarray,
    fam_im: np.ndarray,
    fam_norm: np.ndarray,
    tol: float = 1e-8,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(values, cutoffs, tail_bounds) for a whole family slice.

    Values are independent of the thread count and of the shared-table
    size: each c consumes a fixed norm-ascending prefix of the ideal list
    with a compensated, ordered accumulation.
    """
    if fam_re.size == 0:
        return (
            np.empty(0, np.float64),
            np.empty(0, np.int64),
            np.empty(0, np.float64),
        )
    cutoffs = np.array([afe_cutoff(int(n)) for n in fam_norm], np.int64)
    tails = np.array(
        [afe_tail_bound(int(n), int(x)) for n, x in zip(fam_norm, cutoffs)],
        np.float64,
    )
    if np.any(tails > tol):
        raise ResourceLimitError(
            f"requested tolerance {tol} is below the certified tail bound "
            f"{tails.max()} at the fixed cutoff rule"
        )
    tab = _ensure_tables(int(cutoffs.max()))
    limits = np.searchsorted(tab["norm"], cutoffs, side="right").astype(np.int64)
    values = _kernels.lvalues_bulk(
        np.ascontiguousarray(fam_re),
        np.ascontiguousarray(fam_im),
        np.ascontiguousarray(fam_norm),
        limits,
        tab["norm"],
        tab["inv_sqrt"],
        tab["prime_pos"],
        tab["prime_re"],
        tab["prime_im"],
        tab["spf"],
        tab["cof"],
    )
    return values, cutoffs, tails


def central_values_at_cutoff(
    fam_re: np.ndarray,
    fam_im: np.ndarray,
    fam_norm: np.ndarray,
    cutoffs: np.ndarray,
) -> np.ndarray:
    """AFE values with explicit per-c cutoffs (robustness-test hook)."""
    tab = _ensure_tables(int(cutoffs.max()))
    limits = np.searchsorted(tab["norm"], cutoffs, side="right").astype(np.int64)
    return _kernels.lvalues_bulk(
        np.ascontiguousarray(fam_re),
        np.ascontiguousarray(fam_im),
        np.ascontiguousarray(fam_norm),
        limits,
        tab["norm"],
        tab["inv_sqrt"],
        tab["prime_pos"],
        tab["prime_re"],
        tab["prime_im"],
        tab["spf"],
        tab["cof"],
    )


def central_value(c: GaussianInt, tol: float = 1e-8) -> LCentralValue:
    """L(1/2, chi_c) for a squarefree c = 1 mod 16, norm(c) > 1.

    c = 1 is rejected: the series derivation crosses the zeta pole for
    the principal character, and the family enumerator never emits it.
    """
    if not is_one_mod_16(c):
        raise ValueError("central_value requires c = 1 mod 16")
    if c.norm() == 1:
        raise ValueError("c = 1 is excluded (principal character pole)")
    if not is_squarefree(c):
        raise ValueError("central_value requires squarefree c")
    values, cutoffs, tails = central_values_bulk(
        np.array([c.re], np.int64),
        np.array([c.im], np.int64),
        np.array([c.norm()], np.int64),
        tol=tol,
    )
    value = float(values[0])
    tail = float(tails[0])
    if tail >= 1e-8 * max(1.0, abs(value)):
        raise ResourceLimitError(
            f"tail bound {tail} not below 1e-8 * max(1, |L|) for c={c}"
        )
    return LCentralValue(c=c, value=value, cutoff=int(cutoffs[0]), tail_bound=tail)


def write_lvalue_cache(path, fam_re, fam_im, fam_norm, values, cutoffs, tails):
    """Persist computed central values as CSV (provenance artifact)."""
    with open(path, "w", newline="") as fh:
        fh.write("re,im,norm,L,cutoff,tail_bound\n")
        for j in range(len(values)):
            fh.write(
                f"{int(fam_re[j])},{int(fam_im[j])},{int(fam_norm[j])},"
                f"{format(float(values[j]), '.17g')},{int(cutoffs[j])},"
                f"{format(float(tails[j]), '.17g')}\n"
            )


def read_lvalue_cache(path) -> list[LCentralValue]:
    """Parse a cache file written by write_lvalue_cache."""
    out = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "re,im,norm,L,cutoff,tail_bound":
            raise ValueError(f"unrecognized L-value cache header: {header!r}")
        for line in fh:
            re_, im_, _, val, cut, tail = line.strip().split(",")
            out.append(
                LCentralValue(
                    c=GaussianInt(int(re_), int(im_)),
                    value=float(val),
                    cutoff=int(cut),
                    tail_bound=float(tail),
                )
            )
    return out


def central_value_series_oracle(
    c: GaussianInt, delta0: float = 0.005, levels: int = 5
) -> float:
    """Independent oracle: Abel-type smoothed Dirichlet series.

    S(d) = sum_A chi_c(A) N(A)^(-1/2) exp(-N(A) d) is analytic in d with
    S(0) = L(1/2, chi_c) (the character is nontrivial, so no pole term),
    so Richardson extrapolation over d = delta0 / 2^j converges to the
    central value without ever touching the functional equation or the
    gamma-factor weights.
    """
    if not is_one_mod_16(c) or c.norm() == 1:
        raise ValueError("series oracle requires nontrivial c = 1 mod 16")
    dmin = delta0 / 2 ** (levels - 1)
    nmax = int(math.ceil(40.0 / dmin))
    re, im, nm = ideal_arrays(nmax)
    deltas = np.array([delta0 / 2**j for j in range(levels)], np.float64)
    vals = _kernels.smoothed_series(c.re, c.im, re, im, nm, deltas)
    ys = [float(v) for v in vals]
    xs = [float(d) for d in deltas]
    for i in range(1, levels):
        for j in range(levels - 1, i - 1, -1):
            ys[j] = ys[j] + (ys[j] - ys[j - 1]) * xs[j] / (xs[j - i] - xs[j])
    return ys[levels - 1]


# ---------------------------------------------------------------------------
# closed-form constants
# ---------------------------------------------------------------------------

#: scale for the certified lattice-count fluctuation |E(x)| <= K sqrt(x) + 1
#: in partial summation (Gauss annulus argument); see _ideal_norm_tail.
_FLUCT = 5.2


def _ideal_norm_tail(T: int) -> tuple[float, float]:
    """(main, bound): sum over ideals of norm > T of N^(-2) equals
    (pi/4) psi1(T+1) + err with |err| <= bound."""
    main = (math.pi / 4.0) * float(polygamma(1, T + 1))
    bound = _FLUCT * T**-1.5
    return main, bound


@lru_cache(maxsize=None)
def dedekind_zeta_2(lattice_cutoff: int = 20_000_000) -> float:
    """zeta_Qi(2), with the two computation routes cross-checked.

    Factored route: zeta(2) * beta(2) = (pi^2/6) * Catalan.  Direct route:
    exact lattice sum of N(A)^(-2) up to the cutoff plus the trigamma tail.
    The routes must agree to 1e-10 (the certified fluctuation bound at the
    default cutoff is ~6e-11).
    """
    factored = (math.pi**2 / 6.0) * float(mpmath.mp.catalan)
    direct = float(_kernels.zeta2_lattice_sum(lattice_cutoff))
    tail_main, tail_bound = _ideal_norm_tail(lattice_cutoff)
    direct += tail_main
    if abs(direct - factored) > max(1e-10, tail_bound):
        raise ArithmeticError(
            f"zeta_Qi(2) routes disagree: {direct} vs {factored}"
        )
    return factored


def dedekind_zeta_2_direct(lattice_cutoff: int) -> float:
    """The raw truncated ideal sum (no tail correction); test hook."""
    return float(_kernels.zeta2_lattice_sum(lattice_cutoff))


@lru_cache(maxsize=None)
def euler_product_A(X: int = 10**6, cache_dir: str | None = None) -> tuple[float, float]:
    """(A_partial, tail_bound): the Euler product over odd primes of K
    of (1 - 1/((N(pi)+1) N(pi))), truncated at norm X.

    The tail bound majorizes the dropped log-mass by twice the ideal-norm
    tail (prime ideals of norm n number at most r(n)/4).
    """
    if X < 5:
        raise ValueError("X must be >= 5 (first factor has norm 5)")
    table = _primes_array(X, cache_dir)
    prod = 1.0
    for nm in table[:, 2]:
        n = float(nm)
        prod *= 1.0 - 1.0 / ((n + 1.0) * n)
    tail_main, tail_fluct = _ideal_norm_tail(int(X))
    log_tail = 2.0 * (tail_main + tail_fluct)
    return prod, prod * (-math.expm1(-log_tail))


def coefficient_assembly(A: float) -> tuple[float, float]:
    """The main-term coefficient assembled two ways.

    Closed form: (2 + sqrt 2) pi^2 A / (3072 zeta_Qi(2)).  Residue form:
    (2 + sqrt 2) c0 pi A / (24 * 32 * zeta_Qi(2)), with c0 = pi/4 the
    residue of zeta_Qi at 1 and 32 the ray class number mod 16.
    """
    zeta2 = dedekind_zeta_2()
    closed = (2.0 + math.sqrt(2.0)) * math.pi**2 * A / (3072.0 * zeta2)
    c0 = math.pi / 4.0
    residue = (2.0 + math.sqrt(2.0)) * c0 * math.pi * A / (24.0 * 32.0 * zeta2)
    return closed, residue


@lru_cache(maxsize=None)
def main_term_coefficient(X: int = 10**6, cache_dir: str | None = None) -> float:
    """K = (2 + sqrt 2) pi^2 A / (3072 zeta_Qi(2)), A truncated at norm X.

    Evaluates both assemblies of the constant and insists they agree to
    1e-12 relative.
    """
    A, _ = euler_product_A(X, cache_dir)
    closed, residue = coefficient_assembly(A)
    if abs(closed - residue) > 1e-12 * abs(closed):
        raise ArithmeticError(
            f"coefficient assembly identity violated: {closed} vs {residue}"
        )
    return closed
