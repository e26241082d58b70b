"""Family sweeps: smoothed moments, main-term fits, non-vanishing census,
and the brute-force large-sieve ratio.

All accumulations run in a fixed norm-ascending order with compensated
summation, so every report is bit-identical across thread counts.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from . import _kernels
from .factor import family_arrays, primary_squarefree_arrays
from .lfunc import central_values_bulk, main_term_coefficient

logger = logging.getLogger(__name__)

#: smallest norm of a nontrivial family member (c = -15).
_MIN_FAMILY_NORM = 225


@dataclass(frozen=True)
class MomentReport:
    """One family sweep: weighted moment sums and, for census runs, the
    non-vanishing count at the stated threshold."""

    y: float
    family_size: int
    s1: float
    s2: float
    predicted_main: float
    nonvanishing: int | None = None
    threshold: float | None = None

    def __post_init__(self):
        if self.s2 < 0:
            raise ValueError("second moment cannot be negative")
        if self.nonvanishing is not None and not (
            0 <= self.nonvanishing <= self.family_size
        ):
            raise ValueError("family_size >= nonvanishing >= 0 violated")


@dataclass(frozen=True)
class FitResult:
    """Two-parameter main-term fit S1(y) ~ K yln y + C y, both scaled by
    the bump mass, plus the log-log slope of the residuals."""

    k_fit: float
    c_fit: float
    residuals: tuple[tuple[float, float], ...]
    residual_exponent_fit: float


def phi(x: float) -> float:
    """The frozen smooth bump: exp(4 - 1/((x-1)(2-x))) on (1, 2), else 0.

    Peak value 1 at x = 3/2; all derivatives vanish at both endpoints.
    """
    if x <= 1.0 or x >= 2.0:
        return 0.0
    return math.exp(4.0 - 1.0 / ((x - 1.0) * (2.0 - x)))


@lru_cache(maxsize=1)
def phi_hat_zero() -> float:
    """integral of phi over (1, 2), to absolute accuracy 1e-12."""
    val, err = quad(phi, 1.0, 2.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    if err > 1e-12:
        raise ArithmeticError(f"bump quadrature error {err} above budget")
    return val


def _kahan(values) -> float:
    total = 0.0
    comp = 0.0
    for v in values:
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def _sweep(y: float, tol: float, cache_dir=None):
    re, im, nm = family_arrays(y)
    values, cutoffs, tails = central_values_bulk(re, im, nm, tol=tol)
    if cache_dir is not None and nm.size:
        from pathlib import Path

        from .lfunc import write_lvalue_cache

        target = Path(cache_dir)
        target.mkdir(parents=True, exist_ok=True)
        write_lvalue_cache(
            target / f"lvalues-y{y:g}.csv", re, im, nm, values, cutoffs, tails
        )
    return nm, values, tails


def first_moment(y: float, tol: float = 1e-8, cache_dir=None) -> MomentReport:
    """Smoothed first moment sum over the family, with S2 alongside.

    Every c in the (y, 2y] window gets a central value at tolerance tol;
    the weighted sums accumulate in family order (norm ascending) with
    compensated addition.
    """
    nm, values, _ = _sweep(y, tol, cache_dir)
    weights = np.array([phi(n / y) for n in nm], np.float64)
    s1 = _kahan(values * weights)
    s2 = _kahan(values * values * weights)
    predicted = main_term_coefficient(cache_dir=cache_dir) * phi_hat_zero() * y * math.log(y)
    return MomentReport(
        y=y,
        family_size=int(nm.size),
        s1=s1,
        s2=s2,
        predicted_main=predicted,
    )


def second_moment(y: float, tol: float = 1e-8, cache_dir=None) -> MomentReport:
    """Smoothed second moment; same sweep as first_moment (values are
    real, so |L|^2 is the square)."""
    return first_moment(y, tol=tol, cache_dir=cache_dir)


def fit_main_term(
    grid, s1_values=None, tol: float = 1e-8, cache_dir=None
) -> FitResult:
    """Least squares of S1(y) against {phihat y log y, phihat y}.

    grid needs at least 4 points spanning at least 2 decades.  Pass
    s1_values to fit externally computed (or synthetic) moments; otherwise
    the sweeps run here.
    """
    ys = [float(y) for y in grid]
    if len(ys) < 4:
        raise ValueError("need at least 4 grid points")
    if max(ys) / min(ys) < 100.0:
        raise ValueError("grid must span at least two decades")
    if s1_values is None:
        s1_values = [first_moment(y, tol=tol, cache_dir=cache_dir).s1 for y in ys]
    s1 = np.asarray(s1_values, np.float64)
    ph = phi_hat_zero()
    design = np.column_stack(
        [
            ph * np.array([y * math.log(y) for y in ys]),
            ph * np.asarray(ys),
        ]
    )
    logger.debug("fit design condition number: %.3e", np.linalg.cond(design))
    coef, _, rank, _ = np.linalg.lstsq(design, s1, rcond=None)
    if rank < 2:
        raise ValueError("degenerate grid: singular design matrix")
    resid = s1 - design @ coef
    logr = np.log(np.maximum(np.abs(resid), 1e-300))
    slope = float(np.polyfit(np.log(ys), logr, 1)[0])
    return FitResult(
        k_fit=float(coef[0]),
        c_fit=float(coef[1]),
        residuals=tuple(zip(ys, (float(r) for r in resid))),
        residual_exponent_fit=slope,
    )


def second_moment_slope(grid, s2_values=None, tol: float = 1e-8, cache_dir=None) -> float:
    """Log-log least-squares slope of S2 over the grid."""
    ys = [float(y) for y in grid]
    if s2_values is None:
        s2_values = [second_moment(y, tol=tol, cache_dir=cache_dir).s2 for y in ys]
    return float(np.polyfit(np.log(ys), np.log(np.asarray(s2_values)), 1)[0])


def nonvanishing_census(
    y: float, threshold: float, tol: float = 1e-8, cache_dir=None
) -> MomentReport:
    """Count family members with N(c) <= y and |L(1/2, chi_c)| > threshold.

    The sharp-cutoff region splits into dyadic windows (y/2^(j+1), y/2^j]
    enumerated exactly.  A value is counted nonvanishing only when it
    clears the threshold; anything smaller is indeterminate at the
    certified accuracy, never reported as zero.  threshold must sit at
    least 10x above every per-value tail bound.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    total = 0
    count = 0
    all_values = []
    w = y / 2.0
    while 2.0 * w >= _MIN_FAMILY_NORM and w >= 16.0:
        nm, values, tails = _sweep(w, tol, cache_dir)
        if nm.size and threshold < 10.0 * float(tails.max()):
            raise ValueError(
                f"threshold {threshold} is inside the numerical noise floor "
                f"({10 * tails.max():.3e}); cannot distinguish zero"
            )
        total += int(nm.size)
        count += int(np.sum(np.abs(values) > threshold))
        all_values.append(values)
        w /= 2.0
    values = (
        np.concatenate(all_values) if all_values else np.empty(0, np.float64)
    )
    predicted = main_term_coefficient(cache_dir=cache_dir) * phi_hat_zero() * y * math.log(y)
    return MomentReport(
        y=y,
        family_size=total,
        s1=_kahan(values),
        s2=_kahan(values * values),
        predicted_main=predicted,
        nonvanishing=count,
        threshold=threshold,
    )


def large_sieve_ratio(M: int, N: int, trials: int, seed: int) -> float:
    """Empirical large-sieve ratio for quadratic symbols.

    Brute-force double sum over squarefree primary m (norm <= M) and n
    (norm <= N): the maximum over seeded random complex coefficient
    vectors of

        sum_m |sum_n a_n (n/m)|^2 / ((M + N) sum_n |a_n|^2).

    Per-trial generators derive from the master seed, and the double sum
    reduces in a fixed order, so the result is fully reproducible.
    """
    if M > 10**4 or N > 10**4:
        raise ValueError("brute-force double sum is limited to M, N <= 1e4")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    m_re, m_im = primary_squarefree_arrays(M)
    n_re, n_im = primary_squarefree_arrays(N)
    table = _kernels.sieve_symbol_table(m_re, m_im, n_re, n_im)
    worst = 0.0
    for ss in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.default_rng(ss)
        coeff = rng.standard_normal(n_re.size) + 1j * rng.standard_normal(
            n_re.size
        )
        lhs = float(
            _kernels.sieve_quadratic_form(
                table,
                np.ascontiguousarray(coeff.real),
                np.ascontiguousarray(coeff.imag),
            )
        )
        denom = (M + N) * float(np.sum(np.abs(coeff) ** 2))
        worst = max(worst, lhs / denom)
    return worst
