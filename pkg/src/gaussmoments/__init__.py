"""Quadratic Hecke characters over Z[i]: residue symbols, Gauss sums,
central L-values, and desk-scale moment experiments."""

from .factor import (
    GaussianFactorization,
    IdealRep,
    count_residue_class,
    enumerate_family,
    enumerate_ideals,
    factor,
    is_squarefree,
    moebius,
    primes_by_norm,
)
from .gausssum import e_tilde, gauss_sum_closed, gauss_sum_direct, root_number
from .lfunc import (
    LCentralValue,
    WeightSpec,
    central_value,
    central_value_series_oracle,
    dedekind_zeta_2,
    euler_product_A,
    main_term_coefficient,
    v_weight,
    v_weight_oracle,
)
from .moments import (
    FitResult,
    MomentReport,
    first_moment,
    fit_main_term,
    large_sieve_ratio,
    nonvanishing_census,
    phi,
    phi_hat_zero,
    second_moment,
)
from .symbols import (
    QuarticValue,
    chi_c_on_ideal,
    quadratic_symbol,
    quartic_symbol,
    quartic_symbol_prime,
)
from .zi import (
    GaussianInt,
    PrimaryDecomposition,
    decompose,
    gcd,
    is_one_mod_16,
    norm,
    primary_normalize,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianInt",
    "PrimaryDecomposition",
    "GaussianFactorization",
    "IdealRep",
    "QuarticValue",
    "LCentralValue",
    "WeightSpec",
    "MomentReport",
    "FitResult",
    "norm",
    "gcd",
    "primary_normalize",
    "decompose",
    "is_one_mod_16",
    "factor",
    "moebius",
    "is_squarefree",
    "primes_by_norm",
    "enumerate_ideals",
    "count_residue_class",
    "enumerate_family",
    "quartic_symbol",
    "quartic_symbol_prime",
    "quadratic_symbol",
    "chi_c_on_ideal",
    "e_tilde",
    "gauss_sum_direct",
    "gauss_sum_closed",
    "root_number",
    "v_weight",
    "v_weight_oracle",
    "central_value",
    "central_value_series_oracle",
    "dedekind_zeta_2",
    "euler_product_A",
    "main_term_coefficient",
    "phi",
    "phi_hat_zero",
    "first_moment",
    "second_moment",
    "fit_main_term",
    "nonvanishing_census",
    "large_sieve_ratio",
    "__version__",
]
