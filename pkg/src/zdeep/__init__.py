"""z-deep Miller-Rabin tests, z-deep Carmichael numbers and the 2-adic local Korselt model."""

from ._accel import BACKEND
from .arith import (
    ExactRational,
    Factorization,
    binomial,
    carmichael_lambda,
    f_of_k,
    factorize,
    jacobi,
    mod_pow,
    nu_p,
)
from .carmichael import (
    DepthRecord,
    DepthTable,
    build_depth_table,
    divisor_bound_audit,
    enumerate_carmichaels,
    exact_depth,
    fools_all_bases,
    ingest_oeis_bfile,
    is_carmichael,
    ratio_report,
    search_carmichaels,
    z_korselt_check,
)
from .errors import CapacityError, DomainError, ParseError, ValidationError, ZDeepError
from .local_model import (
    TupleStats,
    TwoAdicSample,
    conditional_depth_prob,
    equal_exponent_prob,
    exact_korselt_prob,
    monte_carlo,
    scaled_prob,
    w_of_n,
)
from .primality import (
    Algorithm,
    TestOutcome,
    fermat_test,
    is_prime_oracle,
    miller_rabin,
    run_test,
    solovay_strassen,
    z1_solovay_variant,
    z_deep_miller_rabin,
)
from .stats import PoissonModel, erdos_kac_lambda, observed_factor_mean, truncated_moments

__version__ = "0.1.0"
