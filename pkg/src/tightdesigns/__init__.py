"""Verification engine and parameter search for the classification of tight 2s-designs.

Subpackages by concern: exact_arith (rational/combinatorial kernel),
design_functions (the lambda/alpha/h families and the design polynomial),
identity_suite (grid-proof identity checks), auxiliary_h (the quadratic
auxiliary sum and its closed form), upper_bound (rigorous interval bounds),
prime_engine (segmented sieve and prime gaps), search (the (s, x, y)
integrality search), pipeline and cli (three-case certificates, commands).
"""

from .exact_arith import (
    ExactRational,
    ValuationTable,
    binomial,
    ell,
    falling_factorial,
    rising_factorial,
    val_p,
    val_p_factorial,
)
from .design_functions import (
    DesignCandidate,
    NotAllIntegral,
    WilsonPolynomial,
    WindowViolation,
    alpha_all_integral,
    alpha_si,
    alpha_xy,
    h_si,
    intersection_numbers,
    lambda_si,
    wilson_polynomial,
)
from .auxiliary_h import AuxiliaryValue, f_const, g_closed, h_sum
from .identity_suite import IdentityFamily, IdentityReport, verify_all
from .upper_bound import (
    BoundReport,
    RigorousUpper,
    best_bound,
    check_large_s_bound,
    dusart_pi_upper,
    kappa,
    psi,
    stirling_bounds,
    v_upper,
)
from .prime_engine import (
    GapRecord,
    NotFoundBelowLimit,
    SieveTable,
    build_sieve,
    dusart_gap_lower,
    rho,
    v_lower,
)
from .search import (
    Hit,
    SearchChunk,
    enumerate_candidate_y,
    run_search,
    search_chunk,
    verify_window,
)
from .pipeline import Certificate, run_pipeline

__version__ = "0.1.0"
