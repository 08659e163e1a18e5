"""Exact unramified L-factors, Weyl alternating sums and coset bookkeeping."""

from .identity import (
    IdentityReport,
    check_delta_antisymmetry,
    cstar_ratio_check,
    delta,
    main_delta_identity,
    vanishing_sum,
)
from .lfactors import (
    LFactorExpr,
    SatakeDatum,
    P_star,
    Q_poly,
    asai_L,
    c_function,
    d_factor,
    eulerian_rhs,
    gamma_gl,
    gl_rankin_L,
    phi0_element,
    so_square_L,
    tensor_L,
    unramified_rhs,
    verify_Q_identity,
    zeta_poly,
)
from .orbits import (
    CosetDatum,
    JacquetConstituent,
    OrbitCountQuery,
    bessel_orbit_count,
    enumerate_eps,
    jacquet_constituents_inert,
    jacquet_constituents_split,
    summand_fate,
    surviving_summand,
)
from .symalg import LaurentPolynomial, RationalFunction, rf_equals, var
from .weyl import GroupContext, WeylElement, alternating_sum, enumerate_group, make_context, rho_monomial

__version__ = "0.1.0"
