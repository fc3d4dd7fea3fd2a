"""Multiplicative-order lower bounds for theta + b in Artin-Schreier extensions
F_q[x]/(x^p - x - a), with brute-force verification at desk scale."""

from .artin_schreier import (
    KContext,
    KElem,
    frobenius_identity_check,
    is_as_irreducible,
    k_arith,
    make_K,
    tau_transport,
    theta_plus_b,
)
from .bounds import (
    best_exact_bound,
    bound_report,
    ist_binom_lower,
    ist_count_exact,
    sasvari,
    table_base,
    theorem1_closed_form,
    theorem1_simplified,
    theorem2_closed_form,
    theorem2_lambda_form,
)
from .census import census, count_outside, is_in_A_n, mobius, probability_lower_bound
from .ff_core import FieldParams, FqElem, fq_arith, frobenius, make_field, trace_to_fp
from .oracle import (
    distinctness_check,
    enumerate_ist,
    factorize,
    injectivity_check,
    lambda_eval,
    multiplicative_order,
    verify_instance,
)

__version__ = "0.1.0"
