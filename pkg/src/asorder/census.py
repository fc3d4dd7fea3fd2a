"""Counting elements of F_{p^n} outside every proper subfield.

A_n is the union of the proper subfields F_{p^m} (m | n, m != n).  Its
complement has g(n) = sum_{d | n} mu(n/d) p^d elements (Moebius inversion
of sum_{d | m} g(d) = p^m).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .ff_core import FqElem
from .errors import NotPrime
from .ntheory import divisors, factor_trial, is_prime, prime_divisors

BOUNDARY_EQUALITY = "BOUNDARY_EQUALITY"
PROBABILITY_BOUND_VIOLATED = "PROBABILITY_BOUND_VIOLATED"


def mobius(m):
    if m < 1:
        raise ValueError("mobius is defined for m >= 1")
    fac = factor_trial(m)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def count_outside(p, n):
    """|F_{p^n} \\ A_n|, exactly."""
    return sum(mobius(n // d) * p**d for d in divisors(n))


def is_in_A_n(b: FqElem) -> bool:
    """True iff b lies in a proper subfield of F_{p^n}.

    Only the maximal proper subfields F_{p^(n/r)}, r a prime divisor of n,
    need checking since every proper subfield sits inside one of them.
    """
    prm = b.params
    for r in prime_divisors(prm.n):
        m = prm.n // r
        c = b.coeffs
        for _ in range(m):
            c = prm.pow(c, prm.p)
        if c == b.coeffs:
            return True
    return False


def _integer_log(n, r):
    k, x = 0, 1
    while x < n:
        x *= r
        k += 1
    return k if x == n else None


def probability_lower_bound(p, n, dps=40):
    """The bound 1 - log_r(n) / q^(1 - 1/r), r the smallest prime factor of n.

    Returns (exact, real): exact is a Fraction when log_r(n) is an integer
    and None otherwise; real is an mpmath value.
    """
    if n < 2:
        raise ValueError("the bound is stated for n >= 2 (n = 1 has probability 1)")
    r = prime_divisors(n)[0]
    # q^(1-1/r) = p^(n(r-1)/r), an integer since r | n
    denom = p ** (n * (r - 1) // r)
    k = _integer_log(n, r)
    exact = 1 - Fraction(k, denom) if k is not None else None
    with mpmath.workdps(dps):
        real = 1 - mpmath.log(n) / mpmath.log(r) / denom
    return exact, +real


@dataclass
class SubfieldCensus:
    p: int
    n: int
    divisors: list
    g_values: dict
    a_n_upper: int
    r: int | None
    prob_lower: Fraction | None
    prob_lower_real: mpmath.mpf | None
    prob_exact: Fraction
    flags: list = field(default_factory=list)

    def to_json(self):
        from .report import fmt_real

        out = {
            "p": str(self.p),
            "n": str(self.n),
            "g": {str(d): str(v) for d, v in self.g_values.items()},
            "anUpper": str(self.a_n_upper),
            "r": None if self.r is None else str(self.r),
            "probLower": None if self.prob_lower_real is None else fmt_real(self.prob_lower_real),
            "probLowerExact": None if self.prob_lower is None else str(self.prob_lower),
            "probExact": str(self.prob_exact),
            "probExactReal": fmt_real(mpmath.mpf(self.prob_exact.numerator) / self.prob_exact.denominator),
            "flags": list(self.flags),
        }
        return out


def census(p, n):
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if n < 1:
        raise ValueError("n must be >= 1")
    ds = divisors(n)
    g_values = {d: count_outside(p, d) for d in ds}
    a_n_upper = sum(p ** (n // r) for r in prime_divisors(n))
    prob_exact = Fraction(g_values[n], p**n)
    flags = []
    if n == 1:
        r, exact, real = None, None, None
    else:
        r = prime_divisors(n)[0]
        exact, real = probability_lower_bound(p, n)
        with mpmath.workdps(40):
            truth = mpmath.mpf(prob_exact.numerator) / prob_exact.denominator
            if exact is not None:
                cmp = (exact > prob_exact) - (exact < prob_exact)
            else:
                cmp = 1 if real > truth else -1
        if cmp == 0:
            flags.append(BOUNDARY_EQUALITY)
        elif cmp > 0:
            flags.append(PROBABILITY_BOUND_VIOLATED)
    return SubfieldCensus(p, n, ds, g_values, a_n_upper, r, exact, real, prob_exact, flags)
