"""Lower bounds for the order of theta + b.

Exact side: |I_{s,t}| (the size of the exponent-vector set on which the
product map is injective) and its two-binomial lower bound, both as big
integers.  Analytic side: Sasvari's Stirling-type bracket for C(rs, s) and
the closed forms built from it, evaluated in log space with mpmath so that
(16/3)^p and friends never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .census import census
from .errors import InvalidBudget, InvalidLambda, NotPrime, Reducible, RequiresNAtLeast2
from .ntheory import is_prime
from .report import compare_real_int, fmt_real

DPS = 40

# The published table: n -> base c such that pi*p*|<theta+b>| is about c^p.
PUBLISHED_TABLE = {
    2: "12.22377",
    3: "17.65835",
    4: "23.09586",
    5: "28.53356",
    10: "55.71983",
    100: "545.01494",
    1000: "5437.92274",
    10000: "54366.9957",
}
TABLE_TOLERANCE = 1e-3

CLOSED_FORM_EXCEEDS_EXACT = "CLOSED_FORM_EXCEEDS_EXACT"
CLOSED_FORM_EXCEEDS_CHAIN = "CLOSED_FORM_EXCEEDS_CHAIN"
TABLE_MISMATCH = "TABLE_MISMATCH"


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


# --- exact counts ------------------------------------------------------------

def ist_count_exact(N, s, t):
    """|I_{s,t}| for vectors of length N.

    i coordinates positive (summing to <= s) and j negative (absolute sum
    <= t): C(N, i) C(N - i, j) placements times C(s, i) C(t, j) value choices.
    """
    if N < 0 or s < 0 or t < 0:
        raise InvalidBudget("N, s, t must be nonnegative")
    return sum(
        comb(N, i) * comb(N - i, j) * comb(s, i) * comb(t, j)
        for i in range(min(s, N) + 1)
        for j in range(t + 1)
    )


def ist_binom_lower(N, s, t):
    """C(N + t - s, t) * C(N + s, s), the two-binomial lower bound on |I_{s,t}|."""
    if s < 0 or t < 0 or N < s:
        raise InvalidBudget(f"binomial arguments go negative for N={N}, s={s}, t={t}")
    return comb(N + t - s, t) * comb(N + s, s)


def _best_on_boundary(p, n, fn):
    N = n * p
    best = None
    for s in range(p):
        t = p - 1 - s
        try:
            v = fn(N, s, t)
        except InvalidBudget:
            continue
        if best is None or v > best[0]:
            best = (v, s, t)
    return best


def best_exact_bound(p, n):
    """max |I_{s,t}| over s + t = p - 1, ties to the smaller s.

    |I_{s,t}| is nondecreasing in both budgets, so the line s + t = p - 1
    carries the maximum of the whole triangle s + t <= p - 1.
    """
    return _best_on_boundary(p, n, ist_count_exact)


def best_binom_bound(p, n):
    return _best_on_boundary(p, n, ist_binom_lower)


# --- analytic bounds ---------------------------------------------------------

def sasvari(r, s, dps=DPS):
    """(lower, upper) bracketing C(rs, s) for r > 1, s > 0."""
    with mpmath.workdps(dps):
        r, s = _mpf(r), _mpf(s)
        if not r > 1 or not s > 0:
            raise ValueError("need r > 1 and s > 0")
        log_c = (mpmath.log(r) - mpmath.log(2 * mpmath.pi * (r - 1))) / 2
        log_d = r * mpmath.log(r) - (r - 1) * mpmath.log(r - 1)
        log_upper = log_c + s * log_d - mpmath.log(s) / 2
        log_theta = -(1 + 1 / (r * (r - 1))) / (12 * s)
        lower = mpmath.exp(log_upper + log_theta)
        upper = mpmath.exp(log_upper)
    return +lower, +upper


def _check_odd_prime(p):
    if p == 2 or not is_prime(p):
        raise NotPrime(f"p={p} must be an odd prime")


def theorem1_log(p, n, dps=DPS):
    _check_odd_prime(p)
    if n < 2:
        raise RequiresNAtLeast2("the closed form needs n >= 2")
    with mpmath.workdps(dps):
        u, v = mpmath.mpf(2 * n + 1), mpmath.mpf(2 * n - 1)
        lu, lv = mpmath.log(u), mpmath.log(v)
        out = (
            -mpmath.log(mpmath.pi * (p - 1))
            + (lu - lv) / 2
            + mpmath.mpf(p - 1) / 2 * (u * lu - v * lv)
            - mpmath.mpf(4 * n * n) / (4 * n * n - 1) / (3 * (p - 1))
        )
    return +out


def theorem1_closed_form(p, n, dps=DPS):
    with mpmath.workdps(dps):
        return +mpmath.exp(theorem1_log(p, n, dps))


def theorem1_simplified(p, n, eps, dps=DPS):
    """(1/(pi p)) ((e - eps)(2n + 1))^(p - 1); only claimed for n past an unquantified threshold."""
    _check_odd_prime(p)
    if n < 2:
        raise RequiresNAtLeast2("the simplified form needs n >= 2")
    with mpmath.workdps(dps):
        eps = _mpf(eps)
        if not 0 < eps < mpmath.e - 1:
            raise ValueError("eps must lie in (0, e - 1)")
        return +mpmath.exp(
            (p - 1) * mpmath.log((mpmath.e - eps) * (2 * n + 1)) - mpmath.log(mpmath.pi * p)
        )


def a_sequence(p, n, dps=DPS):
    """((2n+1)/(2n-1))^(((2n-1)(p-1)+1)/2), increasing in n towards e^(p-1)."""
    with mpmath.workdps(dps):
        return +(mpmath.mpf(2 * n + 1) / (2 * n - 1)) ** (mpmath.mpf((2 * n - 1) * (p - 1) + 1) / 2)


def theorem2_closed_form(p, dps=DPS):
    """(sqrt(3)/(pi p)) e^(-1/12) (16/3)^p."""
    _check_odd_prime(p)
    with mpmath.workdps(dps):
        return +mpmath.exp(
            mpmath.log(3) / 2
            - mpmath.log(mpmath.pi * p)
            - mpmath.mpf(1) / 12
            + p * mpmath.log(mpmath.mpf(16) / 3)
        )


def _log_theta(r, s):
    return -(1 + 1 / (r * (r - 1))) / (12 * s)


def theorem2_lambda_form(p, lam, dps=DPS):
    """The lambda-parametrised bound for q = p, with both Theta corrections."""
    _check_odd_prime(p)
    lam = Fraction(lam)
    if not 0 < lam < 1 or (p * lam).denominator != 1 or lam > Fraction(p - 1, p):
        raise InvalidLambda(f"lambda={lam} needs 0 < lambda <= (p-1)/p with p*lambda integral")
    with mpmath.workdps(dps):
        L = _mpf(lam)
        log_base = (1 - L) * mpmath.log(4) + (1 + L) * mpmath.log(1 + L) - L * mpmath.log(L)
        out = (
            -mpmath.log(mpmath.pi * p)
            + (mpmath.log(1 + L) - mpmath.log(2 * L * (1 - L))) / 2
            + p * log_base
            + _log_theta(mpmath.mpf(2), p * (1 - L))
            + _log_theta((1 + L) / L, p * L)
        )
        return +mpmath.exp(out)


def best_theorem2_lambda(p, dps=DPS):
    """Largest lambda-form value over lambda = k/p, 1 <= k <= p-1; ties to the smaller lambda."""
    best = None
    for k in range(1, p):
        lam = Fraction(k, p)
        v = theorem2_lambda_form(p, lam, dps)
        if best is None or v > best[0]:
            best = (v, lam)
    return best


def table_base(n, dps=DPS):
    """Reconstructed generator of the published table column:
    (2n+1) ((2n+1)/(2n-1))^((4n-1)/4).
    """
    if n < 2:
        raise RequiresNAtLeast2("table rows start at n = 2")
    with mpmath.workdps(dps):
        return +(mpmath.mpf(2 * n + 1) * (mpmath.mpf(2 * n + 1) / (2 * n - 1)) ** (mpmath.mpf(4 * n - 1) / 4))


def table_rows():
    """[(n, published, reconstructed, relative deviation)] for every published row."""
    rows = []
    for n, published in PUBLISHED_TABLE.items():
        rec = table_base(n)
        rows.append((n, published, rec, abs(rec / mpmath.mpf(published) - 1)))
    return rows


# --- assembled report --------------------------------------------------------

@dataclass
class BoundReport:
    p: int
    n: int
    N: int
    exact_best: int
    exact_budget: tuple
    binom_best: int
    binom_budget: tuple
    binom_chain: int
    chain_budget: tuple
    thm1_closed: mpmath.mpf | None = None
    thm1_simplified: mpmath.mpf | None = None
    eps: float | None = None
    thm2_closed: mpmath.mpf | None = None
    thm2_lambda: mpmath.mpf | None = None
    lam: Fraction | None = None
    table_base: mpmath.mpf | None = None
    census: object = None
    flags: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def closed_forms(self):
        """The closed forms that claim to be lower bounds, by name."""
        out = {}
        for name in ("thm1_closed", "thm2_closed", "thm2_lambda"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        return out

    def to_json(self):
        opt = lambda v: None if v is None else fmt_real(v)
        return {
            "p": str(self.p),
            "n": str(self.n),
            "N": str(self.N),
            "exactBest": str(self.exact_best),
            "exactBudget": {"s": str(self.exact_budget[0]), "t": str(self.exact_budget[1])},
            "binomBest": str(self.binom_best),
            "binomBudget": {"s": str(self.binom_budget[0]), "t": str(self.binom_budget[1])},
            "binomChain": str(self.binom_chain),
            "chainBudget": {"s": str(self.chain_budget[0]), "t": str(self.chain_budget[1])},
            "thm1Closed": opt(self.thm1_closed),
            "thm1Simplified": opt(self.thm1_simplified),
            "eps": None if self.eps is None else repr(self.eps),
            "thm2Closed": opt(self.thm2_closed),
            "thm2Lambda": opt(self.thm2_lambda),
            "lambda": None if self.lam is None else str(self.lam),
            "tableBase": opt(self.table_base),
            "tableProvenance": None if self.table_base is None else "reconstructed",
            "census": None if self.census is None else self.census.to_json(),
            "flags": list(self.flags),
            "notes": list(self.notes),
        }


def bound_report(p, n, eps=0.01):
    _check_odd_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    if n % p == 0:
        raise Reducible(f"x^p - x - a is reducible over F_{p}^{n} since p | n")
    N = n * p
    exact, es, et = best_exact_bound(p, n)
    binom, bs, bt = best_binom_bound(p, n)
    rep = BoundReport(p, n, N, exact, (es, et), binom, (bs, bt), 0, (0, 0))
    if n >= 2:
        h = (p - 1) // 2
        rep.binom_chain, rep.chain_budget = ist_binom_lower(N, h, h), (h, h)
        rep.thm1_closed = theorem1_closed_form(p, n)
        rep.eps = eps
        rep.thm1_simplified = theorem1_simplified(p, n, eps)
        rep.notes.append("thm1Simplified: validity unknown (threshold on n unquantified)")
        rep.table_base = table_base(n)
        rep.notes.append("tableBase: reconstructed formula")
        if n in PUBLISHED_TABLE:
            dev = abs(rep.table_base / mpmath.mpf(PUBLISHED_TABLE[n]) - 1)
            if dev > TABLE_TOLERANCE:
                rep.flags.append(TABLE_MISMATCH)
    else:
        rep.binom_chain, rep.chain_budget = binom, (bs, bt)
        rep.thm2_closed = theorem2_closed_form(p)
        rep.thm2_lambda, rep.lam = best_theorem2_lambda(p)
    rep.census = census(p, n)
    # census findings concern the subfield count, not the order bound
    rep.notes.extend(f"census:{f}" for f in rep.census.flags)
    for name, value in rep.closed_forms().items():
        for code, ref in ((CLOSED_FORM_EXCEEDS_EXACT, exact), (CLOSED_FORM_EXCEEDS_CHAIN, rep.binom_chain)):
            c = compare_real_int(value, ref)
            if c > 0:
                rep.flags.append(f"{code}:{name}")
            elif c == 0:
                rep.notes.append(f"INCONCLUSIVE:{name} vs {ref}")
    return rep
