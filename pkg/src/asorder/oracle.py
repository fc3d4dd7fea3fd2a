"""Brute-force checks that run independently of the counting formulas.

Everything here works directly from definitions: I_{s,t} is enumerated
vector by vector, the product map is evaluated in K, and multiplicative
orders come from a factorization of |K^*| plus repeated powering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from . import bounds
from .artin_schreier import KContext, KElem, is_as_irreducible, make_K, theta_plus_b
from .census import is_in_A_n
from .errors import (
    ASError,
    FactorizationBudgetExceeded,
    InvalidBudget,
    RequiresAEqualsOne,
    TooLarge,
)
from .ff_core import FqElem, make_field
from .ntheory import is_prime, is_prime_certified
from .report import compare_real_int, fmt_real

ENUMERATION_CAP = 10**7
ORDER_GUARD_BITS = 63
TRIAL_LIMIT = 10**6

ORDER_BELOW_EXACT = "ORDER_BELOW_EXACT"
CLOSED_FORM_EXCEEDS_ORDER = "CLOSED_FORM_EXCEEDS_ORDER"


@dataclass(frozen=True)
class ExponentVector:
    r: tuple
    s_budget: int
    t_budget: int

    def __post_init__(self):
        pos = sum(x for x in self.r if x > 0)
        neg = -sum(x for x in self.r if x < 0)
        if pos > self.s_budget or neg > self.t_budget:
            raise InvalidBudget(f"{self.r} is not in I_{{{self.s_budget},{self.t_budget}}}")


def _vectors(N, s, t):
    """Members of I_{s,t} as plain tuples, lexicographic order."""
    r = [0] * N

    def rec(j, s_rem, t_rem):
        if j == N:
            yield tuple(r)
            return
        for v in range(-t_rem, s_rem + 1):
            r[j] = v
            if v >= 0:
                yield from rec(j + 1, s_rem - v, t_rem)
            else:
                yield from rec(j + 1, s_rem, t_rem + v)
        r[j] = 0

    return rec(0, s, t)


def _guard(N, s, t, cap):
    size = bounds.ist_count_exact(N, s, t)
    if size > cap:
        raise TooLarge(f"|I_{{{s},{t}}}| = {size} with N={N} exceeds the cap {cap}", size)
    return size


def enumerate_ist(N, s, t, cap=ENUMERATION_CAP):
    _guard(N, s, t, cap)
    for r in _vectors(N, s, t):
        yield ExponentVector(r, s, t)


def lambda_eval(vec, g: KElem) -> KElem:
    """prod_j g^(r_j p^j), straight from the definition."""
    ctx = g.ctx
    r = vec.r if isinstance(vec, ExponentVector) else tuple(vec)
    if len(r) != ctx.N:
        raise ValueError(f"vector length {len(r)} != N = {ctx.N}")
    out = ctx.one()
    for j, rj in enumerate(r):
        if rj:
            out = out * g ** (rj * ctx.p**j)
    return out


def lambda_linear(vec, ctx: KContext, b: FqElem) -> KElem:
    """prod_j (theta + j + b^(p^j))^(r_j), the a = 1 linear-factor form."""
    if ctx.a != 1:
        raise RequiresAEqualsOne("linear-factor form needs a = 1")
    r = vec.r if isinstance(vec, ExponentVector) else tuple(vec)
    base = ctx.base
    out = ctx.one()
    c = b.coeffs
    for j, rj in enumerate(r):
        if rj:
            shift = base.add(c, base.const(j))
            out = out * KElem((shift, base.one) + (base.zero,) * (ctx.p - 2), ctx) ** rj
        c = base.pow(c, base.p)
    return out


class InjectivityResult(NamedTuple):
    injective: bool
    images: int
    witness: tuple | None
    exploratory: bool


def injectivity_check(ctx, b, s, t, cap=ENUMERATION_CAP):
    """Is r -> prod (theta+b)^(r_j p^j) one to one on I_{s,t}?

    Runs in exploratory mode when b lies in A_n (no injectivity promised);
    a collision is returned as a pair of vectors.
    """
    if ctx.a != 1:
        raise RequiresAEqualsOne("injectivity check is stated for a = 1")
    if s < 0 or t < 0 or s + t > ctx.p - 1:
        raise InvalidBudget("need s, t >= 0 and s + t <= p - 1")
    _guard(ctx.N, s, t, cap)
    exploratory = is_in_A_n(b)
    g = theta_plus_b(ctx, b)
    # table[j][k] = g^(k p^j) for -t <= k <= s
    table = []
    gj, gj_inv = g, g.inv()
    for _ in range(ctx.N):
        row = {0: ctx.one()}
        for k in range(1, s + 1):
            row[k] = row[k - 1] * gj
        for k in range(1, t + 1):
            row[-k] = row[-k + 1] * gj_inv
        table.append(row)
        gj, gj_inv = gj**ctx.p, gj_inv**ctx.p
    seen = {}
    for r in _vectors(ctx.N, s, t):
        img = ctx.one()
        for j, rj in enumerate(r):
            if rj:
                img = img * table[j][rj]
        prev = seen.setdefault(img.c, r)
        if prev is not r:
            return InjectivityResult(False, len(seen), (prev, r), exploratory)
    return InjectivityResult(True, len(seen), None, exploratory)


def distinctness_check(ctx, b):
    """Are the values i + b^(p^i), 0 <= i < np, pairwise distinct?

    Returns (True, None) or (False, (i, j)) for the first clash found.
    """
    if ctx.a != 1:
        raise RequiresAEqualsOne("distinctness is stated for a = 1")
    base = ctx.base
    seen = {}
    c = b.coeffs
    for i in range(ctx.N):
        v = base.add(c, base.const(i))
        if v in seen:
            return False, (seen[v], i)
        seen[v] = i
        c = base.pow(c, base.p)
    return True, None


# --- factorization and orders ------------------------------------------------

def _rho(m, c):
    """Brent's variant of Pollard rho with f(x) = x^2 + c; returns a factor or m."""
    y, r, q, g = 2, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % m
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = (y * y + c) % m
                q = q * abs(x - y) % m
            g = math.gcd(q, m)
            k += 128
        r *= 2
    if g == m:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % m
            g = math.gcd(abs(x - ys), m)
    return g


def factorize(m, allow_large=False, max_rho_attempts=64):
    """Complete factorization of m >= 1 as sorted [(prime, exponent)].

    Trial division below 10^6, then Pollard rho with increments c = 1, 2, ...
    Inputs above 2^63 are refused unless allow_large is set.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m >= 2**63 and not allow_large:
        raise FactorizationBudgetExceeded(f"{m} exceeds the 2^63 factorization guard")
    fac = {}
    rest = m
    d = 2
    while d < TRIAL_LIMIT and d * d <= rest:
        while rest % d == 0:
            fac[d] = fac.get(d, 0) + 1
            rest //= d
        d += 1 if d == 2 else 2
    stack = [rest] if rest > 1 else []
    while stack:
        x = stack.pop()
        if is_prime(x):
            fac[x] = fac.get(x, 0) + 1
            continue
        for c in range(1, max_rho_attempts + 1):
            f = _rho(x, c)
            if 1 < f < x:
                stack += [f, x // f]
                break
        else:
            raise FactorizationBudgetExceeded(f"rho found no factor of {x}")
    out = sorted(fac.items())
    assert math.prod(q**e for q, e in out) == m
    return out


_factorize_cached = lru_cache(maxsize=256)(factorize)


@dataclass
class OrderResult:
    group_order: int
    factorization: list
    element_order: int
    certified: bool


def multiplicative_order(u: KElem, guard_bits=ORDER_GUARD_BITS):
    if not u:
        raise ZeroDivisionError("zero has no multiplicative order")
    ctx = u.ctx
    go = ctx.group_order
    if go.bit_length() > guard_bits:
        raise TooLarge(f"|K*| = {go} exceeds 2^{guard_bits}", go)
    fac = _factorize_cached(go, allow_large=guard_bits > 63)
    order = go
    for q, e in fac:
        for _ in range(e):
            if (u ** (order // q)).is_one():
                order //= q
            else:
                break
    assert (u**order).is_one()
    certified = all(is_prime_certified(q) for q, _ in fac)
    return OrderResult(go, fac, order, certified)


# --- end-to-end --------------------------------------------------------------

@dataclass
class VerificationRecord:
    p: int
    n: int
    a: int
    b: str
    irreducible: bool | None = None
    b_outside_an: bool | None = None
    exact_bound: int | None = None
    exact_budget: tuple | None = None
    order: int | None = None
    order_factorization: list | None = None
    order_certified: bool | None = None
    closed_forms: dict = field(default_factory=dict)
    injectivity: dict | None = None
    flags: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    error: str | None = None

    def to_json(self):
        return {
            "instance": {"p": str(self.p), "n": str(self.n), "a": str(self.a), "b": self.b},
            "irreducible": self.irreducible,
            "bOutsideAn": self.b_outside_an,
            "exactBound": None if self.exact_bound is None else str(self.exact_bound),
            "exactBudget": None if self.exact_budget is None
            else {"s": str(self.exact_budget[0]), "t": str(self.exact_budget[1])},
            "order": None if self.order is None else str(self.order),
            "groupOrderFactorization": None if self.order_factorization is None
            else [[str(q), str(e)] for q, e in self.order_factorization],
            "orderCertified": self.order_certified,
            "closedForms": self.closed_forms,
            "injectivity": self.injectivity,
            "flags": list(self.flags),
            "notes": list(self.notes),
            "error": self.error,
        }


def verify_instance(p, n, a, b, g=None, s=None, t=None, guard_bits=ORDER_GUARD_BITS,
                    cap=ENUMERATION_CAP, eps=0.01):
    """Run the full pipeline on one instance; failures are recorded, not raised."""
    rec = VerificationRecord(p, n, a, str(b))
    try:
        base = make_field(p, n, g)
        if isinstance(b, FqElem):
            bb = b
        elif isinstance(b, int):
            bb = base.elem([b])
        elif isinstance(b, str):
            bb = base.parse(b)
        else:
            bb = base.elem(b)
        rec.b = str(bb)
        aa = base.elem([a])
        rec.irreducible = is_as_irreducible(base, aa).irreducible
        if not rec.irreducible:
            rec.error = f"IrreducibilityFailure: x^{p} - x - {a} has a root in F_{p}^{n}"
            return rec
        ctx = make_K(base, aa)
        rec.b_outside_an = not is_in_A_n(bb)
        if not rec.b_outside_an:
            rec.notes.append("b lies in a proper subfield: the lower bound is not promised")
        rep = bounds.bound_report(p, n, eps)
        rec.exact_bound, rec.exact_budget = rep.exact_best, rep.exact_budget
        rec.flags.extend(rep.flags)
        rec.notes.extend(rep.notes)
        res = multiplicative_order(theta_plus_b(ctx, bb), guard_bits)
        rec.order, rec.order_factorization = res.element_order, res.factorization
        rec.order_certified = res.certified
        if res.element_order < rep.exact_best:
            if rec.b_outside_an:
                rec.flags.append(ORDER_BELOW_EXACT)
            else:
                rec.notes.append(ORDER_BELOW_EXACT + " (hypothesis on b not met)")
        for name, value in rep.closed_forms().items():
            le_exact = compare_real_int(value, rep.exact_best)
            le_order = compare_real_int(value, res.element_order)
            rec.closed_forms[name] = {
                "value": fmt_real(value),
                "vsExact": _cmp_word(le_exact),
                "vsOrder": _cmp_word(le_order),
            }
            if le_order > 0:
                rec.flags.append(f"{CLOSED_FORM_EXCEEDS_ORDER}:{name}")
        if s is not None and t is not None:
            if a == 1:
                inj = injectivity_check(ctx, bb, s, t, cap)
                ok, wit = distinctness_check(ctx, bb)
                rec.injectivity = {
                    "s": str(s),
                    "t": str(t),
                    "injective": inj.injective,
                    "images": str(inj.images),
                    "exploratory": inj.exploratory,
                    "witness": None if inj.witness is None else [list(map(str, v)) for v in inj.witness],
                    "distinct": ok,
                    "distinctWitness": None if wit is None else [str(i) for i in wit],
                }
            else:
                rec.notes.append("injectivity check skipped: stated for a = 1")
    except (ASError, ZeroDivisionError) as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def _cmp_word(c):
    return {-1: "below", 0: "inconclusive", 1: "above"}[c]
