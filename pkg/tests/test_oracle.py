import math
import random

import pytest
import sympy

from asorder.artin_schreier import make_K, theta_plus_b
from asorder.bounds import best_exact_bound, ist_count_exact
from asorder.census import is_in_A_n
from asorder.errors import FactorizationBudgetExceeded, InvalidBudget, RequiresAEqualsOne, TooLarge
from asorder.ff_core import make_field
from asorder.oracle import (
    ExponentVector,
    distinctness_check,
    enumerate_ist,
    factorize,
    injectivity_check,
    lambda_eval,
    lambda_linear,
    multiplicative_order,
    verify_instance,
)

from conftest import brute_order


def unit(N, j):
    return tuple(int(i == j) for i in range(N))


# --- enumeration -------------------------------------------------------------

def test_enumerate_examples():
    assert sum(1 for _ in enumerate_ist(3, 1, 1)) == 13
    assert [v.r for v in enumerate_ist(4, 0, 0)] == [(0, 0, 0, 0)]
    vecs = [v.r for v in enumerate_ist(5, 1, 0)]
    assert len(vecs) == 6
    assert set(vecs) == {(0,) * 5} | {unit(5, j) for j in range(5)}


def test_enumeration_is_lexicographic_and_duplicate_free():
    vecs = [v.r for v in enumerate_ist(4, 2, 1)]
    assert vecs == sorted(vecs)
    assert len(set(vecs)) == len(vecs) == ist_count_exact(4, 2, 1)


def test_enumeration_guard():
    with pytest.raises(TooLarge) as exc:
        list(enumerate_ist(40, 4, 4, cap=1000))
    assert exc.value.size == ist_count_exact(40, 4, 4)


def test_exponent_vector_membership():
    ExponentVector((1, -1, 0), 1, 1)
    with pytest.raises(InvalidBudget):
        ExponentVector((1, 1, 0), 1, 1)
    with pytest.raises(InvalidBudget):
        ExponentVector((-2, 0, 0), 3, 1)


# --- product map -------------------------------------------------------------

def test_lambda_examples(K27, F3):
    g = theta_plus_b(K27, F3.elem([0]))
    assert lambda_eval((0, 0, 0), g).is_one()
    assert lambda_eval(unit(3, 0), g) == g
    th = K27.theta()
    assert lambda_eval(unit(3, 1), th) == th + K27.elem([1])


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (2, 3)])
def test_lambda_two_forms_agree(p, n):
    ctx = make_K(make_field(p, n), 1)
    rng = random.Random(p + 10 * n)
    bs = list(ctx.base.elements())
    s, t = max(1, (p - 1) // 2), max(0, (p - 1) - max(1, (p - 1) // 2))
    vecs = [v.r for v in enumerate_ist(ctx.N, s, t)]
    for _ in range(40):
        b = rng.choice(bs)
        r = rng.choice(vecs)
        g = theta_plus_b(ctx, b)
        assert lambda_eval(r, g) == lambda_linear(r, ctx, b)


def test_lambda_linear_requires_a_one():
    ctx = make_K(make_field(5, 1), 2)
    with pytest.raises(RequiresAEqualsOne):
        lambda_linear((0,) * 5, ctx, ctx.base.elem([0]))


# --- distinctness and injectivity ---------------------------------------------

def test_distinctness_examples(K27, K729, F3, F9):
    for b in F3.elements():
        assert distinctness_check(K27, b) == (True, None)
    assert distinctness_check(K729, F9.elem([0, 1])) == (True, None)
    assert distinctness_check(K729, F9.elem([1])) == (False, (0, 3))


def test_injectivity_examples(K27, K729, F3, F9):
    res = injectivity_check(K27, F3.elem([0]), 1, 1)
    assert res.injective and res.images == 13 and not res.exploratory
    res = injectivity_check(K729, F9.elem([0, 1]), 1, 1)
    assert res.injective and res.images == 43
    res = injectivity_check(K729, F9.elem([1]), 1, 1)
    assert res.exploratory and not res.injective
    u, v = res.witness
    g = theta_plus_b(K729, F9.elem([1]))
    assert u != v and lambda_eval(u, g) == lambda_eval(v, g)
    # i = 0 and i = 3 give the same linear factor theta + 1
    assert lambda_eval(unit(6, 0), g) == lambda_eval(unit(6, 3), g)


def test_injectivity_budget_guard(K27, F3):
    with pytest.raises(InvalidBudget):
        injectivity_check(K27, F3.elem([0]), 2, 1)


@pytest.mark.parametrize("p,n", [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (2, 5), (3, 4)])
def test_lemmas_hold_for_every_generic_b(p, n):
    ctx = make_K(make_field(p, n), 1)
    for b in ctx.base.elements():
        ok, _ = distinctness_check(ctx, b)
        if is_in_A_n(b):
            continue
        assert ok
        for s in range(p):
            for t in range(p - s):
                assert injectivity_check(ctx, b, s, t).injective


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (3, 4), (7, 2), (2, 9)])
def test_distinctness_fails_inside_subfields(p, n):
    ctx = make_K(make_field(p, n), 1)
    failures = [b for b in ctx.base.elements() if is_in_A_n(b) and not distinctness_check(ctx, b)[0]]
    assert failures


# --- factorization and orders --------------------------------------------------

def test_factorize_examples():
    assert factorize(26) == [(2, 1), (13, 1)]
    assert factorize(728) == [(2, 3), (7, 1), (13, 1)]
    assert factorize(59048) == [(2, 3), (11, 2), (61, 1)]
    assert factorize(1) == []


def test_factorize_against_sympy():
    rng = random.Random(99)
    cases = [p**k - 1 for p in (3, 5, 7, 11, 13) for k in range(2, 16) if p**k < 2**63]
    cases += [rng.randrange(2, 2**62) for _ in range(30)]
    cases += [1000003 * 1000033, (2**31 - 1) * (2**31 - 1)]
    for m in cases:
        fac = factorize(m)
        assert math.prod(q**e for q, e in fac) == m
        assert all(sympy.isprime(q) for q, _ in fac)
        assert dict(fac) == sympy.factorint(m)


def test_factorize_guard():
    with pytest.raises(FactorizationBudgetExceeded):
        factorize(2**64 + 1)
    assert factorize(2**64 + 1, allow_large=True) == [(274177, 1), (67280421310721, 1)]


def test_order_examples(K27, F3):
    th = K27.theta()
    assert multiplicative_order(th).element_order == 13
    assert multiplicative_order(th + K27.elem([1])).element_order == 13
    res = multiplicative_order(K27.one())
    assert res.element_order == 1 and res.certified
    # theta^13 = theta^9 theta^3 theta = (theta+2)(theta+1) theta
    assert (th + K27.elem([2])) * (th + K27.elem([1])) * th == K27.one()


@pytest.mark.parametrize("p,n,a", [(3, 1, 1), (3, 1, 2), (2, 1, 1), (2, 3, 1), (3, 2, 1)])
def test_order_against_repeated_multiplication(p, n, a):
    ctx = make_K(make_field(p, n), a)
    rng = random.Random(p * n)
    elems = [theta_plus_b(ctx, b) for b in ctx.base.elements()]
    elems += [ctx.elem([[rng.randrange(p) for _ in range(n)] for _ in range(p)]) for _ in range(10)]
    for u in elems:
        if not u:
            continue
        res = multiplicative_order(u)
        assert res.element_order == brute_order(u)
        assert res.group_order % res.element_order == 0
        for q, _ in factorize(res.element_order):
            assert not (u ** (res.element_order // q)).is_one()


def test_order_guard(K729):
    with pytest.raises(TooLarge):
        multiplicative_order(K729.theta(), guard_bits=5)
    with pytest.raises(ZeroDivisionError):
        multiplicative_order(K729.elem([0]))


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (3, 4), (7, 2), (11, 1)])
def test_core_inequality_order_at_least_exact(p, n):
    ctx = make_K(make_field(p, n), 1)
    exact = best_exact_bound(p, n)[0]
    bs = [b for b in ctx.base.elements() if not is_in_A_n(b)]
    for b in bs[:12]:
        assert multiplicative_order(theta_plus_b(ctx, b)).element_order >= exact


# --- end-to-end ------------------------------------------------------------------

def test_verify_examples(F9):
    rec = verify_instance(3, 1, 1, 0)
    assert rec.order == 13 and rec.exact_bound == 13
    assert "CLOSED_FORM_EXCEEDS_ORDER:thm2_closed" in rec.flags
    assert rec.closed_forms["thm2_closed"]["vsOrder"] == "above"

    rec = verify_instance(3, 2, 1, "0,1")
    assert rec.order == 728 and rec.exact_bound == 43
    assert rec.flags == []
    assert rec.closed_forms["thm1_closed"]["vsExact"] == "below"

    rec = verify_instance(3, 3, 1, 0)
    assert rec.irreducible is False and rec.error.startswith("IrreducibilityFailure")


def test_verify_with_budget_and_subfield_b():
    rec = verify_instance(3, 2, 1, "1", s=1, t=1)
    assert rec.b_outside_an is False
    assert rec.injectivity["exploratory"] is True
    assert rec.injectivity["distinct"] is False
    assert rec.injectivity["distinctWitness"] == ["0", "3"]
    assert rec.order == 13


def test_verify_general_a():
    rec = verify_instance(5, 1, 2, 3)
    assert rec.error is None and rec.order >= rec.exact_bound


def test_verify_records_errors_instead_of_raising():
    assert verify_instance(4, 1, 1, 0).error.startswith("NotPrime")
    assert verify_instance(3, 2, 1, "0,1", guard_bits=4).error.startswith("TooLarge")
    assert verify_instance(3, 2, 1, "0,1", s=3, t=3).error.startswith("InvalidBudget")
