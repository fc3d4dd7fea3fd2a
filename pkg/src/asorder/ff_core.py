"""Exact arithmetic in F_p and F_q = F_p[y]/(g(y)).

Elements of F_q are tuples of n residues mod p, coefficient of y^i at
index i.  The raw tuple operations live on :class:`FieldParams` so that
hot loops elsewhere (the Artin-Schreier layer) can skip the wrapper
objects; :class:`FqElem` is the checked, user-facing value type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DegreeMismatch, FieldMismatch, NotPrime, ReducibleModulus
from .ntheory import is_prime, prime_divisors


# --- polynomials over F_p (coefficient lists, constant term first) ---------

def parse_poly(text):
    """Parse "1,0,1" into (1, 0, 1), i.e. 1 + y^2."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial string")
    return tuple(int(c) for c in text.split(","))


def format_poly(coeffs):
    return ",".join(str(c) for c in coeffs)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, g, p):
    """Remainder of a modulo monic g."""
    a = list(a)
    dg = len(g) - 1
    for i in range(len(a) - 1, dg - 1, -1):
        c = a[i]
        if c:
            shift = i - dg
            for k in range(dg + 1):
                a[shift + k] = (a[shift + k] - c * g[k]) % p
    return _trim(a[:dg])


def _poly_mulmod(a, b, g, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod([c % p for c in prod], g, p)


def _poly_powmod(a, e, g, p):
    result = [1]
    base = _poly_mod(a, g, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, g, p)
        base = _poly_mulmod(base, base, g, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        monic = [c * inv % p for c in b]
        a, b = b, _poly_mod(a, monic, p)
    return a


def is_irreducible_fp(g, p):
    """Rabin's test for a monic polynomial g over F_p."""
    n = len(g) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    # x^(p^k) mod g for k = 0..n
    frob = [x]
    for _ in range(n):
        frob.append(_poly_powmod(frob[-1], p, g, p))
    if _trim(frob[n]) != _poly_mod(x, g, p):
        return False
    for r in prime_divisors(n):
        h = list(frob[n // r]) + [0] * 2
        h[1] = (h[1] - 1) % p
        if len(_poly_gcd(list(g), h, p)) > 1:
            return False
    return True


def smallest_irreducible(p, n):
    """Lexicographically smallest monic irreducible of degree n over F_p.

    Coefficients are compared constant term first.
    """
    for low in itertools.product(range(p), repeat=n):
        g = low + (1,)
        if is_irreducible_fp(g, p):
            return g
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    p: int
    n: int
    g: tuple
    q: int = field(init=False, compare=False)
    _red: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.n)
        # y^k mod g for k = n .. 2n-2, used by mul
        red = []
        for k in range(self.n, 2 * self.n - 1):
            mono = [0] * k + [1]
            r = _poly_mod(mono, self.g, self.p)
            red.append(tuple(r) + (0,) * (self.n - len(r)))
        object.__setattr__(self, "_red", tuple(red))

    # raw tuple operations; inputs are assumed canonical
    @property
    def zero(self):
        return (0,) * self.n

    @property
    def one(self):
        return (1,) + (0,) * (self.n - 1)

    def const(self, c):
        return (c % self.p,) + (0,) * (self.n - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def scale(self, c, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def mul(self, a, b):
        n, p = self.n, self.p
        if n == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        low = prod[:n]
        for k, row in enumerate(self._red):
            c = prod[n + k]
            if c:
                for i in range(n):
                    low[i] += c * row[i]
        return tuple(c % p for c in low)

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.pow(a, self.q - 2)

    def elem(self, coeffs):
        return FqElem.from_coeffs(self, coeffs)

    def parse(self, text):
        return self.elem(parse_poly(text))

    def elements(self):
        """Every element of F_q, in lexicographic coefficient order."""
        for c in itertools.product(range(self.p), repeat=self.n):
            yield FqElem(c, self)


@dataclass(frozen=True)
class FqElem:
    coeffs: tuple
    params: FieldParams

    @classmethod
    def from_coeffs(cls, params, coeffs):
        coeffs = tuple(int(c) % params.p for c in coeffs)
        if len(coeffs) > params.n:
            if any(coeffs[params.n:]):
                raise DegreeMismatch(f"{len(coeffs)} coefficients for degree-{params.n} field")
            coeffs = coeffs[:params.n]
        return cls(coeffs + (0,) * (params.n - len(coeffs)), params)

    def _check(self, other):
        if isinstance(other, int):
            return self.params.const(other)
        if self.params is not other.params and self.params != other.params:
            raise FieldMismatch("elements belong to different fields")
        return other.coeffs

    def __add__(self, other):
        return FqElem(self.params.add(self.coeffs, self._check(other)), self.params)

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.params.sub(self.coeffs, self._check(other)), self.params)

    def __rsub__(self, other):
        return FqElem(self.params.sub(self._check(other), self.coeffs), self.params)

    def __neg__(self):
        return FqElem(self.params.neg(self.coeffs), self.params)

    def __mul__(self, other):
        return FqElem(self.params.mul(self.coeffs, self._check(other)), self.params)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FqElem(self._check(other), self.params).inv()

    def __pow__(self, e):
        return FqElem(self.params.pow(self.coeffs, e), self.params)

    def inv(self):
        return FqElem(self.params.inv(self.coeffs), self.params)

    def __bool__(self):
        return any(self.coeffs)

    def in_prime_field(self):
        return not any(self.coeffs[1:])

    def __str__(self):
        return format_poly(self.coeffs)


def make_field(p, n, g=None):
    """Validated F_{p^n}; picks the smallest irreducible modulus when g is None."""
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if n < 1:
        raise DegreeMismatch("n must be >= 1")
    if g is None:
        g = smallest_irreducible(p, n)
    else:
        g = tuple(int(c) % p for c in g)
        if len(g) != n + 1:
            raise DegreeMismatch(f"modulus has degree {len(g) - 1}, expected {n}")
        if g[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if not is_irreducible_fp(g, p):
            raise ReducibleModulus(f"{format_poly(g)} is reducible over F_{p}")
    return FieldParams(p, n, tuple(g))


def fq_arith(x, y, op, e=None):
    """Dispatch helper: op in {"add", "sub", "mul", "inv", "pow"}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    if op == "pow":
        return x**e
    raise ValueError(f"unknown op {op!r}")


def frobenius(x, j):
    """x^(p^j); Frobenius on F_q has period n."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    prm = x.params
    c = x.coeffs
    for _ in range(j % prm.n):
        c = prm.pow(c, prm.p)
    return FqElem(c, prm)


def trace_to_fp(x):
    """Absolute trace Tr_{F_q/F_p}(x) as an int in [0, p)."""
    prm = x.params
    total = prm.zero
    c = x.coeffs
    for _ in range(prm.n):
        total = prm.add(total, c)
        c = prm.pow(c, prm.p)
    assert not any(total[1:]), f"trace left F_p: {total}"
    return total[0]
