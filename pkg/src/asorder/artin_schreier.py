"""The Artin-Schreier extension K = F_q[x]/(x^p - x - a), a in F_p^*.

An element of K is stored as p coefficients over F_q (raw tuples, see
:mod:`asorder.ff_core`), coefficient of theta^i at index i.  Products are
reduced with theta^p = theta + a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import (
    ContextMismatch,
    FieldMismatch,
    NotInPrimeField,
    Reducible,
    RequiresAEqualsOne,
)
from .ff_core import FieldParams, FqElem, trace_to_fp

EXHAUSTIVE_ROOT_LIMIT = 3**6


class IrreducibilityResult(NamedTuple):
    irreducible: bool
    method: str
    paths: dict

    def __bool__(self):
        return self.irreducible


def _has_root(base, a):
    p = base.p
    for x in base.elements():
        if not any(base.sub(base.sub(base.pow(x.coeffs, p), x.coeffs), a.coeffs)):
            return True
    return False


def is_as_irreducible(base: FieldParams, a: FqElem) -> IrreducibilityResult:
    """Decide irreducibility of x^p - x - a over F_q.

    Every applicable route is run and they must agree:
      * "fast": a in F_p^*, irreducible iff p does not divide n;
      * "trace": irreducible iff Tr(a) != 0;
      * "exhaustive": root search, only for q <= 729.
    """
    if a.params != base:
        raise FieldMismatch("a is not an element of the base field")
    paths = {"trace": trace_to_fp(a) != 0}
    method = "trace"
    if a.in_prime_field() and a.coeffs[0] != 0:
        paths["fast"] = base.n % base.p != 0
        method = "fast"
    if base.q <= EXHAUSTIVE_ROOT_LIMIT:
        paths["exhaustive"] = not _has_root(base, a)
    verdicts = set(paths.values())
    assert len(verdicts) == 1, f"irreducibility routes disagree: {paths}"
    return IrreducibilityResult(verdicts.pop(), method, paths)


@dataclass(frozen=True)
class KContext:
    base: FieldParams
    a: int
    N: int = field(init=False)
    group_order: int = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "N", self.base.n * self.base.p)
        object.__setattr__(self, "group_order", self.base.p**self.N - 1)

    @property
    def p(self):
        return self.base.p

    @property
    def size(self):
        return self.base.p**self.N

    # raw operations on tuples of raw F_q tuples
    def _mul(self, u, v):
        base, p, n = self.base, self.base.p, self.base.n
        width = 2 * n - 1
        acc = [[0] * width for _ in range(2 * p - 1)]
        for i, x in enumerate(u):
            if not any(x):
                continue
            for j, y in enumerate(v):
                if not any(y):
                    continue
                row = acc[i + j]
                for k, xk in enumerate(x):
                    if xk:
                        for m, ym in enumerate(y):
                            row[k + m] += xk * ym
        coeffs = [_reduce_wide(base, row) for row in acc]
        # theta^(p+k) = theta^(k+1) + a * theta^k
        a = self.a
        for d in range(2 * p - 2, p - 1, -1):
            c = coeffs[d]
            if any(c):
                coeffs[d - p + 1] = base.add(coeffs[d - p + 1], c)
                coeffs[d - p] = base.add(coeffs[d - p], base.scale(a, c))
        return tuple(coeffs[:p])

    def _one(self):
        return (self.base.one,) + (self.base.zero,) * (self.p - 1)

    def _pow(self, u, e):
        if e < 0:
            u, e = self._inv(u), -e
        result = self._one()
        while e:
            if e & 1:
                result = self._mul(result, u)
            e >>= 1
            if e:
                u = self._mul(u, u)
        return result

    def _inv(self, u):
        if not any(any(c) for c in u):
            raise ZeroDivisionError("inverse of zero in K")
        return self._pow(u, self.group_order - 1)

    def elem(self, coeffs):
        """Build a KElem from up to p coefficients (FqElem, raw tuples or ints)."""
        raw = []
        for c in coeffs:
            if isinstance(c, FqElem):
                if c.params != self.base:
                    raise FieldMismatch("coefficient from a different field")
                raw.append(c.coeffs)
            elif isinstance(c, int):
                raw.append(self.base.const(c))
            else:
                raw.append(self.base.elem(c).coeffs)
        if len(raw) > self.p:
            raise ValueError("too many coefficients for K")
        raw += [self.base.zero] * (self.p - len(raw))
        return KElem(tuple(raw), self)

    def one(self):
        return KElem(self._one(), self)

    def theta(self):
        return self.elem([0, 1])

    def parse(self, text):
        return self.elem([self.base.parse(part) for part in text.split(";")])


def _reduce_wide(base, row):
    n, p = base.n, base.p
    low = row[:n]
    for k, red in enumerate(base._red):
        c = row[n + k]
        if c:
            for i in range(n):
                low[i] += c * red[i]
    return tuple(c % p for c in low)


@dataclass(frozen=True)
class KElem:
    c: tuple
    ctx: KContext

    @property
    def coeffs(self):
        return tuple(FqElem(x, self.ctx.base) for x in self.c)

    def _check(self, other):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatch("elements belong to different extensions")
        return other.c

    def __add__(self, other):
        oc = self._check(other)
        return KElem(tuple(self.ctx.base.add(x, y) for x, y in zip(self.c, oc)), self.ctx)

    def __sub__(self, other):
        oc = self._check(other)
        return KElem(tuple(self.ctx.base.sub(x, y) for x, y in zip(self.c, oc)), self.ctx)

    def __mul__(self, other):
        return KElem(self.ctx._mul(self.c, self._check(other)), self.ctx)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        return KElem(self.ctx._pow(self.c, e), self.ctx)

    def inv(self):
        return KElem(self.ctx._inv(self.c), self.ctx)

    def __bool__(self):
        return any(any(x) for x in self.c)

    def is_one(self):
        return self.c == self.ctx._one()

    def __str__(self):
        return ";".join(",".join(map(str, x)) for x in self.c)


def make_K(base: FieldParams, a) -> KContext:
    """K = F_q[x]/(x^p - x - a) for a in F_p^*."""
    if isinstance(a, int):
        a = FqElem(base.const(a), base)
    if not a.in_prime_field():
        raise NotInPrimeField("a must lie in the prime field F_p")
    if not is_as_irreducible(base, a):
        raise Reducible(f"x^{base.p} - x - {a.coeffs[0]} has a root in F_{base.q}")
    return KContext(base, a.coeffs[0])


def k_arith(u, v, op, e=None):
    if op == "add":
        return u + v
    if op == "mul":
        return u * v
    if op == "inv":
        return u.inv()
    if op == "pow":
        return u**e
    raise ValueError(f"unknown op {op!r}")


def theta_plus_b(ctx: KContext, b: FqElem) -> KElem:
    if b.params != ctx.base:
        raise FieldMismatch("b is not in the base field of K")
    return ctx.elem([b, 1])


def frobenius_identity_table(ctx, jmax):
    """Rows (j, theta^(p^j), holds) for 1 <= j <= jmax, checking theta^(p^j) = theta + j."""
    if ctx.a != 1:
        raise RequiresAEqualsOne("the identity theta^(p^j) = theta + j needs a = 1")
    if not 0 <= jmax <= ctx.N:
        raise ValueError(f"jmax must lie in [0, {ctx.N}]")
    theta = ctx.theta()
    t = theta
    rows = []
    for j in range(1, jmax + 1):
        t = t**ctx.p
        rows.append((j, t, t == theta + ctx.elem([j])))
    return rows


def frobenius_identity_check(ctx, jmax):
    return all(ok for _, _, ok in frobenius_identity_table(ctx, jmax))


def tau_transport(u: KElem, target: KContext) -> KElem:
    """h(x) -> h(a x), from F_q[x]/(x^p - x - a) to F_q[x]/(x^p - x - 1)."""
    src = u.ctx
    if target.base != src.base or target.a != 1:
        raise ContextMismatch("target must be the a = 1 extension over the same base")
    base, a = src.base, src.a
    scale = 1
    out = []
    for c in u.c:
        out.append(base.scale(scale, c))
        scale = scale * a % base.p
    return KElem(tuple(out), target)
