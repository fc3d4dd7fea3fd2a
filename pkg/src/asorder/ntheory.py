"""Small integer helpers: primality, trial-division factoring, divisors."""

# Deterministic Miller-Rabin witness set, correct for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def is_prime(n):
    """Deterministic below 3.3e24, strong probable-prime test above."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n < 43 * 43:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_certified(n):
    return n < _MR_DETERMINISTIC_LIMIT and is_prime(n)


def factor_trial(m):
    """Factor a small positive integer by trial division.

    Returns a sorted list of (prime, exponent) pairs; [] for m == 1.
    """
    if m < 1:
        raise ValueError("m must be positive")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def prime_divisors(m):
    return [q for q, _ in factor_trial(m)]


def divisors(m):
    ds = [1]
    for q, e in factor_trial(m):
        ds = [d * q**k for d in ds for k in range(e + 1)]
    return sorted(ds)
