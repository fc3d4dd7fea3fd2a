"""Number formatting and comparison helpers shared by the JSON reports."""

import json

import mpmath

# Relative band within which a real-vs-integer comparison is inconclusive.
COMPARE_BAND = 1e-9


def fmt_real(x, digits=15):
    """Scientific notation with `digits` significant digits, e.g. 2.56504197805991e+1."""
    x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        return str(x)
    if x == 0:
        return "0." + "0" * (digits - 1) + "e+0"
    sign = "-" if x < 0 else ""
    x = abs(x)
    with mpmath.workdps(digits + 20):
        e = int(mpmath.floor(mpmath.log10(x)))
        m = mpmath.nint(x / mpmath.mpf(10) ** e * mpmath.mpf(10) ** (digits - 1))
        if m >= 10**digits:
            m //= 10
            e += 1
        elif m < 10 ** (digits - 1):
            m *= 10
            e -= 1
    s = str(int(m))
    return f"{sign}{s[0]}.{s[1:]}e{e:+d}"


def compare_real_int(x, m, band=COMPARE_BAND):
    """Sign of x - m judged in log space; 0 means inside the inconclusive band.

    Both values must be positive.
    """
    with mpmath.workdps(40):
        d = mpmath.log(mpmath.mpf(x)) - mpmath.log(mpmath.mpf(m))
    if abs(d) <= band:
        return 0
    return 1 if d > 0 else -1


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
