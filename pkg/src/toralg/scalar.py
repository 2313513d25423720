"""Exact rational scalars.

Everything in this package computes over Q. Coefficients are arbitrary
precision rationals kept in lowest terms with positive denominator, which
is exactly what gmpy2.mpq (fast) and fractions.Fraction (always available)
both guarantee. gmpy2 is the declared dependency; the Fraction fallback
keeps the package importable on interpreters without the C extension.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as _mpq

    def Q(num=0, den=1):
        return _mpq(num, den)

    _RAT_TYPES = (type(_mpq(0)), int)
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Fraction

    def Q(num=0, den=1):
        return _Fraction(num, den)

    _RAT_TYPES = (_Fraction, int)

ZERO = Q(0)
ONE = Q(1)


def is_rational(x) -> bool:
    return isinstance(x, _RAT_TYPES)


def qstr(x) -> str:
    """Format a rational as 'p' or 'p/q' (lowest terms, q > 0)."""
    x = Q(x)
    num, den = x.numerator, x.denominator
    return str(num) if den == 1 else f"{num}/{den}"


def parse_q(s) -> "Q":
    """Parse 'p' or 'p/q' into an exact rational."""
    if isinstance(s, str):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return Q(int(num), int(den))
        return Q(int(s))
    if is_rational(s):
        return Q(s)
    raise ValueError(f"not a rational literal: {s!r}")


def binom(top, k: int):
    """Exact binomial with arbitrary (possibly negative rational) top."""
    if k < 0:
        return ZERO
    out = ONE
    top = Q(top)
    for i in range(k):
        out = out * (top - i)
    for i in range(2, k + 1):
        out = out / i
    return out


def falling(top, k: int):
    """Falling factorial top*(top-1)*...*(top-k+1), exact."""
    out = ONE
    top = Q(top)
    for i in range(k):
        out = out * (top - i)
    return out
