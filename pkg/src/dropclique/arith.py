"""Exact big-integer helpers (gmpy2 when present, stdlib otherwise)."""
from __future__ import annotations

import math
from typing import Sequence

try:
    import gmpy2

    def factorial(n: int):
        return gmpy2.fac(n)

    def exact_div(a, b):
        return gmpy2.divexact(a, b)

    mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    gmpy2 = None
    factorial = math.factorial
    mpz = int

    def exact_div(a, b):
        q, rem = divmod(a, b)
        assert rem == 0, "inexact division"
        return q


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(parts_i!)."""
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise ValueError(f"multinomial parts must be nonnegative, got {parts}")
    den = mpz(1)
    for p in parts:
        if p > 1:
            den *= factorial(p)
    return int(exact_div(factorial(sum(parts)), den))


def decimal_digits(x: int) -> int:
    return len(str(abs(int(x))))
