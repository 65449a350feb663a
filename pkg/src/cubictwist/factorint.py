"""Integer factorization: trial division plus Brent-cycle Pollard rho.

Sized for the 64-bit inputs this package actually sees (twist parameters
m and curve coefficients a). Deterministic: the rho cycle uses a fixed
increment schedule, not wall-clock randomness.
"""

from __future__ import annotations

import math

from .ff_arith import is_prime

_TRIAL_BOUND = 10_000


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = math.gcd(q, n)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


def factorize(n: int) -> dict[int, int]:
    """Full prime factorization of |n| as {prime: exponent}.

    factorize(0) raises; factorize(+-1) returns {}.

    >>> factorize(-360)
    {2: 3, 3: 2, 5: 1}
    """
    if n == 0:
        raise ValueError("0 has no prime factorization")
    n = abs(n)
    out: dict[int, int] = {}
    for p in range(2, _TRIAL_BOUND):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            out[v] = out.get(v, 0) + 1
            continue
        d = _pollard_rho(v)
        stack.append(d)
        stack.append(v // d)
    return dict(sorted(out.items()))


def prime_divisors(n: int) -> list[int]:
    """Sorted distinct primes dividing |n|."""
    return list(factorize(n))


def is_cubefree(n: int) -> bool:
    """True iff no prime cube divides n (n nonzero)."""
    return all(e < 3 for e in factorize(n).values())


def cubefree_core(n: int) -> int:
    """The cubefree part of |n|: divide out every full cube.

    cubefree_core(24) == 3, cubefree_core(8) == 1. Sign is dropped
    because -1 is itself a cube.
    """
    core = 1
    for p, e in factorize(n).items():
        core *= p ** (e % 3)
    return core


def is_perfect_square(n: int) -> bool:
    """Exact integer square test (False for negative n)."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n
