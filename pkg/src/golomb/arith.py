"""Exact elementary number theory on positive integers.

Everything here is deterministic and exact: factorization and primality use
trial division, never probabilistic tests.  Results whose magnitude would
exceed ``MAX_MAGNITUDE`` raise :class:`~golomb.errors.MagnitudeError` instead
of being computed silently.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional

from .errors import MagnitudeError, PreconditionViolation

# Cap for exact results; large enough for every desk-scale query, small
# enough that a runaway input fails fast.
MAX_MAGNITUDE = 2**127 - 1


def require_positive(name: str, value: int, minimum: int = 1) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise PreconditionViolation(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise PreconditionViolation(f"{name} must be >= {minimum}, got {value}")
    return value


def checked(value: int, context: str = "result") -> int:
    """Return ``value`` unchanged, or raise if it exceeds the magnitude cap."""
    if abs(value) > MAX_MAGNITUDE:
        raise MagnitudeError(f"{context} exceeds the supported magnitude (2**127 - 1)")
    return value


def gcd(x: int, y: int) -> int:
    """Greatest common divisor of two positive integers."""
    require_positive("x", x)
    require_positive("y", y)
    return math.gcd(x, y)


def lcm(x: int, y: int) -> int:
    """Least common multiple, with an overflow guard."""
    require_positive("x", x)
    require_positive("y", y)
    return checked(x // math.gcd(x, y) * y, "lcm")


def coprime(x: int, y: int) -> bool:
    return gcd(x, y) == 1


@lru_cache(maxsize=None)
def factorize(x: int) -> tuple[tuple[int, int], ...]:
    """Exact prime factorization as ascending (prime, exponent) pairs.

    ``factorize(1)`` is the empty tuple.  Trial division up to sqrt(x).
    """
    require_positive("x", x)
    checked(x, "factorization input")
    pairs = []
    n = x
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                e += 1
                n //= d
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return tuple(pairs)


def prime_divisors(x: int) -> tuple[int, ...]:
    """The set of prime divisors of x, ascending."""
    return tuple(p for p, _ in factorize(x))


def prime_exponent(x: int, p: int) -> int:
    """Largest e with p**e dividing x (0 if p does not divide x)."""
    require_positive("x", x)
    require_positive("p", p, minimum=2)
    e = 0
    while x % p == 0:
        e += 1
        x //= p
    return e


def radical(x: int) -> int:
    """Product of the distinct prime divisors of x."""
    r = 1
    for p in prime_divisors(x):
        r *= p
    return r


def dagger(x: int, y: int) -> int:
    """The greatest divisor of x that is coprime with y."""
    require_positive("x", x)
    require_positive("y", y)
    g = math.gcd(x, y)
    while g != 1:
        x //= g
        g = math.gcd(x, y)
    return x


def is_square_free(x: int) -> bool:
    """True iff no prime square divides x."""
    return all(e == 1 for _, e in factorize(x))


@lru_cache(maxsize=1 << 20)
def is_prime(n: int) -> bool:
    """Deterministic primality by trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending (sieve of Eratosthenes)."""
    require_positive("n", n)
    checked(n, "sieve bound")
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i in range(2, n + 1) if sieve[i]]


def next_prime(n: int) -> int:
    """Least prime strictly greater than n."""
    candidate = n + 1
    while not is_prime(candidate):
        candidate += 1
    return candidate


def least_prime_in_progression(a: int, b: int, search_bound: int) -> Optional[int]:
    """Least prime in {a + b*n : n >= 0}, scanning up to ``search_bound``.

    A prime exists whenever gcd(a, b) = 1, but with no effective bound, so
    ``None`` (bound exhausted) is a reportable outcome rather than an error.
    """
    require_positive("a", a)
    require_positive("b", b)
    require_positive("search_bound", search_bound)
    if math.gcd(a, b) != 1:
        raise PreconditionViolation(
            f"a and b must be coprime (a progression with gcd(a, b) != 1 "
            f"contains at most one prime); got gcd({a}, {b}) = {math.gcd(a, b)}"
        )
    x = a
    while x <= search_bound:
        if is_prime(x):
            return x
        x += b
    return None


def int_nth_root(x: int, n: int) -> int:
    """Largest r with r**n <= x, exactly."""
    require_positive("x", x)
    require_positive("n", n)
    if n == 1 or x == 1:
        return x if n == 1 else 1
    if n == 2:
        return math.isqrt(x)
    # Newton on integers, started from a float guess.
    r = max(1, int(round(x ** (1.0 / n))))
    while r**n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def is_perfect_power(x: int) -> Optional[tuple[int, int]]:
    """Decompose x = base**exponent with exponent >= 2 maximal.

    The base is then itself not a perfect power.  Returns ``None`` when x is
    not a perfect power.  ``is_perfect_power(1)`` is ``None``: 1 = 1**k for
    every k, so the pair would be ill-defined.
    """
    require_positive("x", x)
    if x == 1:
        return None
    for k in range(x.bit_length(), 1, -1):
        r = int_nth_root(x, k)
        if r**k == x:
            return (r, k)
    return None
