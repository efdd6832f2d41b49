"""Independent brute-force oracles used to pin expected values.

Everything in this module decides by enumeration or scanning only; none of it
shares code with the library paths it checks.
"""

from __future__ import annotations

import math

from golomb.progressions import Carrier, Progression


def naive_is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, n))


def divisors(x: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= x:
        if x % d == 0:
            small.append(d)
            if d != x // d:
                large.append(x // d)
        d += 1
    return small + large[::-1]


def dagger_by_enumeration(x: int, y: int) -> int:
    """Max over divisors of x that are coprime with y."""
    return max(d for d in divisors(x) if math.gcd(d, y) == 1)


def member_scan(constraints, limit: int) -> list[int]:
    """All x in [1, limit] satisfying every constraint, by direct membership.

    Steps over the constraint with the largest modulus and filters with the
    rest; no CRT arithmetic is involved.
    """
    anchor = max(constraints, key=lambda c: c.b)
    rest = [c for c in constraints if c is not anchor]
    first = anchor.a if anchor.carrier == Carrier.N0 else anchor.a % anchor.b
    if first < 1:
        first += anchor.b
    out = []
    for x in range(first, limit + 1, anchor.b):
        if all(_member(c, x) for c in rest):
            out.append(x)
    return out


def _member(c: Progression, x: int) -> bool:
    if (x - c.a) % c.b != 0:
        return False
    return x >= c.a if c.carrier == Carrier.N0 else True


def intersection_nonempty_by_scan(p: Progression, q: Progression, window: int) -> bool:
    """Nonemptiness of the trace of p and q on [1, window] by scanning."""
    return bool(member_scan([p, q], window))
