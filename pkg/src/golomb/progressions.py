"""Exact algebra of arithmetic progressions over two carriers.

A progression is either ``a + b*N0`` (all a + b*n with n >= 0) or the full
residue class ``a + b*Z``.  Systems of progressions are intersected exactly
through the Chinese Remainder Theorem: the pairwise criterion
``gcd(b_i, b_j) | (a_i - a_j)`` decides nonemptiness, and a consistent system
collapses to a single canonical class modulo lcm of the moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .arith import checked, require_positive
from .errors import PreconditionViolation


class Carrier(str, Enum):
    N0 = "N0"  # {a + b*n : n >= 0}
    Z = "Z"  # a + b*Z


@dataclass(frozen=True)
class Progression:
    """A residue-class set with an explicit carrier.

    ``N0`` progressions keep their literal offset (the least element matters);
    ``Z`` progressions are canonical with 0 <= a < b, so equality of classes
    is structural equality.
    """

    a: int
    b: int
    carrier: Carrier = Carrier.N0

    def __post_init__(self) -> None:
        require_positive("b", self.b)
        if self.carrier == Carrier.N0:
            if self.a < 0:
                raise PreconditionViolation(
                    f"an N0-carrier progression needs offset a >= 0, got {self.a}"
                )
        else:
            if not 0 <= self.a < self.b:
                raise PreconditionViolation(
                    f"a Z-carrier progression must be canonical (0 <= a < b), "
                    f"got a={self.a}, b={self.b}"
                )

    @classmethod
    def n0(cls, a: int, b: int) -> "Progression":
        """The set {a + b*n : n >= 0}."""
        return cls(a, b, Carrier.N0)

    @classmethod
    def z(cls, a: int, b: int) -> "Progression":
        """The residue class a + b*Z, canonicalized."""
        require_positive("b", b)
        return cls(a % b, b, Carrier.Z)

    def contains(self, x: int) -> bool:
        if (x - self.a) % self.b != 0:
            return False
        return x >= self.a if self.carrier == Carrier.N0 else True

    def least_positive(self) -> int:
        """Least member that is a positive integer."""
        start = max(self.a, 1) if self.carrier == Carrier.N0 else 1
        r = (self.a - start) % self.b
        return start + r

    def members(self, limit: int) -> list[int]:
        """All members in [1, limit], ascending."""
        require_positive("limit", limit)
        first = self.least_positive()
        return list(range(first, limit + 1, self.b))

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "carrier": self.carrier.value}

    def __str__(self) -> str:
        suffix = "N0" if self.carrier == Carrier.N0 else "Z"
        return f"{self.a}+{self.b}{suffix}"


def _require_nonempty(constraints: Sequence[Progression]) -> None:
    if not constraints:
        raise PreconditionViolation("the constraint list must be nonempty")


def crt_consistent(constraints: Sequence[Progression]) -> bool:
    """True iff gcd(b_i, b_j) divides a_i - a_j for every pair.

    Equivalent to nonemptiness of the intersection (over Z, and over N up to
    the offsets, where the intersection then contains an infinite
    progression).
    """
    _require_nonempty(constraints)
    return all(
        (p.a - q.a) % math.gcd(p.b, q.b) == 0 for p, q in combinations(constraints, 2)
    )


def _merge(a1: int, m1: int, a2: int, m2: int) -> Optional[tuple[int, int]]:
    """Combine x = a1 (mod m1) and x = a2 (mod m2) into one congruence."""
    g = math.gcd(m1, m2)
    if (a2 - a1) % g != 0:
        return None
    m = checked(m1 // g * m2, "lcm of moduli")
    # a1 + m1*t = a2 (mod m2)  =>  t = (a2-a1)/g * inv(m1/g) (mod m2/g)
    m2g = m2 // g
    t = ((a2 - a1) // g * pow(m1 // g, -1, m2g)) % m2g if m2g > 1 else 0
    return ((a1 + m1 * t) % m, m)


def intersect(constraints: Sequence[Progression]) -> Optional[Progression]:
    """The Z-carrier intersection of a consistent system, canonical.

    Returns ``None`` when the system is inconsistent.  Callers handling
    N0-carrier constraints clip the result with :func:`least_element`.
    """
    _require_nonempty(constraints)
    acc = (constraints[0].a % constraints[0].b, constraints[0].b)
    for c in constraints[1:]:
        merged = _merge(acc[0], acc[1], c.a % c.b, c.b)
        if merged is None:
            return None
        acc = merged
    return Progression.z(acc[0], acc[1])


def least_element(constraints: Iterable[Progression]) -> Optional[int]:
    """Least positive integer satisfying every constraint, or ``None``.

    The Z-class is computed first, then clipped to N and to the largest
    N0-carrier offset.  A consistent class always has positive members, so
    ``None`` means exactly that the system is CRT-inconsistent.
    """
    constraints = list(constraints)
    if not constraints:
        return 1
    cls = intersect(constraints)
    if cls is None:
        return None
    start = 1
    for c in constraints:
        if c.carrier == Carrier.N0:
            start = max(start, c.a, 1)
    return start + (cls.a - start) % cls.b
