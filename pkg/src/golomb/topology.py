"""The Golomb topology: basic opens, closures, and structural witnesses.

The base of the topology consists of progressions ``a + b*N0`` with coprime
``a, b``.  The closure of such a set is never materialized: it is the
symbolic intersection of the conditions ``p | x  or  p^l_p(b) | (x - a)``
over the prime divisors of ``b``, so membership costs one pass over the
prime factorization of the modulus.

Alongside the symbolic form lives :func:`in_closure_oracle`, which decides
closure membership from the definition alone (every small-modulus basic
neighborhood of the point must meet the open set, decided through exact CRT
consistency).  The two routes are compared point by point in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Optional, Sequence

from .arith import (
    checked,
    factorize,
    is_prime,
    is_square_free,
    prime_divisors,
    prime_exponent,
    primes_up_to,
    require_positive,
)
from .errors import (
    InternalInvariantViolation,
    PreconditionViolation,
    WindowExceeded,
)
from .progressions import Carrier, Progression, crt_consistent, least_element


@dataclass(frozen=True)
class BasicOpen:
    """A basic open set a + b*N0 of the Golomb topology (gcd(a, b) = 1)."""

    a: int
    b: int

    def __post_init__(self) -> None:
        require_positive("a", self.a)
        require_positive("b", self.b)
        if math.gcd(self.a, self.b) != 1:
            raise PreconditionViolation(
                f"a basic open needs coprime offset and modulus; "
                f"got gcd({self.a}, {self.b}) = {math.gcd(self.a, self.b)}"
            )

    @property
    def progression(self) -> Progression:
        return Progression.n0(self.a, self.b)

    def contains(self, x: int) -> bool:
        return x >= self.a and (x - self.a) % self.b == 0

    def __str__(self) -> str:
        return f"{self.a}+{self.b}N0"


@dataclass(frozen=True)
class ClosureDescriptor:
    """Symbolic closure of a basic open: per-prime divisibility conditions.

    ``x`` belongs to the closure iff x >= 1 and for every pair ``(p, q)``
    (with q = p**l_p(b)) either p divides x or q divides x - base_a.
    """

    base_a: int
    conditions: tuple[tuple[int, int], ...]

    def contains(self, x: int) -> bool:
        if x < 1:
            return False
        a = self.base_a
        return all(x % p == 0 or (x - a) % q == 0 for p, q in self.conditions)

    def members(self, limit: int) -> list[int]:
        return [x for x in range(1, limit + 1) if self.contains(x)]

    def to_json(self) -> dict:
        return {"a": self.base_a, "conditions": [list(c) for c in self.conditions]}


def closure(u: BasicOpen) -> ClosureDescriptor:
    """Closure of a basic open as a symbolic descriptor."""
    conditions = tuple((p, p**e) for p, e in factorize(u.b))
    return ClosureDescriptor(base_a=u.a, conditions=conditions)


@lru_cache(maxsize=1 << 17)
def _neighborhood(x: int, d: int) -> Progression:
    return Progression.n0(x, d)


def in_closure_oracle(x: int, u: BasicOpen, modulus_bound: Optional[int] = None) -> bool:
    """Closure membership decided from the definition, not the formula.

    ``x`` lies in the closure of ``u`` iff every basic neighborhood
    ``x + d*N0`` of ``x`` meets ``u``.  Each candidate ``d`` coprime to ``x``
    up to ``modulus_bound`` is tested by exact CRT consistency.  A point
    outside the closure is always separated by some d = p**l_p(b) <= b, so
    the default bound b makes the oracle exact for basic opens.
    """
    require_positive("x", x)
    bound = u.b if modulus_bound is None else modulus_bound
    if bound < u.b:
        raise PreconditionViolation(
            f"modulus_bound must be at least the open's modulus {u.b}, got {bound}"
        )
    target = u.progression
    for d in range(1, bound + 1):
        if math.gcd(d, x) == 1 and not crt_consistent([_neighborhood(x, d), target]):
            return False
    return True


def superconnected_witness(
    pieces: Sequence[Progression], opens: Sequence[BasicOpen], window: int
) -> int:
    """A common point of X and all the opens' closures, X = union of pieces.

    The first piece must have offset 0; that makes X superconnected, and a
    witness arises as the least element of the CRT system consisting of the
    first piece's modulus and one prime condition p*Z per prime dividing a
    refined modulus of each open's trace on X.
    """
    require_positive("window", window)
    if not pieces:
        raise PreconditionViolation("at least one piece is required")
    if not opens:
        raise PreconditionViolation("at least one open set is required")
    for piece in pieces:
        if piece.carrier != Carrier.N0:
            raise PreconditionViolation("pieces must be N0-carrier progressions")
    if pieces[0].a != 0:
        raise PreconditionViolation(
            f"the first piece must have offset 0, got {pieces[0].a}"
        )

    primes: set[int] = set()
    for u in opens:
        trace_piece = next(
            (p for p in pieces if crt_consistent([u.progression, p])), None
        )
        if trace_piece is None:
            raise PreconditionViolation(f"open {u} has empty trace on X")
        refined = checked(u.b // math.gcd(u.b, trace_piece.b) * trace_piece.b, "lcm")
        primes.update(prime_divisors(refined))

    system = [Progression.n0(0, pieces[0].b)]
    system += [Progression.z(0, p) for p in sorted(primes)]
    point = least_element(system)
    if point is None:  # all offsets are 0, so the system is consistent
        raise InternalInvariantViolation("offset-0 CRT system reported inconsistent")
    if point > window:
        raise WindowExceeded(
            f"witness {point} exceeds window {window}; any window >= {point} works"
        )
    for u in opens:
        if not closure(u).contains(point):
            raise InternalInvariantViolation(
                f"constructed point {point} escaped the closure of {u}"
            )
    return point


def f0_base_element(opens: Sequence[BasicOpen], window: Optional[int] = None) -> int:
    """Least square-free q with q*N inside every closure of the given opens.

    A prime p dividing some modulus b is needed exactly when p**l_p(b) > 2:
    for p**l_p(b) = 2 the condition "even or congruent to the odd offset"
    already holds for every integer.  q is the product of the needed primes.
    """
    if not opens:
        raise PreconditionViolation("at least one open set is required")
    required: set[int] = set()
    for u in opens:
        for p, e in factorize(u.b):
            if p**e > 2:
                required.add(p)
    q = reduce(lambda acc, p: acc * p, sorted(required), 1)

    if window is None:
        window = 10 * reduce(math.lcm, (u.b for u in opens), q)
    descriptors = [closure(u) for u in opens]
    for z in range(q, window + 1, q):
        if not all(d.contains(z) for d in descriptors):
            raise InternalInvariantViolation(
                f"{q}*N is not inside every closure: {z} escapes"
            )
    return q


@dataclass(frozen=True)
class FilterWitness:
    """Witness that cl(1 + a*N0) ∩ cl(x + b*N0) generates a member of F_x.

    The modulus b must be coprime to x, so that x + b*N0 is a neighborhood
    of x; every superset of the closure intersection then lies in the
    neighborhood-trace filter of x.
    """

    x: int
    a: int
    b: int

    def __post_init__(self) -> None:
        require_positive("x", self.x)
        require_positive("a", self.a)
        require_positive("b", self.b)
        if math.gcd(self.b, self.x) != 1:
            raise PreconditionViolation(
                f"b must be coprime to x; got gcd({self.b}, {self.x}) != 1"
            )

    def generator_members(self, window: int) -> list[int]:
        """Members of cl(1 + a*N0) ∩ cl(x + b*N0) within [1, window]."""
        one_side = closure(BasicOpen(1, self.a))
        x_side = closure(BasicOpen(self.x, self.b))
        return [
            z for z in range(1, window + 1) if one_side.contains(z) and x_side.contains(z)
        ]


@dataclass(frozen=True)
class Special1Witness:
    """Opens around two points whose closures intersect exactly in q*N."""

    q: int
    n: int
    ux: BasicOpen
    uy: BasicOpen
    window: int


def special1_witness(
    x: int, y: int, q: int, window: Optional[int] = None
) -> Special1Witness:
    """Construct U_x, U_y with cl(U_x) ∩ cl(U_y) = q*N, q square-free.

    Requires q > 1 square-free and coprime to both points.  n is minimal
    with p**n dividing x - y for no prime p | q; the opens are
    x + q**n * N0 and y + q**n * N0.  The equality of the closure
    intersection with q*N is re-verified on [1, window].
    """
    require_positive("x", x)
    require_positive("y", y)
    require_positive("q", q, minimum=2)
    if x == y:
        raise PreconditionViolation("the two points must be distinct")
    if not is_square_free(q):
        raise PreconditionViolation(f"q must be square-free, got {q}")
    if math.gcd(q, x) != 1 or math.gcd(q, y) != 1:
        raise PreconditionViolation(
            f"q must be coprime with both points; got q={q}, x={x}, y={y}"
        )
    diff = abs(x - y)
    n = 1 + max(prime_exponent(diff, p) for p in prime_divisors(q))
    qn = checked(q**n, "q**n")
    ux, uy = BasicOpen(x, qn), BasicOpen(y, qn)
    if window is None:
        window = 10 * qn
    cx, cy = closure(ux), closure(uy)
    for z in range(1, window + 1):
        if (cx.contains(z) and cy.contains(z)) != (z % q == 0):
            raise InternalInvariantViolation(
                f"closure intersection differs from {q}*N at {z}"
            )
    return Special1Witness(q=q, n=n, ux=ux, uy=uy, window=window)


def pi_via_filter(x: int, prime_bound: int) -> set[int]:
    """Recover the prime divisors of x topologically.

    For each prime p <= prime_bound, p*N belongs to the filter F_x exactly
    when the two-open construction around x and 1 succeeds, which happens
    iff p does not divide x.  The result is cross-checked against the
    factorization of x.
    """
    require_positive("x", x)
    require_positive("prime_bound", prime_bound)
    if x == 1:
        return set()
    found: set[int] = set()
    for p in primes_up_to(prime_bound):
        try:
            special1_witness(x, 1, p)
        except PreconditionViolation:
            found.add(p)
    expected = {p for p in prime_divisors(x) if p <= prime_bound}
    if found != expected:
        raise InternalInvariantViolation(
            f"filter-based prime recovery {sorted(found)} differs from "
            f"factorization {sorted(expected)}"
        )
    return found


def regular_neighborhood_for_prime(x: int, b: int, window: int = 10_000) -> int:
    """Exponent n such that primes in cl(x + b**n * N0) already lie in x + b*N0.

    Requires x prime, coprime to b, and |Pi_b| > 1.  n is minimal with
    b**n > x and r**n dividing p - x for no p, r among the prime divisors
    of b.  The containment is re-verified for all primes up to ``window``.
    """
    require_positive("x", x)
    require_positive("b", b)
    if not is_prime(x):
        raise PreconditionViolation(f"x must be prime, got {x}")
    if math.gcd(x, b) != 1:
        raise PreconditionViolation("x must not divide b (x and b must be coprime)")
    pi_b = prime_divisors(b)
    if len(pi_b) <= 1:
        raise PreconditionViolation(
            f"the modulus must have at least two distinct prime divisors, got {b}"
        )
    n = 1
    while b**n <= x:
        n += 1
    for p in pi_b:
        for r in pi_b:
            n = max(n, 1 + prime_exponent(abs(p - x), r))
    bn = checked(b**n, "b**n")
    desc = closure(BasicOpen(x, bn))
    for p in primes_up_to(window):
        if desc.contains(p) and not (p >= x and (p - x) % b == 0):
            raise InternalInvariantViolation(
                f"prime {p} lies in the closure but escapes {x}+{b}N0"
            )
    return n


def nonregularity_witness(a: int, b: int, q: int, c: int, window: int) -> int:
    """A point of cl(a + qbc*N0) ∩ q*N ∩ (a + b*N0), inside [1, window].

    Such a point shows the subspace a + b*N0 is not regular: it lies in the
    closure of every shrunken neighborhood W = a + qbc*N0 of a yet escapes
    V = a + qb*N0, which is disjoint from q*N.
    """
    require_positive("a", a)
    require_positive("b", b)
    require_positive("c", c)
    require_positive("window", window)
    if math.gcd(a, b) != 1:
        raise PreconditionViolation("a and b must be coprime")
    if not is_prime(q):
        raise PreconditionViolation(f"q must be prime, got {q}")
    if a % q == 0 or b % q == 0:
        raise PreconditionViolation("q must divide neither a nor b")
    if math.gcd(c, a) != 1:
        raise PreconditionViolation("c must be coprime with a")

    qbc = checked(q * b * c, "q*b*c")
    pi_b = set(prime_divisors(b))
    system = [Progression.z(0, p) for p in prime_divisors(qbc) if p not in pi_b]
    system += [Progression.n0(a, p ** prime_exponent(qbc, p)) for p in sorted(pi_b)]
    point = least_element(system)
    if point is None:  # moduli of distinct primes are pairwise coprime
        raise InternalInvariantViolation("prime-power CRT system inconsistent")
    if point > window:
        raise WindowExceeded(
            f"witness {point} exceeds window {window}; any window >= {point} works"
        )
    ok = (
        point % q == 0
        and point >= a
        and (point - a) % b == 0
        and closure(BasicOpen(a, qbc)).contains(point)
    )
    if not ok:
        raise InternalInvariantViolation(f"constructed point {point} fails a membership")
    return point


def disconnection_witness(a: int, b: int, x: int, y: int) -> int:
    """Minimal n with b**n not dividing x - y.

    The cover by classes z + b**n * Z is then clopen in the subspace
    a + b*N0 and separates x from y.  b = 1 is rejected: the subspace would
    be the whole (connected) space.
    """
    require_positive("a", a)
    require_positive("x", x)
    require_positive("y", y)
    if b < 2:
        raise PreconditionViolation(
            "the modulus must be at least 2 (for b = 1 the subspace is the "
            "whole space, which is connected)"
        )
    if x == y:
        raise PreconditionViolation("the two points must be distinct")
    member = Progression.n0(a, b)
    if not member.contains(x) or not member.contains(y):
        raise PreconditionViolation(f"both points must lie in {a}+{b}N0")
    diff = abs(x - y)
    n = 1
    while diff % b**n == 0:
        n += 1
    return n
