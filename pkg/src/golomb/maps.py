"""Continuous self-maps of the Golomb space.

A function on an initial segment [1, n] is *progressive* when prime divisors
never disappear (Pi_x is contained in Pi_f(x)) and f(y) - f(x) is divisible
by the part of y - x coprime to f(x).  Finite-to-one progressive maps are
continuous, which yields two families of certificates:

* for polynomials with zero constant term, an explicit neighborhood
  certificate around any point;
* for polynomials with nonzero constant term, a verified disjoint open
  split of the image of a superconnected set, refuting continuity.

Increasing progressive functions form a tree under extension; every node
has infinitely many successors, computed exactly by CRT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .arith import dagger, next_prime, prime_divisors, require_positive
from .errors import (
    InternalInvariantViolation,
    NotSelfMap,
    PreconditionViolation,
    WindowViolation,
)
from .progressions import Progression, intersect


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial a0 + a1*x + ... + ad*x^d."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coefficients)
        if not coeffs:
            raise PreconditionViolation("a polynomial needs at least one coefficient")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def constant_term(self) -> int:
        return self.coefficients[0]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def maps_into_naturals(self, window: int) -> bool:
        return all(self(x) >= 1 for x in range(1, window + 1))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0 and self.degree > 0:
                continue
            terms.append(f"{c}" if i == 0 else f"{c}x^{i}")
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class ProgressiveCheck:
    """Outcome of the progressive-function test, with the first violation."""

    ok: bool
    condition: Optional[int] = None  # 1: prime divisors, 2: difference divisibility
    witness: Optional[tuple[int, ...]] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _as_values(values: Sequence[int]) -> list[int]:
    values = list(values)
    for k, v in enumerate(values, start=1):
        require_positive(f"f({k})", v)
    return values


def is_progressive(values: Sequence[int], require_increasing: bool = False) -> ProgressiveCheck:
    """Check both progressive conditions on a table f(1), ..., f(n).

    With ``require_increasing`` the table is also checked to be strictly
    increasing (membership in the extension tree).
    """
    values = _as_values(values)
    n = len(values)
    if n == 0:
        return ProgressiveCheck(ok=True)
    for k in range(1, n + 1):
        fk = values[k - 1]
        if not set(prime_divisors(k)) <= set(prime_divisors(fk)):
            return ProgressiveCheck(
                ok=False,
                condition=1,
                witness=(k,),
                message=f"prime divisors of {k} are not all divisors of f({k}) = {fk}",
            )
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            d = dagger(y - x, values[x - 1])
            if (values[y - 1] - values[x - 1]) % d != 0:
                return ProgressiveCheck(
                    ok=False,
                    condition=2,
                    witness=(x, y),
                    message=(
                        f"f({y}) - f({x}) = {values[y - 1] - values[x - 1]} is not "
                        f"divisible by ({y} - {x})†f({x}) = {d}"
                    ),
                )
    if require_increasing:
        for k in range(1, n):
            if values[k] <= values[k - 1]:
                return ProgressiveCheck(
                    ok=False,
                    condition=2,
                    witness=(k, k + 1),
                    message=f"not strictly increasing at positions {k}, {k + 1}",
                )
    return ProgressiveCheck(ok=True)


def in_tree(values: Sequence[int]) -> ProgressiveCheck:
    """Membership of the table in the tree of increasing progressive maps."""
    return is_progressive(values, require_increasing=True)


def successor_constraints(values: Sequence[int]) -> list[Progression]:
    """The CRT system whose positive members are the valid next values.

    For a table on [1, n] the candidate f(n+1) must be divisible by every
    prime of n+1 and congruent to f(k) modulo (n+1-k)†f(k) for each k.
    """
    values = _as_values(values)
    n = len(values)
    system = [Progression.z(0, p) for p in prime_divisors(n + 1)]
    for k in range(1, n + 1):
        m = dagger(n + 1 - k, values[k - 1])
        if m > 1:
            system.append(Progression.z(values[k - 1] % m, m))
    return system


def verify_tree_crt_conditions(values: Sequence[int]) -> list[tuple]:
    """Check the two consistency conditions that make the system solvable.

    Both are theorems for increasing progressive tables, so a failure is an
    internal invariant violation, never a user error.  Returns the list of
    checked facts for reporting.
    """
    values = _as_values(values)
    n = len(values)
    checked_facts: list[tuple] = []
    for p in prime_divisors(n + 1):
        for k in range(1, n + 1):
            g = math.gcd(p, dagger(n + 1 - k, values[k - 1]))
            if values[k - 1] % g != 0:
                raise InternalInvariantViolation(
                    f"conditions for a progressive table failed: gcd(p, "
                    f"(n+1-k)†f(k)) = {g} does not divide f({k})"
                )
            checked_facts.append(("prime", p, k, g))
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            g = math.gcd(
                dagger(n + 1 - k, values[k - 1]), dagger(n + 1 - l, values[l - 1])
            )
            if (values[l - 1] - values[k - 1]) % g != 0:
                raise InternalInvariantViolation(
                    f"conditions for a progressive table failed: f({l}) - f({k}) "
                    f"is not divisible by {g}"
                )
            checked_facts.append(("pair", k, l, g))
    return checked_facts


def enumerate_successors(values: Sequence[int], count: int) -> list[int]:
    """The first ``count`` valid extensions of an increasing progressive table.

    Each returned value v makes values + [v] an increasing progressive table
    on [1, n+1]; this is re-verified before returning.
    """
    values = _as_values(values)
    if count < 0:
        raise PreconditionViolation(f"count must be >= 0, got {count}")
    check = in_tree(values)
    if not check:
        raise PreconditionViolation(f"the table is not increasing progressive: {check.message}")
    if count == 0:
        return []
    verify_tree_crt_conditions(values)
    system = successor_constraints(values)
    cls = intersect(system) if system else Progression.z(0, 1)
    if cls is None:
        raise InternalInvariantViolation("successor CRT system inconsistent")
    floor = values[-1] if values else 0
    first = floor + 1 + (cls.a - (floor + 1)) % cls.b
    out = list(range(first, first + count * cls.b, cls.b))
    for v in out:
        extension = in_tree(list(values) + [v])
        if not extension:
            raise InternalInvariantViolation(
                f"successor {v} fails re-verification: {extension.message}"
            )
    return out


@dataclass(frozen=True)
class ContinuityCertificate:
    """Neighborhood data certifying continuity of f at x toward f(x)+b*N0.

    On the window, every point of x + d*N0 outside the finite exceptional
    set maps into f(x) + b*N0.
    """

    x: int
    fx: int
    d: int
    removed: tuple[int, ...]
    window: int


TableOrPolynomial = Union[IntPolynomial, Sequence[int]]


def _evaluator(f: TableOrPolynomial):
    if isinstance(f, IntPolynomial):
        return f, None
    table = _as_values(f)
    return (lambda x: table[x - 1]), len(table)


def continuity_certificate(
    f: TableOrPolynomial, x: int, b: int, window: int = 10_000
) -> ContinuityCertificate:
    """Build and verify the neighborhood certificate at x for target modulus b.

    Requires gcd(b, f(x)) = 1.  The domain-side modulus equals b, and the
    exceptional set collects the points of x + b*N0 within the window whose
    image falls below f(x); every other window point of the progression is
    verified to map into f(x) + b*N0.  A point whose image is not even
    congruent to f(x) modulo b proves the input non-progressive and raises
    :class:`WindowViolation`.
    """
    require_positive("x", x)
    require_positive("b", b)
    require_positive("window", window)
    func, domain_limit = _evaluator(f)
    limit = window if domain_limit is None else min(window, domain_limit)
    if x > limit:
        raise PreconditionViolation(f"x = {x} is beyond the usable domain [1, {limit}]")
    fx = func(x)
    if fx < 1:
        raise NotSelfMap(f"f({x}) = {fx} is not a positive integer")
    if math.gcd(b, fx) != 1:
        raise PreconditionViolation(
            f"the target modulus must be coprime with f(x); "
            f"got gcd({b}, {fx}) = {math.gcd(b, fx)}"
        )
    removed = []
    for y in range(x, limit + 1, b):
        fy = func(y)
        if fy < 1:
            raise NotSelfMap(f"f({y}) = {fy} is not a positive integer")
        if (fy - fx) % b != 0:
            raise WindowViolation(
                f"f({y}) = {fy} is not congruent to f({x}) = {fx} modulo {b} "
                f"although {b} divides {y} - {x}; the map is not progressive"
            )
        if fy < fx:
            removed.append(y)
    return ContinuityCertificate(x=x, fx=fx, d=b, removed=tuple(removed), window=limit)


@dataclass(frozen=True)
class DiscontinuitySplit:
    """A verified disjoint open split of f(X) for X = p*N ∪ (x + p*N0)."""

    x: int
    fx: int
    a0: int
    p: int
    window: int
    u_sample: tuple[int, ...]
    v_sample: tuple[int, ...]


@dataclass(frozen=True)
class PolyVerdict:
    """Tagged continuity verdict for an integer polynomial."""

    kind: str  # "continuous_zero_constant" | "continuous_constant" | "discontinuous"
    polynomial: IntPolynomial
    split: Optional[DiscontinuitySplit] = None

    def to_json(self) -> dict:
        payload: dict = {
            "kind": self.kind,
            "coefficients": list(self.polynomial.coefficients),
        }
        if self.split is not None:
            payload["witness"] = {
                "x": self.split.x,
                "fx": self.split.fx,
                "a0": self.split.a0,
                "p": self.split.p,
                "window": self.split.window,
                "u_sample": list(self.split.u_sample),
                "v_sample": list(self.split.v_sample),
            }
        return payload


def polynomial_continuity(
    p: IntPolynomial, check_window: int = 100, split_window: Optional[int] = None
) -> PolyVerdict:
    """Decide continuity of a polynomial self-map.

    Non-constant polynomials are continuous exactly when the constant term
    vanishes.  Constant polynomials are trivially continuous and get their
    own verdict.  For a nonzero constant term the verdict carries a verified
    split: the image of the superconnected set X = q*N ∪ (x + q*N0) (q a
    suitable prime) decomposes into two disjoint nonempty open pieces.
    """
    if not p.maps_into_naturals(check_window):
        bad = next(x for x in range(1, check_window + 1) if p(x) < 1)
        raise NotSelfMap(
            f"polynomial leaves the positive integers at x = {bad} (value {p(x=bad)})"
        )
    if p.is_constant:
        return PolyVerdict(kind="continuous_constant", polynomial=p)
    a0 = p.constant_term
    if a0 == 0:
        return PolyVerdict(kind="continuous_zero_constant", polynomial=p)

    x = next(
        (x for x in range(1, check_window + 1) if p(x) != a0),
        None,
    )
    if x is None:  # a non-constant polynomial takes the value a0 finitely often
        raise InternalInvariantViolation("no point with f(x) != a0 in the window")
    fx = p(x)
    q = next_prime(max(abs(a0), x, fx))
    while (fx - a0) % q == 0:
        q = next_prime(q)
    window = split_window if split_window is not None else max(300, 4 * q)
    u_points = [p(z) for z in range(q, window + 1, q)]
    v_points = [p(z) for z in range(x, window + 1, q)]
    if not u_points or not v_points:
        raise InternalInvariantViolation("split window too small to populate both pieces")
    if any((u - a0) % q for u in u_points):
        raise InternalInvariantViolation("piece U escapes its residue class")
    if any((v - fx) % q for v in v_points):
        raise InternalInvariantViolation("piece V escapes its residue class")
    if set(u_points) & set(v_points):
        raise InternalInvariantViolation("the two pieces are not disjoint")
    return PolyVerdict(
        kind="discontinuous",
        polynomial=p,
        split=DiscontinuitySplit(
            x=x,
            fx=fx,
            a0=a0,
            p=q,
            window=window,
            u_sample=tuple(u_points[:10]),
            v_sample=tuple(v_points[:10]),
        ),
    )


def half_square(x: int) -> int:
    """x(x+1)/2, the discontinuous rational-coefficient benchmark map."""
    return x * (x + 1) // 2


def half_square_discontinuity_witness(b: int) -> int:
    """A point of 2 + b*N0 whose image under x(x+1)/2 is even.

    Every neighborhood 2 + b*N0 of 2 (b odd) contains the point 4n with
    n = (b+1)/2, and its image 2n(4n+1) is even, hence outside the
    neighborhood 3 + 2*N0 of f(2) = 3.
    """
    require_positive("b", b)
    if b % 2 == 0:
        raise PreconditionViolation(
            f"b must be odd (2 + b*N0 is a neighborhood of 2 only for odd b), got {b}"
        )
    n = (b + 1) // 2
    point = 4 * n
    if (point - 2) % b != 0:
        raise InternalInvariantViolation(f"{point} is not in 2+{b}N0")
    image = half_square(point)
    if image != 2 * n * (4 * n + 1) or image % 2 != 0:
        raise InternalInvariantViolation(f"image {image} is not the expected even value")
    return point
