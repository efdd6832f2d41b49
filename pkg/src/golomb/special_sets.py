"""Closedness and non-closedness certificates for polynomial image sets.

Image sets of x**2 + n*x are closed: any point outside the set is separated
by a progression a + p*N0 for a prime p modulo which the shifted quadratic
has no root.  Image sets of eighth powers are not closed: the equation
x**8 = 16 has no integer solution, yet it has roots modulo every odd prime
power (by quadratic reciprocity facts plus Hensel lifting), so 16 sits in
the closure of the set of eighth powers without belonging to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .arith import (
    checked,
    factorize,
    int_nth_root,
    is_prime,
    next_prime,
    primes_up_to,
    require_positive,
)
from .errors import (
    InternalInvariantViolation,
    MemberInput,
    NotFoundWithinBound,
    PreconditionViolation,
)
from .progressions import Progression, least_element


@dataclass(frozen=True)
class QuadraticImageSet:
    """The set {x**2 + n*x : x >= 1}, with exact membership via discriminant."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise PreconditionViolation(f"the parameter must be >= 0, got {self.n}")

    def preimage(self, z: int) -> Optional[int]:
        """The positive x with x**2 + n*x = z, if any."""
        if z < 1:
            return None
        disc = self.n * self.n + 4 * z
        root = math.isqrt(disc)
        if root * root != disc or (root - self.n) % 2 != 0:
            return None
        x = (root - self.n) // 2
        return x if x >= 1 else None

    def contains(self, z: int) -> bool:
        return self.preimage(z) is not None

    def members_up_to(self, limit: int) -> list[int]:
        out = []
        x = 1
        while x * x + self.n * x <= limit:
            out.append(x * x + self.n * x)
            x += 1
        return out


@dataclass(frozen=True)
class FrobCertificate:
    """Separating prime for a point outside {x**2 + n*x}, window-verified."""

    n: int
    a: int
    p: int
    window: int


def quadratic_has_root_mod(n: int, a: int, p: int) -> bool:
    """Whether x**2 + n*x - a has a root modulo p, by exhaustive scan."""
    return any((x * x + n * x - a) % p == 0 for x in range(p))


def frob_closedness_certificate(
    n: int, a: int, prime_bound: int = 10_000, window: int = 10_000
) -> FrobCertificate:
    """Least prime p > a (p <= prime_bound) separating a from {x**2 + n*x}.

    The certifying property is that x**2 + n*x - a has no root modulo p;
    then a + p*N0 misses the image set entirely, which is re-verified on
    [1, window] by direct enumeration of the set.  Raises
    :class:`MemberInput` when a belongs to the set, and
    :class:`NotFoundWithinBound` when no prime up to the bound certifies
    (density guarantees existence, but with no effective bound).
    """
    if n < 0:
        raise PreconditionViolation(f"the parameter must be >= 0, got {n}")
    require_positive("a", a)
    image = QuadraticImageSet(n)
    x = image.preimage(a)
    if x is not None:
        raise MemberInput(f"{a} = {x}**2 + {n}*{x} belongs to the image set")
    p = None
    for candidate in primes_up_to(prime_bound):
        if candidate > a and not quadratic_has_root_mod(n, a, candidate):
            p = candidate
            break
    if p is None:
        raise NotFoundWithinBound(
            f"no certifying prime <= {prime_bound} for n={n}, a={a}"
        )
    for z in image.members_up_to(window):
        if z >= a and (z - a) % p == 0:
            raise InternalInvariantViolation(
                f"member {z} of the image set lies in {a}+{p}N0"
            )
    return FrobCertificate(n=n, a=a, p=p, window=window)


@dataclass(frozen=True)
class FamilyMember:
    """One member of the disjoint closed superconnected family.

    X_n is the intersection of p_n*N with the image of x**2 + n*x; its
    preimage decomposes into the two displayed progressions, whose union is
    superconnected because the first has offset 0.
    """

    n: int
    p: int
    preimage: tuple[Progression, Progression]


def disjoint_family_member(n: int) -> FamilyMember:
    """The least prime p_n > n**2 + n and the preimage decomposition of X_n."""
    require_positive("n", n)
    p = next_prime(n * n + n)
    return FamilyMember(
        n=n,
        p=p,
        preimage=(Progression.n0(0, p), Progression.n0(p - n, p)),
    )


@dataclass(frozen=True)
class FamilyDisjointness:
    """Result of the scan for common members of X_n and X_m."""

    n: int
    m: int
    window: int
    disjoint: bool
    common: tuple[int, ...]
    # the contradiction bounds: any common point would force a preimage
    # y <= m**2 - n**2 on one side and y >= p_m - m on the other
    y_upper_bound: int
    y_lower_bound: int

    @property
    def margin(self) -> int:
        return self.y_lower_bound - self.y_upper_bound


def verify_family_disjoint(n: int, m: int, window: int) -> FamilyDisjointness:
    """Direct-scan disjointness of X_n and X_m on [1, window], n < m.

    Membership is decided by enumerating image values, independently of the
    argument that proves disjointness; the returned record also reports the
    bound pair behind that argument.
    """
    require_positive("n", n)
    require_positive("m", m)
    require_positive("window", window)
    if not n < m:
        raise PreconditionViolation(f"need n < m, got n={n}, m={m}")
    fam_n, fam_m = disjoint_family_member(n), disjoint_family_member(m)
    members_n = {
        z for z in QuadraticImageSet(n).members_up_to(window) if z % fam_n.p == 0
    }
    members_m = {
        z for z in QuadraticImageSet(m).members_up_to(window) if z % fam_m.p == 0
    }
    common = tuple(sorted(members_n & members_m))
    return FamilyDisjointness(
        n=n,
        m=m,
        window=window,
        disjoint=not common,
        common=common,
        y_upper_bound=m * m - n * n,
        y_lower_bound=fam_m.p - m,
    )


def _legendre(a: int, p: int) -> int:
    return pow(a, (p - 1) // 2, p)


def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """Smallest nonnegative square root of a modulo an odd prime, if any.

    Exhaustive scan below 10**4; Tonelli-Shanks above.
    """
    require_positive("p", p, minimum=3)
    if not is_prime(p) or p == 2:
        raise PreconditionViolation(f"p must be an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    if p <= 10_000:
        for r in range(p):
            if r * r % p == a:
                return r
        return None
    if _legendre(a, p) != 1:
        return None
    root = _tonelli_shanks(a, p)
    return min(root, p - root)


def _tonelli_shanks(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _legendre(z, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, square = 0, t
        while square != 1:
            square = square * square % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


def root_x8_16_mod_p(p: int) -> int:
    """A solution of x**8 = 16 modulo an odd prime.

    One of 2, -2, -1 is always a quadratic residue mod an odd prime.  A
    square root of 2 or -2 is directly an eighth root of 16; from a square
    root i of -1 the element 1 + i satisfies (1 + i)**8 = 16.
    """
    if not is_prime(p) or p == 2:
        raise PreconditionViolation(f"p must be an odd prime, got {p}")
    r = sqrt_mod_prime(2, p)
    if r is None:
        r = sqrt_mod_prime(-2, p)
    if r is not None:
        root = r
    else:
        i = sqrt_mod_prime(-1, p)
        if i is None:
            raise InternalInvariantViolation(
                f"none of 2, -2, -1 is a square modulo {p}"
            )
        root = (1 + i) % p
    if pow(root, 8, p) != 16 % p:
        raise InternalInvariantViolation(f"{root}**8 != 16 modulo {p}")
    return root


@lru_cache(maxsize=None)
def hensel_lift(p: int, k: int) -> int:
    """The canonical root of x**8 = 16 modulo p**k, lifted step by step.

    Starts from the root modulo p and raises the precision one power at a
    time; the derivative 8*x**7 never vanishes modulo p (a root divisible
    by p would make x**8 - 16 indivisible by p), so every step is valid.
    """
    require_positive("k", k)
    if not is_prime(p) or p == 2:
        raise PreconditionViolation(f"p must be an odd prime, got {p}")
    checked(p**k, "p**k")
    r = root_x8_16_mod_p(p)
    modulus = p
    for _ in range(1, k):
        modulus *= p
        derivative = 8 * pow(r, 7, p)
        if derivative % p == 0:
            raise InternalInvariantViolation(
                f"derivative vanishes modulo {p} at root {r}"
            )
        correction = (r**8 - 16) * pow(derivative, -1, modulus)
        r = (r - correction) % modulus
        if pow(r, 8, modulus) != 16 % modulus:
            raise InternalInvariantViolation(
                f"lifted value {r} is not a root modulo {p}**{k}"
            )
    return r


def closure_point_witness_x8(b: int) -> int:
    """Least x >= 16 with x**8 = 16 modulo b, for odd b >= 3.

    Per-prime-power roots come from Hensel lifting and are glued by CRT, so
    x**8 lands in 16 + b*N0: every neighborhood of 16 meets the set of
    eighth powers, although 16 itself is not one.  b = 1 is allowed and
    trivial (every x qualifies, so the answer is 16 itself).
    """
    require_positive("b", b)
    if b % 2 == 0:
        raise PreconditionViolation(
            f"b must be odd (16 + b*N0 is a neighborhood of 16 only for odd b), got {b}"
        )
    system = [
        Progression.z(hensel_lift(p, e) % p**e, p**e) for p, e in factorize(b)
    ]
    base = least_element(system)
    if base is None:
        raise InternalInvariantViolation("prime-power CRT system inconsistent")
    x = base if base >= 16 else base + ((16 - base + b - 1) // b) * b
    if pow(x, 8, b) != 16 % b:
        raise InternalInvariantViolation(f"{x}**8 != 16 modulo {b}")
    return x


@dataclass(frozen=True)
class WangRecord:
    """Bracketing certificate that x**8 = 16 has no integer solution."""

    target: int
    bracket: tuple[int, int]
    values: tuple[int, int]


def wang_no_integer_solution() -> WangRecord:
    """1**8 = 1 < 16 < 256 = 2**8, and x**8 is strictly increasing."""
    record = WangRecord(target=16, bracket=(1, 2), values=(1**8, 2**8))
    if not record.values[0] < record.target < record.values[1]:
        raise InternalInvariantViolation("bracket values do not enclose the target")
    return record


def power_image_contains(z: int, exponent: int) -> bool:
    """Membership of z in {x**exponent : x >= 1}, by exact integer root."""
    require_positive("z", z)
    require_positive("exponent", exponent)
    return int_nth_root(z, exponent) ** exponent == z


@dataclass(frozen=True)
class X8nWitness:
    """16**n in the closure of {x**(8n)} without belonging to it."""

    n: int
    point: int
    image_set_member: int
    base_x: int
    modulus: int


def x8n_closure_witness(n: int, b: int) -> X8nWitness:
    """Witness pair for the n-th power transport of the eighth-power set.

    The point 16**n is 2**(4n), never an (8n)-th power; the member
    x**(8n) for x = closure_point_witness_x8(b) is congruent to 16**n
    modulo b and larger, so it lies in the neighborhood 16**n + b*N0.
    """
    require_positive("n", n)
    point = checked(16**n, "16**n")
    x = closure_point_witness_x8(b)
    member = checked(x ** (8 * n), "x**(8n)")
    if power_image_contains(point, 8 * n):
        raise InternalInvariantViolation(f"16**{n} is an (8{n})-th power")
    if member <= point or (member - point) % b != 0:
        raise InternalInvariantViolation(
            f"{x}**(8*{n}) does not witness the neighborhood 16**{n} + {b}N0"
        )
    if not power_image_contains(member, 8 * n):
        raise InternalInvariantViolation(f"{x}**(8*{n}) failed the membership recheck")
    return X8nWitness(n=n, point=point, image_set_member=member, base_x=x, modulus=b)
