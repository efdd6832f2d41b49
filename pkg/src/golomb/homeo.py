"""Necessary-condition filter for candidate homeomorphisms.

Every homeomorphism of the Golomb space fixes 1, maps primes onto primes,
carries the prime-divisor set of x onto that of the image, and acts on
powers through a single multiplicative bijection of the exponents.  None of
these conditions is sufficient, so a candidate passing all of them is
reported as "necessary conditions only", never certified.

Candidates are examined through a finite window [1, N] of a hypothetical
bijection of the positive integers.  Checks that would need values outside
the window report ``Indeterminate`` with a skip count rather than guessing.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .arith import (
    factorize,
    is_perfect_power,
    is_prime,
    prime_divisors,
    primes_up_to,
    require_positive,
)
from .errors import NotFoundWithinBound, PreconditionViolation


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one necessary-condition check on a bijection window."""

    name: str
    verdict: Verdict
    witnesses: tuple = ()
    skipped: int = 0
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.witnesses],
            "skipped": self.skipped,
            "detail": self.detail,
        }


class BijectionWindow:
    """A finite window [1, N] of a candidate bijection of the positive integers.

    Values may exceed N; queries about the inverse of out-of-window values
    are answered ``None`` and counted as skips by the checks.
    """

    def __init__(self, values: Sequence[int]):
        values = list(values)
        if not values:
            raise PreconditionViolation("the window must contain at least h(1)")
        for k, v in enumerate(values, start=1):
            require_positive(f"h({k})", v)
        if len(set(values)) != len(values):
            raise PreconditionViolation("the window of a bijection must be injective")
        self._forward = tuple(values)
        self._backward = {v: x for x, v in enumerate(values, start=1)}

    @property
    def size(self) -> int:
        return len(self._forward)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= self.size:
            raise PreconditionViolation(f"{x} is outside the window [1, {self.size}]")
        return self._forward[x - 1]

    def inverse(self, value: int) -> Optional[int]:
        return self._backward.get(value)

    def values(self) -> tuple[int, ...]:
        return self._forward

    @classmethod
    def identity(cls, n: int) -> "BijectionWindow":
        require_positive("n", n)
        return cls(range(1, n + 1))

    @classmethod
    def from_prime_map(cls, n: int, prime_map: dict[int, int]) -> "BijectionWindow":
        """The multiplicative extension of a prime permutation, windowed.

        h(p1^e1 * ... * pk^ek) = map(p1)^e1 * ... * map(pk)^ek, with primes
        outside the map fixed.
        """
        require_positive("n", n)
        for p, q in prime_map.items():
            if not is_prime(p) or not is_prime(q):
                raise PreconditionViolation(f"{p} -> {q} is not a prime-to-prime entry")
        if len(set(prime_map.values())) != len(prime_map):
            raise PreconditionViolation("the prime map must be injective")
        out = []
        for x in range(1, n + 1):
            image = 1
            for p, e in factorize(x):
                image *= prime_map.get(p, p) ** e
            out.append(image)
        return cls(out)

    @classmethod
    def from_json(cls, payload) -> "BijectionWindow":
        if isinstance(payload, (str, bytes)):
            payload = json.loads(payload)
        if not isinstance(payload, dict) or "map" not in payload:
            raise PreconditionViolation('expected an object like {"n": 3, "map": [1, 2, 3]}')
        values = payload["map"]
        n = payload.get("n", len(values))
        if n != len(values):
            raise PreconditionViolation(
                f'the declared size n={n} does not match the {len(values)} mapped values'
            )
        return cls(values)

    @classmethod
    def from_csv(cls, text: str) -> "BijectionWindow":
        """Parse lines of "x,h(x)" pairs covering 1..N exactly once."""
        pairs = {}
        for row in csv.reader(io.StringIO(text)):
            if not row or row[0].strip().startswith("#"):
                continue
            if len(row) != 2:
                raise PreconditionViolation(f"expected two columns, got {row!r}")
            x, v = int(row[0]), int(row[1])
            if x in pairs:
                raise PreconditionViolation(f"duplicate entry for {x}")
            pairs[x] = v
        n = len(pairs)
        if sorted(pairs) != list(range(1, n + 1)):
            raise PreconditionViolation("the pairs must cover 1..N exactly once")
        return cls([pairs[x] for x in range(1, n + 1)])

    def to_json(self) -> dict:
        return {"n": self.size, "map": list(self._forward)}


def check_fixed_one(h: BijectionWindow) -> CheckResult:
    """h(1) must equal 1."""
    if h(1) == 1:
        return CheckResult("fixed_one", Verdict.PASS)
    return CheckResult(
        "fixed_one",
        Verdict.FAIL,
        witnesses=((1, h(1)),),
        detail=f"h(1) = {h(1)} != 1",
    )


def check_primes_preserved(h: BijectionWindow) -> CheckResult:
    """Primes must map to primes and only primes may map to primes.

    Image values are concrete integers, so their primality is decidable
    even beyond the window.
    """
    violations = []
    for x in range(1, h.size + 1):
        if is_prime(x) != is_prime(h(x)):
            violations.append((x, h(x)))
    if violations:
        return CheckResult(
            "primes_preserved",
            Verdict.FAIL,
            witnesses=tuple(violations[:10]),
            detail=f"{len(violations)} prime/composite mismatches, first at x={violations[0][0]}",
        )
    return CheckResult("primes_preserved", Verdict.PASS)


def check_prime_divisor_equivariance(h: BijectionWindow) -> CheckResult:
    """The prime divisors of h(x) must be the images of those of x."""
    for x in range(1, h.size + 1):
        expected = {h(p) for p in prime_divisors(x)}
        got = set(prime_divisors(h(x)))
        if got != expected:
            return CheckResult(
                "prime_divisor_equivariance",
                Verdict.FAIL,
                witnesses=((x, h(x), tuple(sorted(got)), tuple(sorted(expected))),),
                detail=(
                    f"at x={x}: prime divisors of h(x)={h(x)} are {sorted(got)}, "
                    f"but the images of the divisors of x are {sorted(expected)}"
                ),
            )
    return CheckResult("prime_divisor_equivariance", Verdict.PASS)


def _exponent_of(value: int, base: int) -> Optional[int]:
    """e with base**e == value, if one exists (base >= 2)."""
    e, acc = 0, 1
    while acc < value:
        acc *= base
        e += 1
    return e if acc == value else None


@dataclass(frozen=True)
class MonogenicResult:
    """Check that powers of a map into powers of h(a), with the exponents."""

    result: CheckResult
    base: int
    exponents: tuple[tuple[int, int], ...] = ()  # (k, mu(k)) pairs


def check_monogenic(h: BijectionWindow, a: int, max_power: int) -> MonogenicResult:
    """Each in-window h(a**k) must be a power of h(a); collects exponents."""
    require_positive("a", a, minimum=2)
    require_positive("max_power", max_power)
    ha = h(a) if a <= h.size else None
    if ha is None:
        return MonogenicResult(
            CheckResult("monogenic", Verdict.INDETERMINATE, skipped=max_power,
                        detail=f"a = {a} is outside the window"),
            base=a,
        )
    exponents = []
    skipped = 0
    for k in range(1, max_power + 1):
        power = a**k
        if power > h.size:
            skipped += 1
            continue
        image = h(power)
        if ha == 1:
            if image != 1:
                return MonogenicResult(
                    CheckResult(
                        "monogenic",
                        Verdict.FAIL,
                        witnesses=((a, k, image),),
                        detail=f"h({a}) = 1 but h({a}**{k}) = {image} != 1",
                    ),
                    base=a,
                )
            continue
        e = _exponent_of(image, ha)
        if e is None:
            return MonogenicResult(
                CheckResult(
                    "monogenic",
                    Verdict.FAIL,
                    witnesses=((a, k, image),),
                    detail=f"h({a}**{k}) = {image} is not a power of h({a}) = {ha}",
                ),
                base=a,
            )
        exponents.append((k, e))
    verdict = Verdict.PASS if exponents else Verdict.INDETERMINATE
    return MonogenicResult(
        CheckResult("monogenic", verdict, skipped=skipped,
                    detail=f"base {a}: {len(exponents)} powers checked"),
        base=a,
        exponents=tuple(exponents),
    )


@dataclass
class MuTable:
    """Partial exponent map n -> mu(n) extracted from power images."""

    entries: dict[int, int] = field(default_factory=dict)

    def merge(self, k: int, value: int) -> Optional[str]:
        """Add one entry; report a conflict message instead of overwriting."""
        if k in self.entries and self.entries[k] != value:
            return f"mu({k}) is ambiguous: {self.entries[k]} vs {value}"
        self.entries[k] = value
        return None

    def multiplicative_conflicts(self) -> list[str]:
        """Violations of multiplicativity among the defined entries."""
        problems = []
        items = sorted(self.entries)
        for x in items:
            for y in items:
                if x > y or math.gcd(x, y) != 1 or x * y not in self.entries:
                    continue
                if self.entries[x * y] != self.entries[x] * self.entries[y]:
                    problems.append(
                        f"mu({x * y}) = {self.entries[x * y]} != "
                        f"mu({x})*mu({y}) = {self.entries[x] * self.entries[y]}"
                    )
        for p in items:
            if not is_prime(p):
                continue
            k, power = 2, p * p
            while power in self.entries:
                if self.entries[power] != self.entries[p] ** k:
                    problems.append(
                        f"mu({power}) = {self.entries[power]} != mu({p})^{k}"
                    )
                k += 1
                power *= p
        primes_in = [k for k in items if is_prime(k)]
        images = [self.entries[k] for k in primes_in]
        if any(not is_prime(v) for v in images):
            bad = next(k for k in primes_in if not is_prime(self.entries[k]))
            problems.append(f"mu({bad}) = {self.entries[bad]} is not prime")
        if len(set(images)) != len(images):
            problems.append("mu is not injective on primes")
        return problems

    def to_json(self) -> dict:
        return {"entries": {str(k): v for k, v in sorted(self.entries.items())}}


@dataclass(frozen=True)
class MuExtraction:
    result: CheckResult
    table: MuTable


def extract_mu(
    h: BijectionWindow, bases: Sequence[int], max_power: int
) -> MuExtraction:
    """Solve h(a**n) = h(a)**mu(n) across bases and check consistency.

    Bases must not be perfect powers (the exponent map is read off primitive
    bases; power bases inherit it).  Cross-base agreement is a theorem for
    true homeomorphisms, so any disagreement rejects the candidate.
    """
    if not bases:
        raise PreconditionViolation("at least one base is required")
    for a in bases:
        require_positive("base", a, minimum=2)
        if is_perfect_power(a) is not None:
            raise PreconditionViolation(
                f"base {a} is a perfect power; use its primitive root base instead"
            )
    table = MuTable()
    skipped = 0
    conflicts: list[str] = []
    for a in bases:
        mono = check_monogenic(h, a, max_power)
        if mono.result.verdict == Verdict.FAIL:
            return MuExtraction(
                CheckResult(
                    "power_exponent_map",
                    Verdict.FAIL,
                    witnesses=mono.result.witnesses,
                    detail=f"no exponent: {mono.result.detail}",
                ),
                table,
            )
        skipped += mono.result.skipped
        for k, e in mono.exponents:
            conflict = table.merge(k, e)
            if conflict:
                conflicts.append(f"base {a}: {conflict}")
    conflicts.extend(table.multiplicative_conflicts())
    if conflicts:
        return MuExtraction(
            CheckResult(
                "power_exponent_map",
                Verdict.FAIL,
                witnesses=tuple(conflicts[:10]),
                detail="; ".join(conflicts[:3]),
            ),
            table,
        )
    verdict = Verdict.PASS if table.entries else Verdict.INDETERMINATE
    return MuExtraction(
        CheckResult(
            "power_exponent_map",
            verdict,
            skipped=skipped,
            detail=f"{len(table.entries)} exponents extracted consistently",
        ),
        table,
    )


def brunault_primes(a: int, b: int, count: int, search_bound: int) -> list[int]:
    """Primes p = 1 (mod b) with a**((p-1)/b) != 1 (mod p), ascending.

    Requires b prime and a >= 2 not a b-th power.  Existence of infinitely
    many such primes is guaranteed, but with no effective bound, so bound
    exhaustion raises :class:`NotFoundWithinBound`.
    """
    require_positive("a", a, minimum=2)
    require_positive("count", count)
    require_positive("search_bound", search_bound)
    if not is_prime(b):
        raise PreconditionViolation(f"b must be prime, got {b}")
    root = int_nth_root(a, b)
    if root**b == a:
        raise PreconditionViolation(f"a = {a} = {root}**{b} is a {b}-th power")
    out = []
    p = 1
    while len(out) < count:
        p += b
        if p > search_bound:
            raise NotFoundWithinBound(
                f"only {len(out)} of {count} primes found below {search_bound}"
            )
        if not is_prime(p) or a % p == 0:
            continue
        if pow(a, (p - 1) // b, p) != 1:
            out.append(p)
    return out


@dataclass(frozen=True)
class HomeoReport:
    """Results of all necessary-condition checks on one candidate window."""

    window_size: int
    items: tuple[CheckResult, ...]
    note: str = (
        "the checks are necessary conditions only; passing all of them does "
        "not certify a homeomorphism"
    )

    @property
    def all_pass(self) -> bool:
        return all(item.verdict == Verdict.PASS for item in self.items)

    @property
    def any_fail(self) -> bool:
        return any(item.verdict == Verdict.FAIL for item in self.items)

    def to_json(self) -> dict:
        return {
            "window_size": self.window_size,
            "items": [item.to_json() for item in self.items],
            "all_pass": self.all_pass,
            "note": self.note,
        }


def default_mu_bases(h: BijectionWindow, limit: int = 6) -> list[int]:
    """Small non-perfect-power bases whose square still fits the window."""
    out = []
    a = 2
    while len(out) < limit and a * a <= h.size:
        if is_perfect_power(a) is None:
            out.append(a)
        a += 1
    return out


def run_all_checks(
    h: BijectionWindow,
    bases: Optional[Sequence[int]] = None,
    max_power: int = 8,
) -> HomeoReport:
    """Run every necessary-condition check with default parameters."""
    if bases is None:
        bases = default_mu_bases(h)
    items = [
        check_fixed_one(h),
        check_primes_preserved(h),
        check_prime_divisor_equivariance(h),
    ]
    if bases:
        items.append(extract_mu(h, bases, max_power).result)
    else:
        items.append(
            CheckResult(
                "power_exponent_map",
                Verdict.INDETERMINATE,
                detail="window too small for any power base",
            )
        )
    return HomeoReport(window_size=h.size, items=tuple(items))
