import math
from itertools import combinations

import pytest

from golomb.arith import is_square_free, prime_divisors, primes_up_to
from golomb.errors import (
    InternalInvariantViolation,
    PreconditionViolation,
    WindowExceeded,
)
from golomb.progressions import Progression, least_element
from golomb.topology import (
    BasicOpen,
    FilterWitness,
    closure,
    disconnection_witness,
    f0_base_element,
    in_closure_oracle,
    nonregularity_witness,
    pi_via_filter,
    regular_neighborhood_for_prime,
    special1_witness,
    superconnected_witness,
)

from oracles import divisors


class TestBasicOpen:
    def test_requires_coprime(self):
        with pytest.raises(PreconditionViolation):
            BasicOpen(2, 4)
        with pytest.raises(PreconditionViolation):
            BasicOpen(0, 3)

    def test_membership(self):
        u = BasicOpen(2, 15)
        assert u.contains(2) and u.contains(17)
        assert not u.contains(1)


class TestClosure:
    def test_half_odds_is_everything(self):
        desc = closure(BasicOpen(1, 2))
        assert desc.conditions == ((2, 2),)
        assert all(desc.contains(x) for x in range(1, 501))

    def test_mod_fifteen(self):
        desc = closure(BasicOpen(2, 15))
        assert desc.conditions == ((3, 3), (5, 5))
        assert desc.contains(5)  # 5 = 2 mod 3 and 5 | 5
        assert not desc.contains(3)  # 3-2 not divisible by 3 or 5; 5 does not divide 3

    def test_full_space(self):
        desc = closure(BasicOpen(1, 1))
        assert desc.conditions == ()
        assert all(desc.contains(x) for x in range(1, 100))

    def test_serialization(self):
        assert closure(BasicOpen(2, 15)).to_json() == {
            "a": 2,
            "conditions": [[3, 3], [5, 5]],
        }


class TestInClosureOracle:
    def test_examples(self):
        u = BasicOpen(2, 15)
        assert in_closure_oracle(5, u, 15) is True
        assert in_closure_oracle(3, u, 15) is False  # separated by d = 5

    def test_own_point(self):
        for a, b in [(1, 2), (2, 15), (7, 10)]:
            assert in_closure_oracle(a, BasicOpen(a, b), b)

    def test_bound_must_cover_modulus(self):
        with pytest.raises(PreconditionViolation):
            in_closure_oracle(5, BasicOpen(2, 15), 10)

    def test_agrees_with_descriptor_sample(self):
        # the full sweep (b <= 30, x <= 2000) runs in the acceptance suite
        for b in range(1, 16):
            for a in range(1, b + 1):
                if math.gcd(a, b) != 1:
                    continue
                u = BasicOpen(a, b)
                desc = closure(u)
                for x in range(1, 301):
                    assert desc.contains(x) == in_closure_oracle(x, u)

    def test_closure_contains_open(self):
        for a, b in [(1, 2), (2, 15), (3, 10), (9, 20)]:
            u, desc = BasicOpen(a, b), closure(BasicOpen(a, b))
            for x in range(a, 1001, b):
                assert desc.contains(x)


class TestSuperconnectedWitness:
    def test_whole_space_two_opens(self):
        pieces = [Progression.n0(0, 1)]
        opens = [BasicOpen(1, 2), BasicOpen(2, 3)]
        point = superconnected_witness(pieces, opens, window=100)
        assert point == 6
        assert all(closure(u).contains(point) for u in opens)

    def test_whole_space_single_open(self):
        assert superconnected_witness([Progression.n0(0, 1)], [BasicOpen(1, 2)], 100) == 2

    def test_multiples_of_four(self):
        point = superconnected_witness([Progression.n0(0, 4)], [BasicOpen(1, 3)], 100)
        assert point == 12

    def test_requires_offset_zero(self):
        with pytest.raises(PreconditionViolation):
            superconnected_witness([Progression.n0(1, 4)], [BasicOpen(1, 3)], 100)

    def test_window_exceeded_reports_requirement(self):
        with pytest.raises(WindowExceeded, match="12"):
            superconnected_witness([Progression.n0(0, 4)], [BasicOpen(1, 3)], 5)

    def test_empty_trace_rejected(self):
        # 3 + 4*N0 never meets 0 + 4*N0: residues 3 and 0 differ mod 4
        with pytest.raises(PreconditionViolation):
            superconnected_witness([Progression.n0(0, 4)], [BasicOpen(3, 4)], 100)


class TestF0BaseElement:
    def test_trivial_modulus(self):
        assert f0_base_element([BasicOpen(1, 1)]) == 1

    def test_prime_power_modulus(self):
        assert f0_base_element([BasicOpen(1, 4)]) == 2

    def test_odd_prime_needed_but_single_two_dropped(self):
        # cl(1 + 2*N0) is everything, so only the prime 3 is needed
        assert f0_base_element([BasicOpen(1, 2), BasicOpen(2, 3)]) == 3

    def test_output_is_square_free_and_inside(self):
        cases = [
            [BasicOpen(1, 2), BasicOpen(2, 3)],
            [BasicOpen(1, 4)],
            [BasicOpen(3, 20), BasicOpen(2, 9)],
            [BasicOpen(1, 1)],
        ]
        for opens in cases:
            q = f0_base_element(opens)
            assert is_square_free(q) or q == 1
            descs = [closure(u) for u in opens]
            window = 1000
            for z in range(q, window + 1, q):
                assert all(d.contains(z) for d in descs)

    def test_minimality(self):
        cases = [
            [BasicOpen(1, 2), BasicOpen(2, 3)],
            [BasicOpen(1, 4)],
            [BasicOpen(3, 20), BasicOpen(2, 9)],
        ]
        for opens in cases:
            q = f0_base_element(opens)
            descs = [closure(u) for u in opens]
            for q2 in divisors(q):
                if q2 == q:
                    continue
                # some multiple of the proper divisor escapes some closure
                escapes = any(
                    not all(d.contains(z) for d in descs)
                    for z in range(q2, 10 * max(u.b for u in opens) * q + 1, q2)
                )
                assert escapes, f"{q2} should not suffice for {opens}"


class TestSpecial1:
    def test_distinct_small_points(self):
        w = special1_witness(1, 2, 3)
        assert w.n == 1
        assert (w.ux.a, w.ux.b) == (1, 3)
        assert (w.uy.a, w.uy.b) == (2, 3)
        cx, cy = closure(w.ux), closure(w.uy)
        got = [z for z in range(1, 301) if cx.contains(z) and cy.contains(z)]
        assert got == list(range(3, 301, 3))

    def test_exponent_grows_with_shared_powers(self):
        w = special1_witness(1, 5, 6)
        assert w.n == 3  # 2**2 divides 4 = 5 - 1, 2**3 does not
        assert (w.ux.a, w.ux.b) == (1, 216)
        assert (w.uy.a, w.uy.b) == (5, 216)

    def test_rejects_shared_factor(self):
        with pytest.raises(PreconditionViolation):
            special1_witness(3, 2, 3)
        with pytest.raises(PreconditionViolation):
            special1_witness(2, 3, 12)  # not square-free

    def test_window_equality_matches_q_multiples(self):
        for x, y, q in [(1, 2, 3), (2, 3, 5), (1, 7, 10), (4, 9, 35)]:
            w = special1_witness(x, y, q)
            cx, cy = closure(w.ux), closure(w.uy)
            for z in range(1, w.window + 1):
                assert (cx.contains(z) and cy.contains(z)) == (z % q == 0)

    def test_refutation_when_q_shares_a_factor(self):
        # when q shares a prime p with x, no pair of small-modulus opens
        # around x and y can push the closure intersection inside q*N:
        # a CRT-constructed point always lands in both closures but off q*N
        for x, y, q in [(2, 3, 2), (6, 5, 3), (10, 3, 10)]:
            p = next(r for r in prime_divisors(q) if x % r == 0)
            for b in range(1, 31):
                if math.gcd(x, b) != 1:
                    continue
                for d in range(1, 31):
                    if math.gcd(y, d) != 1:
                        continue
                    pi_bd = set(prime_divisors(b)) | set(prime_divisors(d))
                    if p not in set(prime_divisors(d)):
                        system = [Progression.z(1, p)]
                        system += [Progression.z(0, r) for r in pi_bd]
                    else:
                        lp = d
                        e = 0
                        while lp % p == 0:
                            lp //= p
                            e += 1
                        system = [Progression.z(y % p**e, p**e)]
                        system += [Progression.z(0, r) for r in pi_bd if r != p]
                    z = least_element(system)
                    assert z is not None
                    assert closure(BasicOpen(x, b)).contains(z)
                    assert closure(BasicOpen(y, d)).contains(z)
                    assert z % q != 0


class TestPiViaFilter:
    def test_composite(self):
        assert pi_via_filter(12, 10) == {2, 3}

    def test_prime(self):
        for p in (2, 3, 7):
            assert pi_via_filter(p, p) == {p}

    def test_one_has_no_prime_divisors(self):
        assert pi_via_filter(1, 10) == set()

    def test_matches_factorization(self):
        for x in (2, 9, 30, 97, 360):
            assert pi_via_filter(x, 20) == {p for p in prime_divisors(x) if p <= 20}


class TestRegularNeighborhood:
    def test_three_mod_ten(self):
        assert regular_neighborhood_for_prime(3, 10) == 2

    def test_seven_mod_six(self):
        assert regular_neighborhood_for_prime(7, 6) == 3

    def test_requires_composite_radical(self):
        with pytest.raises(PreconditionViolation):
            regular_neighborhood_for_prime(3, 4)  # only one prime divisor

    def test_requires_prime_point(self):
        with pytest.raises(PreconditionViolation):
            regular_neighborhood_for_prime(4, 15)

    def test_certificate_property(self):
        for x, b in [(3, 10), (7, 6), (11, 6), (7, 15)]:
            n = regular_neighborhood_for_prime(x, b, window=10_000)
            desc = closure(BasicOpen(x, b**n))
            for p in primes_up_to(10_000):
                if desc.contains(p):
                    assert p >= x and (p - x) % b == 0


class TestNonregularityWitness:
    def test_examples(self):
        assert nonregularity_witness(1, 2, 3, 1, 1000) == 3
        assert nonregularity_witness(2, 3, 5, 1, 1000) == 5

    def test_rejects_q_dividing_a(self):
        with pytest.raises(PreconditionViolation):
            nonregularity_witness(3, 2, 3, 1, 1000)

    def test_witness_structure(self):
        for a, b, q, c in [(1, 2, 3, 1), (2, 3, 5, 1), (1, 6, 5, 7), (3, 4, 7, 5)]:
            z = nonregularity_witness(a, b, q, c, 10**6)
            assert z % q == 0
            assert z >= a and (z - a) % b == 0
            assert closure(BasicOpen(a, q * b * c)).contains(z)
            # ... while the inner neighborhood V = a + qb*N0 misses q*N entirely
            assert all((a + q * b * k) % q != 0 for k in range(50))


class TestDisconnectionWitness:
    def test_examples(self):
        assert disconnection_witness(1, 2, 1, 3) == 2
        assert disconnection_witness(1, 3, 1, 4) == 2
        assert disconnection_witness(5, 7, 12, 19) == 2  # y = x + b

    def test_separates(self):
        for a, b, x, y in [(1, 2, 1, 3), (1, 3, 1, 4), (2, 5, 7, 52)]:
            n = disconnection_witness(a, b, x, y)
            assert (x - y) % b ** (n - 1) == 0 or n == 1
            assert (x - y) % b**n != 0

    def test_rejects_modulus_one(self):
        with pytest.raises(PreconditionViolation):
            disconnection_witness(1, 1, 1, 2)

    def test_rejects_outside_points(self):
        with pytest.raises(PreconditionViolation):
            disconnection_witness(1, 2, 1, 4)


class TestFilterWitness:
    def test_requires_coprime_modulus(self):
        with pytest.raises(PreconditionViolation):
            FilterWitness(x=6, a=5, b=3)

    def test_generator_members(self):
        # around x = 5 with both moduli 3: the intersection is 3*N
        w = FilterWitness(x=5, a=3, b=3)
        assert w.generator_members(30) == [3, 6, 9, 12, 15, 18, 21, 24, 27, 30]
