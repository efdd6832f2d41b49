import math
import random

import pytest

from golomb.arith import dagger, prime_divisors
from golomb.errors import NotSelfMap, PreconditionViolation, WindowViolation
from golomb.maps import (
    ContinuityCertificate,
    IntPolynomial,
    continuity_certificate,
    enumerate_successors,
    half_square,
    half_square_discontinuity_witness,
    in_tree,
    is_progressive,
    polynomial_continuity,
    successor_constraints,
    verify_tree_crt_conditions,
)


class TestIsProgressive:
    def test_small_tables(self):
        assert is_progressive([1, 2]).ok
        check = is_progressive([1, 3])
        assert not check.ok
        assert check.condition == 1
        assert check.witness == (2,)

    def test_linear_multiples(self):
        for c in (1, 2, 7):
            assert is_progressive([c * k for k in range(1, 13)]).ok

    def test_difference_condition_violation(self):
        # f(1)=1, f(2)=2, f(3)=3 except jumping: find a concrete violation
        check = is_progressive([5, 2])
        # k=2: prime divisor 2 of 2 divides f(2)=2, fine; difference:
        # (2-1)†5 = 1 divides anything, so this one is actually progressive
        assert check.ok
        check = is_progressive([1, 2, 6, 4])
        assert not check.ok

    def test_increasing_flag(self):
        assert is_progressive([2, 2], require_increasing=False).ok
        assert not in_tree([2, 2]).ok

    def test_rejects_nonpositive_values(self):
        with pytest.raises(PreconditionViolation):
            is_progressive([1, 0])

    def test_empty_table(self):
        assert is_progressive([]).ok


class TestEnumerateSuccessors:
    def test_singleton_prefix(self):
        assert enumerate_successors([1], 3) == [2, 4, 6]

    def test_two_element_prefix(self):
        # valid next values: multiples of 3 that are odd (1 mod (2†1)=2)
        assert enumerate_successors([1, 2], 2) == [3, 9]

    def test_count_zero(self):
        assert enumerate_successors([1, 2], 0) == []

    def test_empty_prefix(self):
        assert enumerate_successors([], 4) == [1, 2, 3, 4]

    def test_rejects_non_tree_input(self):
        with pytest.raises(PreconditionViolation):
            enumerate_successors([3, 2], 1)

    def test_random_descent_re_verifies(self):
        rng = random.Random(0)
        for _ in range(50):
            table = [rng.randint(1, 4)]
            depth = rng.randint(1, 7)
            for _ in range(depth):
                succ = enumerate_successors(table, 5)
                table.append(rng.choice(succ))
            assert in_tree(table).ok
            for v in enumerate_successors(table, 10):
                assert in_tree(table + [v]).ok
            verify_tree_crt_conditions(table)

    def test_constraints_shape(self):
        system = successor_constraints([1, 2])
        moduli = sorted(c.b for c in system)
        assert moduli == [2, 3]


class TestContinuityCertificate:
    def test_square_at_three(self):
        cert = continuity_certificate(IntPolynomial((0, 0, 1)), x=3, b=5, window=10_000)
        assert cert.d == 5
        assert cert.fx == 9
        for y in range(3, 10_001, 5):
            if y in cert.removed:
                continue
            assert y * y >= 9 and (y * y - 9) % 5 == 0

    def test_identity_has_empty_exceptional_set(self):
        for x, b in [(1, 2), (5, 2), (7, 9)]:
            cert = continuity_certificate(IntPolynomial((0, 1)), x=x, b=b)
            assert cert.d == b
            assert cert.removed == ()

    def test_constant_map(self):
        cert = continuity_certificate(IntPolynomial((5,)), x=4, b=2)
        assert cert.removed == ()

    def test_requires_coprime_target(self):
        with pytest.raises(PreconditionViolation):
            continuity_certificate(IntPolynomial((0, 1)), x=4, b=2)

    def test_table_input(self):
        cert = continuity_certificate([2, 4, 6, 8, 10, 12], x=2, b=3, window=100)
        assert cert.window == 6
        assert cert.removed == ()

    def test_window_violation_on_non_progressive_table(self):
        # f(1)=1, f(4)=2: b=3 divides 4-1 but not f(4)-f(1)=1
        with pytest.raises(WindowViolation):
            continuity_certificate([1, 9, 9, 2], x=1, b=3, window=4)


class TestPolynomialContinuity:
    def test_zero_constant_term(self):
        verdict = polynomial_continuity(IntPolynomial((0, 3, 1)))
        assert verdict.kind == "continuous_zero_constant"

    def test_constant(self):
        verdict = polynomial_continuity(IntPolynomial((5,)))
        assert verdict.kind == "continuous_constant"

    def test_x_plus_one_split(self):
        verdict = polynomial_continuity(IntPolynomial((1, 1)))
        assert verdict.kind == "discontinuous"
        split = verdict.split
        assert (split.x, split.fx, split.p) == (1, 2, 3)
        assert all((u - 1) % 3 == 0 for u in split.u_sample)
        assert all((v - 2) % 3 == 0 for v in split.v_sample)

    def test_not_self_map(self):
        with pytest.raises(NotSelfMap):
            polynomial_continuity(IntPolynomial((-1, 0, 1)))  # f(1) = 0

    def test_progressive_table_for_zero_constant(self):
        for coeffs in [(0, 1), (0, 3, 1), (0, 0, 0, 2), (0, 2, 0, 0, 1)]:
            poly = IntPolynomial(coeffs)
            table = [poly(k) for k in range(1, 51)]
            assert is_progressive(table).ok

    def test_split_verified_for_many_polynomials(self):
        rng = random.Random(1)
        count = 0
        while count < 25:
            coeffs = [rng.randint(-10, 10) for _ in range(rng.randint(2, 5))]
            poly = IntPolynomial(tuple(coeffs))
            if poly.is_constant or poly.constant_term == 0:
                continue
            if not poly.maps_into_naturals(100):
                continue
            verdict = polynomial_continuity(poly)
            assert verdict.kind == "discontinuous"
            split = verdict.split
            assert (split.fx - split.a0) % split.p != 0
            count += 1


class TestHalfSquare:
    def test_examples(self):
        assert half_square_discontinuity_witness(1) == 4
        assert half_square(4) == 10
        assert half_square_discontinuity_witness(3) == 8
        assert half_square(8) == 36

    def test_rejects_even_modulus(self):
        with pytest.raises(PreconditionViolation):
            half_square_discontinuity_witness(2)

    def test_all_odd_moduli(self):
        for b in range(1, 1000, 2):
            point = half_square_discontinuity_witness(b)
            assert point >= 2 and (point - 2) % b == 0
            assert half_square(point) % 2 == 0


class TestIntPolynomial:
    def test_normalization(self):
        p = IntPolynomial((1, 2, 0, 0))
        assert p.coefficients == (1, 2)
        assert p.degree == 1

    def test_evaluation(self):
        p = IntPolynomial((1, 2, 3))  # 1 + 2x + 3x^2
        assert p(0) == 1
        assert p(2) == 17

    def test_string(self):
        assert str(IntPolynomial((0, 1))) == "1x^1"
        assert str(IntPolynomial((5,))) == "5"
