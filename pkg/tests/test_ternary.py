import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from pollock.arith import NotFound, is_prime, jacobi
from pollock.ternary import (
    FAMILY_WINDOW,
    MAIN_FORM,
    SUMS_OF_SQUARES,
    DiagonalTernaryForm,
    alpha_component,
    build_form_family,
    check_linnik_conditions,
    count_three_square_linear_reps,
    find_abc_primes,
    r3_primitive,
    represent,
    represent_bounded,
    scan_range,
)

EXCEPTIONAL_M = 689469562


def brute_reps(form, m):
    a, b, c = form.coefficients
    out = []
    for x in range(-math.isqrt(m // a), math.isqrt(m // a) + 1):
        for y in range(-math.isqrt(m // b), math.isqrt(m // b) + 1):
            rest = m - a * x * x - b * y * y
            if rest < 0 or rest % c:
                continue
            z = math.isqrt(rest // c)
            if c * z * z == rest:
                out.extend({(x, y, z), (x, y, -z)})
    return sorted(out)


class TestRepresent:
    def test_sum_of_coefficients(self):
        rep = represent(MAIN_FORM, 273)
        assert rep.as_tuple() == (1, 1, 1) and rep.primitive

    def test_exceptional_value(self):
        assert represent(MAIN_FORM, EXCEPTIONAL_M) is None
        assert represent(MAIN_FORM, EXCEPTIONAL_M, primitive_only=True) is None

    def test_three_as_sum_of_squares(self):
        assert represent(SUMS_OF_SQUARES, 3).as_tuple() == (1, 1, 1)
        assert represent(SUMS_OF_SQUARES, 3, mode="count") == 8

    @given(st.integers(1, 4000), st.sampled_from([MAIN_FORM, SUMS_OF_SQUARES, DiagonalTernaryForm(1, 2, 5)]))
    @settings(max_examples=150, deadline=None)
    def test_all_matches_brute_force(self, m, form):
        assert [r.as_tuple() for r in represent(form, m, mode="all")] == brute_reps(form, m)

    @given(st.integers(1, 3000), st.integers(0, 3000), st.integers(0, 3000))
    @settings(max_examples=30, deadline=None)
    def test_constructed_values_are_found(self, x, y, z):
        m = MAIN_FORM(x, y, z)
        rep = represent(MAIN_FORM, m)
        assert rep is not None and MAIN_FORM(*rep.as_tuple()) == m

    def test_exact_path_above_int64(self):
        form = DiagonalTernaryForm(10**18, 10**18, 3)
        m = form(1, 1, 2)
        assert m > 1 << 60
        assert represent(form, m).as_tuple() == (1, 1, 2)

    def test_bounded(self):
        rep = represent_bounded(SUMS_OF_SQUARES, 50, 6)
        assert max(rep.as_tuple()) < 6 and sum(v * v for v in rep.as_tuple()) == 50
        assert represent_bounded(SUMS_OF_SQUARES, 50, 3) is None

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            represent(MAIN_FORM, 0)


class TestLinnik:
    def test_main_triple(self):
        rep = check_linnik_conditions(83, 91, 99, 5)
        assert rep.ok and rep.congruent_mod_4

    def test_family_pattern(self):
        assert check_linnik_conditions(3**2 * 5**2, 7**2 * 17, 11**2 * 13, 19).ok

    def test_failures_detected(self):
        assert not check_linnik_conditions(3, 9, 5, 7).pairwise_coprime
        assert not check_linnik_conditions(2, 3, 5, 7).all_odd
        assert not check_linnik_conditions(3, 5, 7, 9).s_prime

    def test_passing_triples_are_congruent_mod_4(self):
        odd = [n for n in range(1, 60, 2)]
        for a, b, c in itertools.combinations(odd, 3):
            if math.gcd(a, b) * math.gcd(b, c) * math.gcd(a, c) != 1:
                continue
            for s in (3, 5, 7, 11, 13):
                rep = check_linnik_conditions(a, b, c, s)
                if rep.ok:
                    assert rep.congruent_mod_4, (a, b, c, s)


class TestScan:
    FILTERS = [(4, (2, 3)), (5, (2, 3))]

    def test_window_above_exceptional_value(self):
        rep = scan_range(MAIN_FORM, EXCEPTIONAL_M, EXCEPTIONAL_M + 1000, self.FILTERS)
        assert rep.tested == 200 and rep.failures == []

    def test_exceptional_value_included_fails(self):
        rep = scan_range(MAIN_FORM, EXCEPTIONAL_M - 1, EXCEPTIONAL_M, self.FILTERS)
        assert rep.failures == [EXCEPTIONAL_M]

    def test_three_squares(self):
        rep = scan_range(SUMS_OF_SQUARES, 1, 100, [(8, (1, 2, 3, 5, 6))])
        assert rep.failures == []

    def test_sampling_is_seeded(self):
        a = scan_range(MAIN_FORM, 10**6, 10**7, self.FILTERS, sample=20, seed=3)
        b = scan_range(MAIN_FORM, 10**6, 10**7, self.FILTERS, sample=20, seed=3)
        assert [r.m for r in a.records] == [r.m for r in b.records]
        assert all(m % 4 in (2, 3) and m % 5 in (2, 3) for m in (r.m for r in a.records))


class TestFormFamily:
    def test_alpha_component(self):
        assert alpha_component(2000, 2100) == 2025

    def test_small_thresholds_have_no_family(self):
        with pytest.raises(NotFound):
            build_form_family(10**50)

    def test_large_threshold(self):
        D = 10**400
        form = build_form_family(D)
        lo, mid, hi = (w * D for w in FAMILY_WINDOW)
        assert lo < form.alpha < mid
        assert mid < form.beta < hi and mid < form.gamma < hi
        rep = check_linnik_conditions(*form.coefficients, 19)
        assert rep.ok


class TestAbcPrimes:
    @pytest.mark.parametrize("a, b", [(4, 1), (4, 3), (12, 5), (20, 7), (3, 2), (40, 13)])
    def test_conditions(self, a, b):
        res = find_abc_primes(a, b)
        assert res.ok
        p1, p2, p3, p4, p5, p6 = res.primes
        assert all(is_prime(p) for p in res.primes)
        for x, y, z in ((p4, p5, p6), (p5, p6, p4), (p6, p4, p5)):
            assert jacobi((-x * y) % z, z) == 1

    def test_frozen_outputs(self):
        assert find_abc_primes(4, 1).primes == (5, 13, 17, 101, 569, 701)
        assert find_abc_primes(4, 3).primes == (5, 13, 17, 179, 191, 251)
        assert all(p % 4 == 3 for p in find_abc_primes(4, 3).primes[3:])


class TestSumsOfThreeSquares:
    @pytest.mark.parametrize("m, t", [(1, 6), (2, 12), (3, 8), (7, 0)])
    def test_values(self, m, t):
        assert r3_primitive(m) == t

    @pytest.mark.parametrize("k", range(1, 30))
    def test_multiples_of_four(self, k):
        assert r3_primitive(4 * k) == 0

    @given(st.integers(1, 3000))
    @settings(max_examples=60, deadline=None)
    def test_against_enumeration(self, m):
        t = sum(1 for v in brute_reps(SUMS_OF_SQUARES, m) if math.gcd(*v) == 1)
        assert r3_primitive(m) == t


class TestLinearForms:
    def test_sum_of_two_squares(self):
        rep = count_three_square_linear_reps(1, 0, 1)
        assert rep.proper == 24 and rep.proper_bound == 48 and rep.within_bounds

    def test_imprimitive_form(self):
        assert count_three_square_linear_reps(2, 0, 2).proper == 0

    def test_random_forms(self):
        rng = random.Random(13)
        done = 0
        while done < 100:
            p, r = rng.randint(1, 60), rng.randint(1, 60)
            q = rng.randint(-min(p, r), min(p, r))
            d = p * r - q * q
            if not 0 < d <= 500:
                continue
            assert count_three_square_linear_reps(p, q, r).within_bounds, (p, q, r)
            done += 1

    def test_indefinite_rejected(self):
        with pytest.raises(ValueError):
            count_three_square_linear_reps(1, 2, 1)
