import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from pollock.arith import divisors, primes_up_to, squarefree_part, tau
from pollock.bounds import (
    F1,
    F2,
    PRESETS,
    SeniorSumParams,
    eval_senior_S,
    level_inequality_check,
    level_sweep,
    local_max,
    mult_bound_product,
    prime_power_side_check,
    siegel_pair_check,
    siegel_product,
)


@pytest.fixture(scope="module")
def report():
    return siegel_product(Fraction(1, 10**6))


class TestSiegel:
    def test_zero_epsilon(self):
        rep = siegel_product(0)
        assert rep.value.b == 0 and rep.cutoff_prime is None

    def test_bare_product_range(self, report):
        lo, hi = report.bare_product.a, report.bare_product.b
        assert 9 * lo > 1 and hi < 1

    def test_cutoff(self, report):
        p = report.cutoff_prime
        assert p == 46523
        eps = 1e-6
        assert p ** (2 * eps) * (1 - 1 / p) >= 1
        prev = primes_up_to(p - 1)[-1]
        assert prev ** (2 * eps) * (1 - 1 / prev) < 1

    def test_float_oracle(self, report):
        mpmath.mp.dps = 30
        eps = mpmath.mpf(10) ** -6
        prod = mpmath.mpf(1)
        for p in primes_up_to(report.cutoff_prime - 1)[1:]:
            prod *= min(1, mpmath.power(p, 2 * eps) * (1 - mpmath.mpf(1) / p))
        assert report.bare_product.a <= prod <= report.bare_product.b

    def test_epsilon_range(self):
        with pytest.raises(ValueError):
            siegel_product(Fraction(1, 1000))

    def test_pairs(self, report):
        assert siegel_pair_check(1, 2, Fraction(1, 10**6), report).ok
        assert siegel_pair_check(3, 11, 0).ok

    def test_invalid_pairs(self):
        assert siegel_pair_check(4, 2, 0).violations
        assert siegel_pair_check(7, 2, 0).violations
        assert "equal squarefree parts" in siegel_pair_check(2, 18, 0).violations

    def test_random_pairs(self, report):
        rng = random.Random(1)
        done = 0
        while done < 100:
            m, m2 = rng.randint(1, 10**6), rng.randint(1, 10**6)
            if m % 4 == 0 or m2 % 4 == 0 or m % 8 == 7 or m2 % 8 == 7 or squarefree_part(m) == squarefree_part(m2):
                continue
            assert siegel_pair_check(m, m2, Fraction(1, 10**6), report).ok
            done += 1


class TestLevel:
    def test_one(self):
        assert level_inequality_check(1)

    def test_sweep_matches_direct(self):
        assert level_sweep(3000) == [n for n in range(1, 3001) if not level_inequality_check(n)] == []

    @given(st.integers(1, 10**9))
    @settings(max_examples=50, deadline=None)
    def test_random_values(self, n):
        assert level_inequality_check(n)

    def test_direct_definition(self):
        n = 720720
        small = sum(tau(d) ** 2 for d in divisors(n) if d**16 <= n**3)
        assert level_inequality_check(n) == (3**13 * tau(n) <= 16**13 * small)

    def test_prime_power_side(self):
        assert all(prime_power_side_check(e) for e in range(0, 40))


class TestLocalFactors:
    @pytest.mark.parametrize("name", list(PRESETS))
    def test_small_primes_dominate(self, name):
        preset = PRESETS[name]
        # per-prime maxima never increase with p
        logs = [local_max(preset, p).log_max for p in primes_up_to(400)]
        assert all(a >= b - 1e-12 for a, b in zip(logs, logs[1:]))
        assert all(v >= 0 for v in logs)

    def test_truncated_product_is_a_lower_partial_sum(self):
        short = mult_bound_product("G-SUM", p_max=10**4)
        assert short.computed_log > 0 and short.trivial_from is None
        assert not short.satisfied  # not all nontrivial primes reached

    def test_report_json(self):
        rep = mult_bound_product("F2-LOCAL", p_max=1000)
        assert '"preset": "F2-LOCAL"' in rep.to_json()

    @given(st.integers(1, 5000))
    @settings(max_examples=40, deadline=None)
    def test_f_values_are_multiplicative(self, n):
        for F in (F1, F2):
            assert F(2 * n) == F(2) * F(n) or n % 2 == 0

    def test_f_of_one(self):
        assert F1(1) == F2(1) == 1


class TestSeniorSum:
    def test_known_values(self):
        res = eval_senior_S(SeniorSumParams.for_m(10403, Fraction(1, 4)))
        assert res.S == 4128 and res.within_bound

    def test_window(self):
        p = SeniorSumParams.for_m(10403, Fraction(1, 4))
        assert p.window_ok()
        assert 5 ** (4 * p.s) >= 10403**3 > 5 ** (4 * (p.s - 1))

    def test_precondition(self):
        assert SeniorSumParams.for_m(10403, Fraction(1, 8)).precondition_failures()
        with pytest.raises(ValueError):
            eval_senior_S(SeniorSumParams.for_m(10403, Fraction(1, 8)))

    def test_larger_tau_never_increases(self):
        m = 747747
        a = eval_senior_S(SeniorSumParams.for_m(m, Fraction(1, 8))).S
        b = eval_senior_S(SeniorSumParams.for_m(m, Fraction(1, 4))).S
        assert b <= a

    def test_empty_range(self):
        p = SeniorSumParams(10403, Fraction(1, 4), 40)
        # window check fails, so the sum is refused rather than silently empty
        assert p.precondition_failures()
