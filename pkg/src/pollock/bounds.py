"""Explicit constants: the Siegel product, divisor level lowering, local-factor
products and the senior-form sum S.

Transcendental comparisons go through mpmath interval arithmetic, or through
floats with an explicit relative slack that is always applied against the
claim being checked.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from mpmath import iv

from .arith import divisors, factorize, primes_up_to, square_part, squarefree_part, tau
from .ternary import r3_primitive

iv.dps = 30


def _iv_fraction(x: Fraction):
    x = Fraction(x)
    return iv.mpf(x.numerator) / x.denominator


# -- Siegel product -----------------------------------------------------------------

@dataclass(frozen=True)
class SiegelReport:
    epsilon: Fraction
    cutoff_prime: int | None  # first odd prime whose factor is 1 (all later ones are too)
    bare_product: object  # mpmath interval
    value: object  # (12 eps / pi) * bare_product, interval

    @property
    def bare_bounds(self) -> tuple[float, float]:
        return float(self.bare_product.a), float(self.bare_product.b)


def _siegel_cutoff(eps: Fraction) -> int:
    """First odd prime p with p^(2 eps) (1 - 1/p) >= 1.

    log of the factor, 2 eps log p + log(1 - 1/p), increases with p, so every
    later prime also has factor 1. Decided with intervals; ambiguous primes
    are pushed to the later side (that only lengthens the product).
    """
    e = _iv_fraction(eps)
    limit = 1 << 12
    while True:
        for p in primes_up_to(limit):
            if p == 2:
                continue
            g = 2 * e * iv.log(p) + iv.log(1 - iv.mpf(1) / p)
            if g.a >= 0:
                return p
        limit *= 4


def siegel_product(epsilon) -> SiegelReport:
    eps = Fraction(epsilon)
    if not 0 <= eps < Fraction(1, 1000):
        raise ValueError("epsilon must lie in [0, 1/1000)")
    if eps == 0:
        # every factor is 1 - 1/p and the infinite product diverges to 0
        zero = iv.mpf(0)
        return SiegelReport(eps, None, zero, zero)
    cutoff = _siegel_cutoff(eps)
    e = _iv_fraction(eps)
    prod = iv.mpf(1)
    for p in primes_up_to(cutoff - 1):
        if p == 2:
            continue
        term = iv.exp(2 * e * iv.log(p)) * (1 - iv.mpf(1) / p)
        # min(1, term) on intervals
        prod *= iv.mpf([min(term.a, 1), min(term.b, 1)])
    return SiegelReport(eps, cutoff, prod, 12 * e / iv.pi * prod)


@dataclass(frozen=True)
class PairCheck:
    ok: bool
    violations: tuple[str, ...]
    lhs: object = None
    rhs: object = None


def siegel_pair_check(m: int, m2: int, epsilon, report: SiegelReport | None = None) -> PairCheck:
    """max(t(m)/m^(1/2-eps), t(m')/m'^(1/2-eps)) >= (12 eps/pi) * product."""
    violations = []
    for name, v in (("m", m), ("m'", m2)):
        if v < 1 or v > 10**9:
            violations.append(f"{name} outside [1, 10^9]")
        elif v % 4 == 0:
            violations.append(f"{name} divisible by 4")
        elif v % 8 == 7:
            violations.append(f"{name} = 7 mod 8")
    if not violations and squarefree_part(m) == squarefree_part(m2):
        violations.append("equal squarefree parts")
    if violations:
        return PairCheck(False, tuple(violations))
    eps = Fraction(epsilon)
    rep = report if report is not None and report.epsilon == eps else siegel_product(eps)
    expo = iv.mpf(1) / 2 - _iv_fraction(eps)
    lhs = max((r3_primitive(v) / iv.exp(expo * iv.log(v)) for v in (m, m2)), key=lambda x: x.a)
    rhs = rep.value
    return PairCheck(bool(lhs.a >= rhs.b), (), lhs, rhs)


# -- level lowering ------------------------------------------------------------------

def level_inequality_check(n: int) -> bool:
    """3^13 tau(n) <= 16^13 * sum of tau(d)^2 over d | n with d^16 <= n^3."""
    if n < 1:
        raise ValueError("n must be positive")
    n3 = n**3
    small = sum(tau(d) ** 2 for d in divisors(n) if d**16 <= n3)
    return 3**13 * tau(n) <= 16**13 * small


def level_sweep(limit: int) -> list[int]:
    """All n <= limit where the level inequality fails (expected: none)."""
    taus = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        taus[d::d] += 1
    small = np.zeros(limit + 1, dtype=np.int64)
    d = 1
    while d**16 <= limit**3:
        # multiples n of d with n^3 >= d^16
        n0 = d
        while n0**3 < d**16:
            n0 += d
        small[n0::d] += int(taus[d]) ** 2
        d += 1
    n = np.arange(limit + 1)
    # 16^13 * small fits easily in float64 for a comparison that is never close
    lhs = 3.0**13 * taus
    rhs = 16.0**13 * small
    return [int(v) for v in n[1:][lhs[1:] > rhs[1:]]]


def prime_power_side(e: int):
    """The interval value of (sum_f (C(e,f) 3^f 13^(e-f) / 16^e)^(13/12) (f+1)^(-1/6))^(-12)."""
    total = iv.mpf(0)
    for f in range(e + 1):
        weight = iv.mpf(math.comb(e, f) * 3**f * 13 ** (e - f)) / iv.mpf(16) ** e
        total += iv.exp(iv.mpf(13) / 12 * iv.log(weight)) * iv.exp(-iv.log(f + 1) / 6)
    return iv.exp(-12 * iv.log(total))


def prime_power_side_check(e: int) -> bool:
    """e + 1 <= the prime-power side; rigorous for e <= 27, via (3(e+1)/16)^2 beyond."""
    if e < 0:
        raise ValueError("e must be nonnegative")
    if e <= 27:
        return bool(prime_power_side(e).a >= e + 1)
    return Fraction(3 * (e + 1), 16) ** 2 >= e + 1


# -- local factor products -------------------------------------------------------------

# a local factor is given by its "levels": level k collects the terms that first
# appear in L(p, k) - L(p, k-1), together with an upper bound for that level
# which decays geometrically in k.

def _gsum_level(p: int, k: int) -> float:
    if k == 0:
        return 1.0
    return 2.0 * (k + 1) * p ** (k // 2 - 9 * k / 16)


def _gsum_level_bound(p: int, k: int) -> float:
    return 2.0 * (k + 1) * p ** (-k / 16)


def _f_level(p: int, k: int, with_h_weight: bool) -> float:
    total = 0.0
    for b in range(k // 2 + 1):
        a = k - 2 * b
        w = (a + 1) * (2 * b + 1) ** 2 * (2 if a else 1)
        if with_h_weight and b:
            w *= 2
        total += w * p ** (a // 2 - a - b)
    return total


def _f_level_bound(p: int, k: int) -> float:
    return 4.0 * (k // 2 + 1) * (k + 1) ** 3 * p ** (-k / 2)


@dataclass(frozen=True)
class LocalPreset:
    name: str
    delta: Fraction
    paper_log_bound: Fraction
    level: Callable[[int, int], float]
    level_bound: Callable[[int, int], float]


PRESETS = {
    "G-SUM": LocalPreset("G-SUM", Fraction(1, 40), Fraction(13634), _gsum_level, _gsum_level_bound),
    "F1-LOCAL": LocalPreset(
        "F1-LOCAL", Fraction(1, 10**6), Fraction(62), lambda p, k: _f_level(p, k, True), _f_level_bound
    ),
    "F2-LOCAL": LocalPreset(
        "F2-LOCAL", Fraction(1, 10**6), Fraction(46), lambda p, k: _f_level(p, k, False), _f_level_bound
    ),
}

# relative error allowance for each float operation chain, applied upward
_REL_SLACK = 1e-12


@dataclass(frozen=True)
class PrimeMax:
    p: int
    best_k: int
    log_max: float  # log of max_k p^(-delta k) L(p, k), slack included
    k_checked: int
    tail_bound: float


def local_max(preset: LocalPreset, p: int, shift: int = 0) -> PrimeMax:
    """max over k >= 0 of p^(-delta k) L(p, k + shift), all k covered by a tail bound."""
    delta = float(preset.delta)
    logp = math.log(p)
    partial = 0.0
    for j in range(shift + 1):
        partial += preset.level(p, j)
    best, best_k = math.log(partial), 0
    k = 0
    while True:
        # bound sum_{j > k + shift} level(p, j) by a geometric series once the ratio is < 1
        j = k + shift + 1
        b1, b2 = preset.level_bound(p, j), preset.level_bound(p, j + 1)
        ratio = b2 / b1 if b1 > 0 else 0.0
        if ratio < 1:
            tail = b1 / (1 - ratio) * (1 + _REL_SLACK)
            # L(p, k') <= partial + tail for every k' > k, and p^(-delta k') <= p^(-delta (k+1))
            if math.log(partial + tail) - delta * (k + 1) * logp <= best:
                return PrimeMax(p, best_k, best + 4 * _REL_SLACK * (k + 2), k, tail)
        k += 1
        partial += preset.level(p, k + shift)
        val = math.log(partial) - delta * k * logp
        if val > best:
            best, best_k = val, k


@dataclass
class BoundReport:
    preset: str
    p_max: int
    computed_log: float
    paper_log_bound: Fraction
    satisfied: bool
    primes_used: int
    trivial_from: int | None  # first prime from which every per-prime max is 1
    shifted_log: float | None = None  # variant with v_2(4m) = v_2(m) + 2 at p = 2
    largest_factors: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "preset": self.preset,
                "p_max": self.p_max,
                "computed_log": f"{self.computed_log:.6f}",
                "paper_bound": str(self.paper_log_bound),
                "satisfied": self.satisfied,
                "trivial_from": self.trivial_from,
                "shifted_log": None if self.shifted_log is None else f"{self.shifted_log:.6f}",
            }
        )


def mult_bound_product(preset_name: str, p_max: int | None = None, delta=None) -> BoundReport:
    """Sum over primes p <= p_max of log max_k p^(-delta k) L(p, k).

    Every term of every local factor decreases in p, so once some prime has
    maximum exactly 1 (attained at k = 0) all larger primes do as well; the
    report records that prime as trivial_from.
    """
    base = PRESETS[preset_name]
    preset = base if delta is None else LocalPreset(base.name, Fraction(delta), base.paper_log_bound, base.level, base.level_bound)
    if p_max is None:
        p_max = 1_500_000 if preset_name == "G-SUM" else 2_000_000
    total = 0.0
    used = 0
    trivial_from = None
    maxima = []
    for p in primes_up_to(p_max):
        pm = local_max(preset, p)
        used += 1
        if pm.best_k == 0:
            # the maximum is exactly 1
            if trivial_from is None:
                trivial_from = p
        else:
            if trivial_from is not None:
                raise AssertionError(f"non-trivial maximum at {p} after trivial at {trivial_from}")
            total += pm.log_max
            maxima.append((p, pm.best_k, pm.log_max))
    shifted = total - local_max(preset, 2).log_max + local_max(preset, 2, shift=2).log_max
    # summation error of many floats, pushed upward
    computed = total * (1 + _REL_SLACK) + used * 1e-15
    return BoundReport(
        preset.name,
        p_max,
        computed,
        preset.paper_log_bound,
        computed <= float(preset.paper_log_bound) and trivial_from is not None,
        used,
        trivial_from,
        shifted,
        sorted(maxima, key=lambda t: -t[2])[:5],
    )


# -- the senior sum -----------------------------------------------------------------------

@dataclass(frozen=True)
class SeniorSumParams:
    m: int
    tau: Fraction
    s: int

    @classmethod
    def for_m(cls, m: int, tau) -> "SeniorSumParams":
        """Pick the unique s with m^(1/2+tau) <= 5^s < 5 m^(1/2+tau)."""
        tau = Fraction(tau)
        if not 0 < tau < Fraction(1, 2):
            raise ValueError("tau must lie in (0, 1/2)")
        if m < 1:
            raise ValueError("m must be positive")
        p, q = tau.numerator, tau.denominator
        target = m ** (q + 2 * p)  # 5^(2qs) >= target
        s = 0
        while 5 ** (2 * q * s) < target:
            s += 1
        return cls(m, tau, s)

    def window_ok(self) -> bool:
        p, q = self.tau.numerator, self.tau.denominator
        target = self.m ** (q + 2 * p)
        return 5 ** (2 * q * self.s) >= target > 5 ** (2 * q * (self.s - 1))

    def precondition_failures(self) -> list[str]:
        p, q = self.tau.numerator, self.tau.denominator
        out = []
        if not self.window_ok():
            out.append("5^s outside [m^(1/2+tau), 5 m^(1/2+tau))")
        if self.m % 5 == 0:
            out.append("5 divides m")
        if not 3**q * self.m ** (2 * p) > 64**q:
            out.append("m^tau <= 8 sqrt(3)/3")
        if self.m > 10**6:
            out.append("m too large for direct summation")
        return out


@dataclass(frozen=True)
class SeniorSumResult:
    params: SeniorSumParams
    S: int
    terms: int
    log_bound: float  # natural log of the closed-form bound
    within_bound: bool


def _c_limit(m: int, tau: Fraction) -> int:
    """Largest c with c <= 6 m^(1/2 - tau), decided exactly."""
    p, q = tau.numerator, tau.denominator
    rhs = 6 ** (2 * q) * m ** (q - 2 * p)
    c = int(6 * m ** (0.5 - float(tau))) + 2
    while c > 0 and c ** (2 * q) > rhs:
        c -= 1
    while (c + 1) ** (2 * q) <= rhs:
        c += 1
    return c


def _local_F(n: int, with_h_weight: bool) -> Fraction:
    total = Fraction(1)
    for p, k in factorize(n).factors:
        acc = Fraction(0)
        for a in range(k + 1):
            for b in range((k - a) // 2 + 1):
                w = (a + 1) * (2 * b + 1) ** 2 * (2 if a else 1)
                if with_h_weight and b:
                    w *= 2
                acc += Fraction(w * p ** (a // 2), p ** (a + b))
        total *= acc
    return total


def F1(n: int) -> Fraction:
    return _local_F(n, True)


def F2(n: int) -> Fraction:
    return _local_F(n, False)


def senior_log_bound(m: int, tau: Fraction):
    """Interval for the log of the closed-form bound on S."""
    lm = iv.log(m)
    half_minus = iv.mpf(1) / 2 - _iv_fraction(tau)
    f1, f2 = (_iv_fraction(F(4 * m)) for F in (F1, F2))
    main = (iv.exp(12) * f1 * (7 + lm) + iv.exp(31) * f2) * (12 + lm) ** 8 * iv.exp(half_minus * lm)
    # second term e^13667 ... dominates; combine in log space
    second_log = 13667 + 6 * iv.log(12 + lm) + (iv.mpf(1) / 2 - iv.mpf(1) / 160) * lm
    main_log = iv.log(main)
    hi = iv.mpf([max(main_log.a, second_log.a), max(main_log.b, second_log.b)])
    return hi + iv.log(1 + iv.exp(-abs(main_log - second_log)))


def eval_senior_S(params: SeniorSumParams) -> SeniorSumResult:
    """Exact S by direct summation."""
    bad = params.precondition_failures()
    if bad:
        raise ValueError("; ".join(bad))
    m, s = params.m, params.s
    four_m = 4 * m
    c_max = _c_limit(m, params.tau)
    omega_cache: dict[int, int] = {}
    total = 0
    terms = 0
    for c in range(1, c_max + 1):
        v5 = 0
        while c % 5 ** (v5 + 1) == 0:
            v5 += 1
        w = omega_cache.setdefault(c, len(factorize(5 * c).factors))
        g_part = square_part(math.gcd(four_m, c))
        for s1 in range(v5 + 1):
            # d^2 5^s c <= 5^(2 s1) 4m
            num, den = 5 ** (2 * s1) * four_m, 5**s * c
            d = 1
            while d * d * den <= num:
                value = four_m - d * d * c * 5**s // 5 ** (2 * s1)
                total += 2**w * tau(value) * g_part
                terms += 1
                d += 1
    log_bound = senior_log_bound(m, params.tau)
    within = total == 0 or bool(iv.log(total).b <= log_bound.a)
    return SeniorSumResult(params, total, terms, float(log_bound.a), within)
