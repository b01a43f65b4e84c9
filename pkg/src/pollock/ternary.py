"""Diagonal ternary forms ax^2 + by^2 + cz^2 and related counting."""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .arith import (
    NotFound,
    is_prime,
    is_square_mod,
    jacobi,
    omega,
    power_products_in_interval,
    square_part,
    tau,
)


@dataclass(frozen=True)
class DiagonalTernaryForm:
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if min(self.coefficients) < 1:
            raise ValueError("coefficients must be positive")

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.gamma)

    def __call__(self, x: int, y: int, z: int) -> int:
        return self.alpha * x * x + self.beta * y * y + self.gamma * z * z

    def __str__(self):
        return f"{self.alpha}x^2+{self.beta}y^2+{self.gamma}z^2"


MAIN_FORM = DiagonalTernaryForm(83, 91, 99)
SUMS_OF_SQUARES = DiagonalTernaryForm(1, 1, 1)


@dataclass(frozen=True)
class Representation:
    x: int
    y: int
    z: int
    primitive: bool

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def _emit(form: DiagonalTernaryForm, m: int, x: int, y: int, z: int) -> Representation:
    if form(x, y, z) != m:
        raise AssertionError(f"bad representation {(x, y, z)} of {m}")
    return Representation(x, y, z, math.gcd(x, y, z) == 1)


# values above this go through Python integers rather than int64
_INT64_SAFE = 1 << 60


def _nonneg_solutions(form: DiagonalTernaryForm, m: int) -> Iterator[tuple[int, int, int]]:
    """Nonnegative (x, y, z) in increasing (x, y) order."""
    a, b, c = form.coefficients
    for x in range(math.isqrt(m // a) + 1):
        rest = m - a * x * x
        ymax = math.isqrt(rest // b)
        if rest < _INT64_SAFE:
            ys = np.arange(ymax + 1, dtype=np.int64)
            rem = rest - b * ys * ys
            ok = rem % c == 0
            ys, zz = ys[ok], rem[ok] // c
            z = np.floor(np.sqrt(zz.astype(np.float64))).astype(np.int64)
            # float sqrt can be off by one either way near perfect squares
            z -= z * z > zz
            z += (z + 1) * (z + 1) <= zz
            hit = z * z == zz
            for y, zv in zip(ys[hit].tolist(), z[hit].tolist()):
                yield x, y, zv
        else:
            for y in range(ymax + 1):
                r2 = rest - b * y * y
                if r2 % c:
                    continue
                z = math.isqrt(r2 // c)
                if z * z * c == r2:
                    yield x, y, z


def _signed(t: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    choices = [(v, -v) if v else (0,) for v in t]
    return list(itertools.product(*choices))


def represent(form: DiagonalTernaryForm, m: int, primitive_only: bool = False, mode: str = "first"):
    """Representations of m by the form.

    mode 'first' returns the first nonnegative solution found (x, then y
    ascending) or None; 'all' returns every signed solution in sorted order;
    'count' returns how many signed solutions there are.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if mode not in ("first", "all", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    found = []
    for x, y, z in _nonneg_solutions(form, m):
        if primitive_only and math.gcd(x, y, z) != 1:
            continue
        if mode == "first":
            return _emit(form, m, x, y, z)
        found.extend(_signed((x, y, z)))
    if mode == "first":
        return None
    if mode == "count":
        return len(found)
    return [_emit(form, m, *t) for t in sorted(found)]


def represent_bounded(form: DiagonalTernaryForm, m: int, bound: int, primitive_only: bool = True):
    """First nonnegative solution with every coordinate below `bound`, or None."""
    for x, y, z in _nonneg_solutions(form, m):
        if x >= bound:
            break
        if y < bound and z < bound and (not primitive_only or math.gcd(x, y, z) == 1):
            return _emit(form, m, x, y, z)
    return None


# -- Linnik's hypotheses ---------------------------------------------------------

@dataclass(frozen=True)
class LinnikReport:
    pairwise_coprime: bool
    all_odd: bool
    s_prime: bool
    coprime_to_s: bool
    residue_conditions: tuple[bool, bool, bool]  # -bc mod a, -ac mod b, -ab mod c
    congruent_mod_4: bool

    @property
    def ok(self) -> bool:
        return self.pairwise_coprime and self.all_odd and self.s_prime and self.coprime_to_s and all(self.residue_conditions)

    def __bool__(self):
        return self.ok


def check_linnik_conditions(alpha: int, beta: int, gamma: int, s: int) -> LinnikReport:
    trio = (alpha, beta, gamma)
    pairwise = all(math.gcd(u, v) == 1 for u, v in itertools.combinations(trio, 2))
    residues = (
        is_square_mod(-beta * gamma, alpha),
        is_square_mod(-alpha * gamma, beta),
        is_square_mod(-alpha * beta, gamma),
    )
    return LinnikReport(
        pairwise_coprime=pairwise,
        all_odd=all(v % 2 for v in (*trio, s)),
        s_prime=is_prime(s),
        coprime_to_s=all(math.gcd(v, s) == 1 for v in trio),
        residue_conditions=residues,
        congruent_mod_4=alpha % 4 == beta % 4 == gamma % 4,
    )


# -- range scans -------------------------------------------------------------------

@dataclass(frozen=True)
class ScanRecord:
    m: int
    status: str  # "represented" or "none"
    witness: tuple[int, int, int] | None

    def to_json(self) -> str:
        return json.dumps({"m": self.m, "status": self.status, "witness": self.witness})


@dataclass
class ScanReport:
    lo: int
    hi: int
    tested: int = 0
    failures: list[int] = field(default_factory=list)
    records: list[ScanRecord] = field(default_factory=list)

    def lines(self) -> Iterator[str]:
        for rec in self.records:
            yield rec.to_json()


def passes_filters(m: int, filters) -> bool:
    return all(m % mod in allowed for mod, allowed in filters)


def scan_range(
    form: DiagonalTernaryForm,
    lo: int,
    hi: int,
    residue_filters: Iterable[tuple[int, Iterable[int]]] = (),
    sample: int | None = None,
    seed: int = 0,
    primitive_only: bool = True,
) -> ScanReport:
    """Test every (or `sample` seeded-random) m in (lo, hi] passing the filters."""
    if lo >= hi:
        raise ValueError("need lo < hi")
    filters = [(mod, frozenset(c % mod for c in allowed)) for mod, allowed in residue_filters]
    if sample is None:
        values: Iterable[int] = (m for m in range(lo + 1, hi + 1) if passes_filters(m, filters))
    else:
        rng = random.Random(seed)
        chosen: set[int] = set()
        attempts = 0
        while len(chosen) < sample:
            attempts += 1
            if attempts > 1000 * sample + 10_000:
                raise NotFound("filters leave too few values to sample")
            m = rng.randint(lo + 1, hi)
            if passes_filters(m, filters):
                chosen.add(m)
        values = sorted(chosen)
    report = ScanReport(lo, hi)
    for m in values:
        rep = represent(form, m, primitive_only=primitive_only, mode="first")
        report.tested += 1
        if rep is None:
            report.failures.append(m)
            report.records.append(ScanRecord(m, "none", None))
        else:
            report.records.append(ScanRecord(m, "represented", rep.as_tuple()))
    return report


# -- the form family -----------------------------------------------------------------

FAMILY_WINDOW = (Fraction(1), Fraction(101, 100), Fraction(103, 100))


def alpha_component(lo, hi) -> int:
    """Least 3^even 5^even (positive exponents) strictly inside (lo, hi)."""
    found = power_products_in_interval((9, 25), lo, hi, min_exponents=(1, 1))
    if not found:
        raise NotFound(f"no 3^(2x) 5^(2y) in ({lo}, {hi})")
    return found[0][1]


def _odd_component(even_base: int, odd_prime: int, lo, hi) -> int:
    """Least even_base^(2x) odd_prime^(2y+1), x >= 1, y >= 0, inside (lo, hi)."""
    lo, hi = Fraction(lo) / odd_prime, Fraction(hi) / odd_prime
    found = power_products_in_interval((even_base**2, odd_prime**2), lo, hi, min_exponents=(1, 0))
    if not found:
        raise NotFound(f"no {even_base}^even {odd_prime}^odd in the window")
    return found[0][1] * odd_prime


def build_form_family(D, window=FAMILY_WINDOW) -> DiagonalTernaryForm:
    """alpha = 3^e 5^e in (D, 1.01D); beta = 7^e 17^o and gamma = 11^e 13^o in (1.01D, 1.03D)."""
    D = Fraction(D)
    low, mid, high = (w * D for w in window)
    alpha = alpha_component(low, mid)
    beta = _odd_component(7, 17, mid, high)
    gamma = _odd_component(11, 13, mid, high)
    return DiagonalTernaryForm(alpha, beta, gamma)


# -- six primes for a residue class -------------------------------------------------------

@dataclass(frozen=True)
class AbcPrimes:
    a: int  # normalized modulus (multiple of 4)
    b: int  # normalized odd residue
    primes: tuple[int, int, int, int, int, int]
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _normalize_ab(a: int, b: int) -> tuple[int, int]:
    if a < 1 or math.gcd(a, b) != 1:
        raise ValueError("need a > 0 and gcd(a, b) = 1")
    a2 = a * 4 // math.gcd(a, 4)
    b2 = b if b % 2 else b + a
    return a2, b2 % a2


def _legendre_is_one(x: int, p: int) -> bool:
    return jacobi(x % p, p) == 1


def _abc_checks(a: int, b: int, ps) -> dict:
    p1, p2, p3, p4, p5, p6 = ps
    small, big = (p1, p2, p3), (p4, p5, p6)
    sign = 1 if b % 4 == 1 else -1
    return {
        "all prime and distinct": all(is_prime(p) for p in ps) and len(set(ps)) == 6,
        "p1..p3 = 1 mod a": all(p % a == 1 % a for p in small),
        "p4..p6 = b mod a": all(p % a == b for p in big),
        "p4..p6 residues mod p1..p3": all(_legendre_is_one(q, p) for q in big for p in small),
        "(p5/p4) = 1": _legendre_is_one(p5, p4),
        "(p6/p5) = 1": _legendre_is_one(p6, p5),
        "(p6/p4) = b mod 4": jacobi(p6 % p4, p4) == sign,
        "(-p4p5/p6) = 1": _legendre_is_one(-p4 * p5, p6),
        "(-p5p6/p4) = 1": _legendre_is_one(-p5 * p6, p4),
        "(-p6p4/p5) = 1": _legendre_is_one(-p6 * p4, p5),
    }


def find_abc_primes(a: int, b: int, budget: int = 10**7) -> AbcPrimes:
    """First six primes (in increasing search order) meeting the residue pattern."""
    a, b = _normalize_ab(a, b)

    def primes_in_class(residue: int, start: int = 0):
        p = start + ((residue - start) % a)
        while p <= budget:
            if p > 2 and is_prime(p):
                yield p
            p += a

    small = list(itertools.islice(primes_in_class(1), 3))
    if len(small) < 3:
        raise NotFound("search budget exhausted for p1..p3")
    sign = 1 if b % 4 == 1 else -1

    def good_big(p):
        return p not in small and all(_legendre_is_one(p, q) for q in small)

    gen = (p for p in primes_in_class(b) if good_big(p))
    try:
        p4 = next(gen)
        p5 = next(p for p in gen if _legendre_is_one(p, p4))
        p6 = next(p for p in gen if _legendre_is_one(p, p5) and jacobi(p % p4, p4) == sign)
    except StopIteration:
        raise NotFound("search budget exhausted for p4..p6") from None
    ps = (*small, p4, p5, p6)
    checks = _abc_checks(a, b, ps)
    if not all(checks.values()):
        raise AssertionError(f"derived symbol check failed: {checks}")
    return AbcPrimes(a, b, ps, checks)


# -- sums of three squares ----------------------------------------------------------------

def r3_primitive(m: int) -> int:
    """Number of (x, y, z) in Z^3 with x^2 + y^2 + z^2 = m and gcd 1."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > 10**9:
        raise ValueError("r3_primitive is an oracle for m <= 10^9")
    return represent(SUMS_OF_SQUARES, m, primitive_only=True, mode="count")


# -- binary forms as sums of three squares of linear forms -----------------------------------

def _vectors_of_norm(n: int) -> list[tuple[int, int, int]]:
    out = []
    b = math.isqrt(n)
    for x in range(-b, b + 1):
        for y in range(-b, b + 1):
            r = n - x * x - y * y
            if r < 0:
                continue
            z = math.isqrt(r)
            if z * z == r:
                out.extend({(x, y, z), (x, y, -z)})
    return out


@dataclass(frozen=True)
class LinearRepsReport:
    p: int
    q: int
    r: int
    total: int
    proper: int
    proper_bound: int  # 48 * 2^omega(d)
    conditioned: int  # representations meeting the note-13 conditions a), b)
    conditioned_bound: int

    @property
    def within_bounds(self) -> bool:
        proper_ok = self.proper == 0 if math.gcd(self.p, self.q, self.r) != 1 else self.proper <= self.proper_bound
        return proper_ok and self.conditioned <= self.conditioned_bound


def count_three_square_linear_reps(p: int, q: int, r: int) -> LinearRepsReport:
    """Count (a, b) in Z^3 x Z^3 with |a|^2 = p, |b|^2 = r, a.b = q, i.e.
    px^2 + 2qxy + ry^2 = sum (a_i x + b_i y)^2."""
    d = p * r - q * q
    if p <= 0 or d <= 0:
        raise ValueError("form must be positive definite")
    delta = math.gcd(p, q, r)
    bs = _vectors_of_norm(r)
    total = proper = conditioned = 0
    for a in _vectors_of_norm(p):
        for b in bs:
            if a[0] * b[0] + a[1] * b[1] + a[2] * b[2] != q:
                continue
            total += 1
            cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            e = math.gcd(*cross)
            if e == 1:
                proper += 1
            if math.gcd(*a) == 1 and e % delta == 0:
                conditioned += 1
    dd = d // (delta * delta)
    return LinearRepsReport(
        p, q, r, total, proper,
        48 * 2 ** omega(d),
        conditioned,
        96 * 2 ** omega(p) * tau(dd) * square_part(math.gcd(dd, p)),
    )
