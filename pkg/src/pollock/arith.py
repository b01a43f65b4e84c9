"""Exact integer utilities: factorization, divisor statistics, Jacobi symbols,
square roots modulo composites, Hensel lifting and products of powers in a
window.

Everything here is a pure function of its arguments and works with Python's
arbitrary precision integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable, Optional

if TYPE_CHECKING:
    from .cubic import CubicPoly


class NotFound(Exception):
    """A bounded search finished without finding anything (a legitimate outcome)."""


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("value must be nonnegative")
        primes = [p for p, _ in self.factors]
        if any(e < 1 for _, e in self.factors) or primes != sorted(set(primes)):
            raise ValueError("factors must have increasing primes and positive exponents")
        if self.value >= 1 and math.prod(p**e for p, e in self.factors) != self.value:
            raise ValueError("factors do not multiply to value")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __int__(self):
        return self.value


# -- primes -------------------------------------------------------------------

_SMALL_LIMIT = 1 << 16


@lru_cache(maxsize=8)
def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes; cached for repeated small limits."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_sieve_array(limit: int):
    """numpy boolean array ``a`` with ``a[n]`` true iff n is prime, for n <= limit."""
    import numpy as np

    a = np.ones(limit + 1, dtype=bool)
    a[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if a[p]:
            a[p * p :: p] = False
    return a


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic for n < 3.3e24 (first 13 prime bases); probabilistic-free
    beyond that only in the sense that no counterexample to these bases is
    known."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime > n."""
    n += 1
    while not is_prime(n):
        n += 1
    return n


def _brent_rho(n: int) -> int:
    # fixed starting constants keep the factor search reproducible
    if n % 2 == 0:
        return 2
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def _split_all(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _split_all(d, out)
    _split_all(n // d, out)


def factorize(n: int) -> FactoredInteger:
    """Full prime factorization of n >= 1.

    Trial division by primes below 2**16, then deterministic Miller-Rabin and
    Brent's rho with fixed constants for what is left.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    found: dict[int, int] = {}
    m = n
    for p in primes_up_to(_SMALL_LIMIT):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < _SMALL_LIMIT * _SMALL_LIMIT:
            found[m] = found.get(m, 0) + 1
        else:
            _split_all(m, found)
    return FactoredInteger(n, tuple(sorted(found.items())))


def _as_factored(n) -> FactoredInteger:
    return n if isinstance(n, FactoredInteger) else factorize(n)


def omega(n) -> int:
    return len(_as_factored(n).factors)


def big_omega(n) -> int:
    return sum(e for _, e in _as_factored(n).factors)


def tau(n) -> int:
    return math.prod(e + 1 for _, e in _as_factored(n).factors)


def square_part(n) -> int:
    """n^[1/2]: the largest integer whose square divides n."""
    return math.prod(p ** (e // 2) for p, e in _as_factored(n).factors)


def divisor_stats(n) -> tuple[int, int, int, int]:
    """(omega, Omega, tau, n^[1/2]) of n."""
    f = _as_factored(n)
    if f.value < 1:
        raise ValueError("divisor_stats needs n >= 1")
    return omega(f), big_omega(f), tau(f), square_part(f)


def divisors(n) -> list[int]:
    f = _as_factored(n)
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def squarefree_part(n: int) -> int:
    f = factorize(n)
    return math.prod(p for p, e in f.factors if e % 2)


# -- residues -----------------------------------------------------------------

def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _count_sqrt_prime_power(a: int, p: int, k: int) -> int:
    """Number of x mod p^k with x^2 = a (mod p^k)."""
    q = p**k
    a %= q
    if a == 0:
        return p ** (k // 2)
    l = 0
    while a % p == 0:
        a //= p
        l += 1
    if l % 2:
        return 0
    # x = p^(l/2) y with y^2 = a' (mod p^(k-l)), y a unit; each y lifts p^(l/2) ways
    j = k - l
    mult = p ** (l // 2)
    if p == 2:
        if j == 1:
            units = 1
        elif j == 2:
            units = 2 if a % 4 == 1 else 0
        else:
            units = 4 if a % 8 == 1 else 0
    else:
        units = 2 if pow(a, (p - 1) // 2, p) == 1 else 0
    return units * mult


def count_sqrt_mod(a: int, b: int) -> tuple[int, int]:
    """Exact number of square roots of a modulo b, and the divisor-type bound
    2^(1+omega(b/(a,b))) * (a,b)^[1/2] which it never exceeds."""
    if b < 1:
        raise ValueError("modulus must be positive")
    count = 1
    for p, k in factorize(b).factors:
        count *= _count_sqrt_prime_power(a, p, k)
        if count == 0:
            break
    g = math.gcd(a, b)
    bound = 2 ** (1 + omega(b // g)) * square_part(g)
    return count, bound


def is_square_mod(a: int, n: int) -> bool:
    """Whether x^2 = a (mod n) is solvable, decided prime power by prime power."""
    if n == 1:
        return True
    return all(_count_sqrt_prime_power(a, p, k) > 0 for p, k in factorize(n).factors)


def crt(residues: Iterable[int], moduli: Iterable[int]) -> tuple[int, int]:
    """Combine pairwise coprime congruences; returns (x, M)."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = math.gcd(m, n)
        if g != 1:
            raise ValueError("moduli must be pairwise coprime")
        inv = pow(m, -1, n)
        x = x + m * ((r - x) * inv % n)
        m *= n
    return x % m, m


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def integer_cube_root(n: int) -> int:
    """floor(n^(1/3)) for n >= 0, exact for arbitrarily large n."""
    if n < 0:
        raise ValueError("negative input")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 2) // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer; math.inf for 0."""
    if n == 0:
        return math.inf
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# -- Hensel lifting -----------------------------------------------------------

def hensel_roots(f: "CubicPoly", target: int, p: int, k: int) -> list[int]:
    """All x mod p^k with f(x) = target (mod p^k), lifted digit by digit.

    Raises ValueError when f does not induce a map on Z/p^k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not f.induces_mod(p, k):
        raise ValueError(f"{f} does not induce a function modulo {p}^{k}")
    roots = [x for x in range(p) if (f(x) - target) % p == 0]
    q = p
    for j in range(2, k + 1):
        q_next = q * p
        roots = [
            x + t * q
            for x in roots
            for t in range(p)
            if (f(x + t * q) - target) % q_next == 0
        ]
        q = q_next
    return sorted(roots)


# -- products of two powers in a window ----------------------------------------

def _to_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("use exact rationals, not floats")
    return Fraction(v)


def power_products_in_interval(
    bases: tuple[int, ...],
    lo,
    hi,
    min_exponents: Optional[tuple[int, ...]] = None,
    residue: Optional[tuple[int, int]] = None,
) -> list[tuple[tuple[int, ...], int]]:
    """All products prod(b_i^e_i) with lo < value < hi, e_i >= min_exponents[i].

    Results are ((e_1, ..., e_r), value) sorted by value, then exponents.
    Comparisons are exact.
    """
    lo, hi = _to_fraction(lo), _to_fraction(hi)
    if any(b < 2 for b in bases):
        raise ValueError("bases must exceed 1")
    mins = min_exponents or (1,) * len(bases)
    out = []

    def rec(i, acc, exps):
        if acc >= hi:
            return
        if i == len(bases):
            if acc > lo and (residue is None or acc % residue[0] == residue[1] % residue[0]):
                out.append((tuple(exps), acc))
            return
        e = mins[i]
        v = acc * bases[i] ** e
        while v < hi:
            rec(i + 1, v, exps + [e])
            e += 1
            v *= bases[i]

    rec(0, 1, [])
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def power_product_in_interval(a: int, b: int, lo, hi, residue_constraint=None) -> tuple[int, int]:
    """Positive exponents (x, y) with lo < a^x b^y < hi, optionally with
    a^x b^y in a residue class (modulus, class). The smallest such product wins.

    Raises NotFound when the window holds no such product.
    """
    if a < 2 or b < 2:
        raise ValueError("a, b must be > 1")
    if _multiplicatively_dependent(a, b):
        raise ValueError(f"{a} and {b} are multiplicatively dependent")
    if _to_fraction(lo) >= _to_fraction(hi):
        raise ValueError("empty window")
    found = power_products_in_interval((a, b), lo, hi, residue=residue_constraint)
    if not found:
        raise NotFound(f"no {a}^x {b}^y in ({lo}, {hi})")
    return found[0][0]


def _multiplicatively_dependent(a: int, b: int) -> bool:
    fa, fb = factorize(a).factors, factorize(b).factors
    if [p for p, _ in fa] != [p for p, _ in fb]:
        return False
    ratios = {Fraction(ea, eb) for (_, ea), (_, eb) in zip(fa, fb)}
    return len(ratios) == 1
