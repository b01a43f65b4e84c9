"""Integer-valued cubics a(x^3-x)/6 + b(x^2-x)/2 + cx and octahedral numbers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import crt, integer_cube_root, is_prime, valuation


@dataclass(frozen=True)
class CubicPoly:
    a: int
    b: int
    c: int

    def __call__(self, x: int) -> int:
        return self.a * (x**3 - x) // 6 + self.b * (x * x - x) // 2 + self.c * x

    @property
    def content(self) -> int:
        return math.gcd(self.a, self.b, self.c)

    def monomial_coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        """(x^3, x^2, x) coefficients; the constant term is always 0."""
        a6, b2 = Fraction(self.a, 6), Fraction(self.b, 2)
        return a6, b2, self.c - a6 - b2

    def induces_mod(self, p: int, k: int = 1) -> bool:
        """Whether x -> f(x) mod p^k is well defined on Z/p^k.

        f(x+q) - f(x) is integer valued of degree <= 2, so it vanishes mod q
        everywhere once it does at x = 0, 1, 2.
        """
        q = p**k
        return all((self(x + q) - self(x)) % q == 0 for x in range(3))

    def __str__(self):
        return f"{self.a}(x^3-x)/6 + {self.b}(x^2-x)/2 + {self.c}x"


OCTAHEDRAL = CubicPoly(4, 0, 1)


def eval_cubic(f: CubicPoly, x: int) -> int:
    return f(x)


def octahedral(x: int) -> int:
    """(2x^3 + x)/3."""
    return (2 * x**3 + x) // 3


@dataclass(frozen=True)
class OctahedralValue:
    x: int
    value: int


def octahedral_seq(limit: int) -> list[OctahedralValue]:
    """Positive octahedral numbers <= limit in increasing order."""
    out = []
    x = 1
    while (v := octahedral(x)) <= limit:
        out.append(OctahedralValue(x, v))
        x += 1
    return out


def octahedral_root(n: int) -> int | None:
    """x >= 0 with octahedral(x) == n, or None."""
    if n < 0:
        return None
    # 2x^3 <= 3n < 2x^3 + 3x, so x is floor((3n/2)^(1/3)) or just below it
    x = integer_cube_root(3 * n // 2)
    for cand in (x, x - 1, x + 1):
        if cand >= 0 and octahedral(cand) == n:
            return cand
    return None


def is_octahedral(n: int) -> bool:
    return octahedral_root(n) is not None


# -- value sets ----------------------------------------------------------------

@dataclass(frozen=True)
class ValueSet:
    p: int
    values: frozenset[int]
    watson_applicable: bool
    watson_count: int | None

    @property
    def watson_ok(self) -> bool:
        return not self.watson_applicable or len(self.values) == self.watson_count


def value_set_mod(f: CubicPoly, p: int) -> ValueSet:
    """Exact image of f on Z/p.

    For p >= 5 the cubic is depressed (shift and scale, which keep the image
    size) and, when it becomes x^3 + Ax with A != 0, the image must have
    exactly floor((2p+1)/3) elements.
    """
    if not f.induces_mod(p):
        raise ValueError(f"{f} does not induce a function mod {p}")
    values = frozenset(f(x) % p for x in range(p))
    applicable = False
    if p >= 5:
        c3, c2, c1 = ((c.numerator * pow(c.denominator, -1, p)) % p for c in f.monomial_coefficients())
        if c3:
            inv = pow(c3, -1, p)
            # x -> x - c2/(3 c3) kills the square term; linear coeff becomes c1 - c2^2/(3 c3)
            lin = (c1 - c2 * c2 * pow(3 * c3, -1, p)) * inv % p
            applicable = lin != 0
    return ValueSet(p, values, applicable, (2 * p + 1) // 3 if applicable else None)


# -- surjectivity on Z_p -------------------------------------------------------

def _valuation_frac(x: Fraction, p: int):
    if x == 0:
        return math.inf
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def surjective_criterion(f: CubicPoly, p: int) -> tuple[bool, str]:
    a6, b2 = Fraction(f.a, 6), Fraction(f.b, 2)
    v = min(_valuation_frac(a6, p), _valuation_frac(b2, p))
    if v != 0:
        return True, "valuation-nonzero" if v > 0 else "valuation-negative"
    if p == 3 and f.b % 3 == 0:
        diff = a6 - f.c
        if diff.denominator % 3 and (diff.numerator * pow(diff.denominator, -1, 3)) % 3:
            return True, "p3-exception"
    return False, "criterion-fails"


def surjective_mod_power(f: CubicPoly, p: int, k: int) -> bool:
    """Brute force: does f hit every class mod p^k?

    f(x) mod p^k depends only on x mod p^(k+1) (the denominators 2, 3 cost at
    most one power of p), so that many arguments suffice.
    """
    q = p**k
    seen = bytearray(q)
    hits = 0
    for x in range(p ** (k + 1)):
        r = f(x) % q
        if not seen[r]:
            seen[r] = 1
            hits += 1
            if hits == q:
                return True
    return False


@dataclass(frozen=True)
class SurjectivityResult:
    surjective: bool
    reason: str
    brute_force_mod_p3: bool

    @property
    def agrees(self) -> bool:
        return self.surjective == self.brute_force_mod_p3

    def __bool__(self):
        return self.surjective


def surjective_on_zp(f: CubicPoly, p: int) -> SurjectivityResult:
    """Decide whether f: Z_p -> Z_p is onto, with a brute-force cross-check mod p^3.

    A disagreement is reported through ``agrees`` rather than raised.
    """
    if f.content != 1:
        raise ValueError(f"gcd(a, b, c) must be 1 for {f}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    ok, reason = surjective_criterion(f, p)
    return SurjectivityResult(ok, reason, surjective_mod_power(f, p, 3))


# -- the octahedral congruence ------------------------------------------------

def _lift(f, target: int, p: int, levels: int, start_mod: int) -> list[int]:
    """Residues x mod start_mod * p^levels with f(x) = target mod p^levels,
    starting from every residue mod start_mod."""
    roots = list(range(start_mod))
    q, m = 1, start_mod
    for _ in range(levels):
        q *= p
        roots = [x + t * m for x in roots for t in range(p) if (f(x + t * m) - target) % q == 0]
        m *= p
    return sorted(roots)


def octa_congruence_solve(n: int, u: int, v: int) -> list[int]:
    """The three classes x mod 2^u 3^(v+1) with (2x^3+x)/3 = n mod 2^u 3^v.

    2-adically the octahedral map is a bijection; 3-adically x is tracked one
    digit ahead of the modulus (x -> 3x makes it a bijection again).
    """
    if u < 0 or v < 0:
        raise ValueError("exponents must be nonnegative")
    two = _lift(octahedral, n, 2, u, 1)
    three = _lift(octahedral, n, 3, v, 3)
    if len(two) != 1 or len(three) != 3:
        raise AssertionError(f"unexpected lift sizes {len(two)}, {len(three)}")
    mod2, mod3 = 2**u, 3 ** (v + 1)
    return sorted(crt((two[0], r), (mod2, mod3))[0] for r in three)


def octa_congruence_scan(n: int, u: int, v: int) -> list[int]:
    """Brute-force companion of octa_congruence_solve."""
    M, q = 2**u * 3 ** (v + 1), 2**u * 3**v
    return [x for x in range(M) if (octahedral(x) - n) % q == 0]
