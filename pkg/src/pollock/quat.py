"""Hurwitz quaternions with exact arithmetic.

A quaternion is stored by its doubled coordinates (2a0, 2a1, 2a2, 2a3), which
are integers of one parity exactly when the quaternion is in the Hurwitz order.
The canonical order on quaternions is lexicographic on that 4-tuple.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True, order=True)
class HurwitzQuaternion:
    twice: tuple[int, int, int, int]

    def __post_init__(self):
        t = tuple(int(v) for v in self.twice)
        if len(t) != 4:
            raise ValueError("need four doubled coordinates")
        if len({v & 1 for v in t}) != 1:
            raise ValueError(f"doubled coordinates {t} are not all of one parity")
        object.__setattr__(self, "twice", t)

    @classmethod
    def from_coords(cls, a0, a1=0, a2=0, a3=0) -> "HurwitzQuaternion":
        """Build from ordinary coordinates (ints, Fractions or exact halves)."""
        return cls(tuple(_double(v) for v in (a0, a1, a2, a3)))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.twice)

    def __add__(self, other):
        other = _coerce(other)
        return HurwitzQuaternion(tuple(x + y for x, y in zip(self.twice, other.twice)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return HurwitzQuaternion(tuple(x - y for x, y in zip(self.twice, other.twice)))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return HurwitzQuaternion(tuple(-x for x in self.twice))

    def __mul__(self, other):
        if isinstance(other, int):
            return HurwitzQuaternion(tuple(x * other for x in self.twice))
        a0, a1, a2, a3 = self.twice
        b0, b1, b2, b3 = other.twice
        prod = (
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
        # (2X)(2Y) = 4XY, so halve once to get the doubled coordinates of XY
        return HurwitzQuaternion(tuple(v // 2 for v in prod))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def conj(self) -> "HurwitzQuaternion":
        t0, t1, t2, t3 = self.twice
        return HurwitzQuaternion((t0, -t1, -t2, -t3))

    def norm(self) -> int:
        return sum(v * v for v in self.twice) // 4

    def trace(self) -> int:
        return self.twice[0]

    def is_vector(self) -> bool:
        return self.twice[0] == 0

    def is_zero(self) -> bool:
        return not any(self.twice)

    def divides_by_integer(self, n: int) -> bool:
        """Whether self / n is again a Hurwitz quaternion."""
        if any(v % n for v in self.twice):
            return False
        return len({(v // n) & 1 for v in self.twice}) == 1

    def exact_div_int(self, n: int) -> "HurwitzQuaternion":
        if not self.divides_by_integer(n):
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return HurwitzQuaternion(tuple(v // n for v in self.twice))

    def content(self) -> int:
        """Largest integer n with self / n Hurwitz."""
        if self.is_zero():
            return 0
        g = math.gcd(*self.twice)
        # the odd part of g always divides; powers of 2 need the parity check
        odd = g
        while odd % 2 == 0:
            odd //= 2
        n = odd
        while self.divides_by_integer(n * 2):
            n *= 2
        return n

    def is_proper(self) -> bool:
        return self.content() == 1

    def dot(self, other) -> Fraction:
        """Re(X conj(Y)): the Euclidean inner product of the coordinates."""
        return Fraction(sum(x * y for x, y in zip(self.twice, other.twice)), 4)

    def __str__(self):
        return format_quaternion(self)

    def __repr__(self):
        return f"HurwitzQuaternion({format_quaternion(self)!r})"


def _double(v) -> int:
    f = Fraction(v) * 2
    if f.denominator != 1:
        raise ValueError(f"{v} is not a half-integer")
    return int(f)


def _coerce(x) -> HurwitzQuaternion:
    if isinstance(x, HurwitzQuaternion):
        return x
    if isinstance(x, int):
        return HurwitzQuaternion((2 * x, 0, 0, 0))
    raise TypeError(f"cannot use {type(x).__name__} as a quaternion")


Q = HurwitzQuaternion.from_coords
ONE = Q(1)


# -- text format ---------------------------------------------------------------

def _fmt_half(t: int) -> str:
    return str(t // 2) if t % 2 == 0 else f"{t}/2"


def format_quaternion(x: HurwitzQuaternion) -> str:
    """'a0+a1i+a2j+a3k' with halves written as fractions, e.g. '1/2-1/2i+1/2j+3/2k'."""
    parts = []
    for t, unit in zip(x.twice, ("", "i", "j", "k")):
        s = _fmt_half(t)
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s + unit)
    return "".join(parts)


_UNIT_INDEX = {"": 0, "i": 1, "j": 2, "k": 3}
_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*([ijk]?)")


def parse_quaternion(text: str) -> HurwitzQuaternion:
    """Inverse of format_quaternion; also accepts omitted terms and bare units ('1+2i', '-j')."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty quaternion literal")
    coords = [Fraction(0)] * 4
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and not m.group(3)):
            raise ValueError(f"cannot parse quaternion literal {text!r} at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        coords[_UNIT_INDEX[m.group(3)]] += sign * mag
        pos = m.end()
    return Q(*coords)


# -- units and standard form --------------------------------------------------

@lru_cache(maxsize=1)
def enumerate_units() -> tuple[HurwitzQuaternion, ...]:
    """The 24 Hurwitz units, in canonical order."""
    return tuple(sorted(quaternions_of_norm(1)))


def quaternions_of_norm(n: int) -> list[HurwitzQuaternion]:
    """Every Hurwitz quaternion of norm n (doubled coordinates in the box |t| <= 2 sqrt n)."""
    target = 4 * n
    bound = math.isqrt(target)
    out = []
    for t0 in range(-bound, bound + 1):
        r0 = target - t0 * t0
        b1 = math.isqrt(r0)
        for t1 in range(-b1, b1 + 1):
            if (t1 - t0) & 1:
                continue
            r1 = r0 - t1 * t1
            b2 = math.isqrt(r1)
            for t2 in range(-b2, b2 + 1):
                if (t2 - t0) & 1:
                    continue
                r2 = r1 - t2 * t2
                t3 = math.isqrt(r2)
                if t3 * t3 != r2 or (t3 - t0) & 1:
                    continue
                out.append(HurwitzQuaternion((t0, t1, t2, t3)))
                if t3:
                    out.append(HurwitzQuaternion((t0, t1, t2, -t3)))
    return sorted(out)


def is_standard(x: HurwitzQuaternion) -> bool:
    """x = 1 mod 2B and Tr(x) = 2 mod 8."""
    t0, t1, t2, t3 = x.twice
    d = (t0 - 2, t1, t2, t3)
    if any(v % 2 for v in d):
        return False
    if len({(v // 2) & 1 for v in d}) != 1:
        return False
    return t0 % 8 == 2


def standard_associate(x: HurwitzQuaternion) -> HurwitzQuaternion:
    """The unique right associate x*u in standard form (norm must be 1 mod 4)."""
    if x.norm() % 4 != 1:
        raise ValueError(f"standard form needs norm = 1 mod 4, got {x.norm()}")
    hits = [x * u for u in enumerate_units() if is_standard(x * u)]
    if len(hits) != 1:
        raise AssertionError(f"{len(hits)} standard right associates of {x}")
    return hits[0]


def canonical_associate(x: HurwitzQuaternion) -> HurwitzQuaternion:
    """Least right associate x*u in the canonical (lexicographic) order."""
    return min(x * u for u in enumerate_units())


# -- Euclidean division -------------------------------------------------------

def _nearest(twice_num: tuple[int, ...], den: int) -> list[HurwitzQuaternion]:
    """Nearest integral and nearest half-integral quaternion to twice_num / (2*den)."""
    whole = tuple(2 * ((t + den) // (2 * den)) for t in twice_num)
    half = tuple(2 * (t // (2 * den)) + 1 for t in twice_num)
    return [HurwitzQuaternion(whole), HurwitzQuaternion(half)]


def euclid_divide(x: HurwitzQuaternion, d: HurwitzQuaternion, side: str = "right"):
    """Division with remainder.

    side='right': x = q*d + r.  side='left': x = d*q + r.  Always Nm(r) < Nm(d).
    """
    if d.is_zero():
        raise ZeroDivisionError("quaternion division by zero")
    n = d.norm()
    if side == "right":
        approx = x * d.conj()  # x d^-1 = x conj(d) / n
    elif side == "left":
        approx = d.conj() * x
    else:
        raise ValueError("side must be 'left' or 'right'")
    best = None
    for q in _nearest(approx.twice, n):
        r = x - (q * d if side == "right" else d * q)
        if best is None or r.norm() < best[1].norm():
            best = (q, r)
    q, r = best
    if r.norm() >= n:
        raise AssertionError("Euclidean step failed to reduce the norm")
    return q, r


def right_gcd(x: HurwitzQuaternion, y: HurwitzQuaternion) -> HurwitzQuaternion:
    """A greatest common right divisor (defined up to a left unit)."""
    while not y.is_zero():
        _, r = euclid_divide(x, y, "right")
        x, y = y, r
    return x


def left_gcd(x: HurwitzQuaternion, y: HurwitzQuaternion) -> HurwitzQuaternion:
    while not y.is_zero():
        _, r = euclid_divide(x, y, "left")
        x, y = y, r
    return x


def right_divides(d: HurwitzQuaternion, x: HurwitzQuaternion) -> bool:
    """Whether x = q*d for some Hurwitz q."""
    return (x * d.conj()).divides_by_integer(d.norm())


def left_divides(d: HurwitzQuaternion, x: HurwitzQuaternion) -> bool:
    return (d.conj() * x).divides_by_integer(d.norm())


# -- norm 5^s factorization ---------------------------------------------------

GENERATORS = (Q(1, 2), Q(1, -2), Q(1, 0, 2), Q(1, 0, -2), Q(1, 0, 0, 2), Q(1, 0, 0, -2))
GENERATOR_NAMES = ("1+2i", "1-2i", "1+2j", "1-2j", "1+2k", "1-2k")


def conj_label(label: int) -> int:
    """Label of the conjugate generator (flips the sign bit)."""
    return label ^ 1


def word_product(word) -> HurwitzQuaternion:
    """Product of generators in the given left-to-right order."""
    out = ONE
    for label in word:
        out = out * GENERATORS[label]
    return out


def factor_norm5(x: HurwitzQuaternion) -> list[int]:
    """Reduced word of a standard proper quaternion of norm 5^s.

    The word lists the factors in product order, word[0] being the leftmost:
    standard_associate(prod GENERATORS[w] for w in word) == x. Factors are
    peeled from the right, where exactly one generator divides at each step.
    """
    n = x.norm()
    s = 0
    while n % 5 == 0:
        n //= 5
        s += 1
    if n != 1:
        raise ValueError(f"norm {x.norm()} is not a power of 5")
    if not x.is_proper():
        raise ValueError(f"{x} is not proper")
    if not is_standard(x):
        raise ValueError(f"{x} is not in standard form")
    word: list[int] = []
    cur = x
    for _ in range(s):
        hits = [lab for lab, g in enumerate(GENERATORS) if right_divides(g, cur)]
        if len(hits) != 1:
            raise AssertionError(f"{len(hits)} generators right-divide {cur}")
        lab = hits[0]
        word.append(lab)
        cur = (cur * GENERATORS[lab].conj()).exact_div_int(5)
        if cur.norm() > 1:
            cur = standard_associate(cur)
    word.reverse()
    for a, b in zip(word, word[1:]):
        if b == conj_label(a):
            raise AssertionError("factorization produced a backtracking word")
    return word


def standard_proper_of_norm(n: int) -> list[HurwitzQuaternion]:
    return [x for x in quaternions_of_norm(n) if x.is_proper() and is_standard(x)]


# -- orthogonal lattices ------------------------------------------------------

# doubled-coordinate basis of the Hurwitz order
_HURWITZ_BASIS = ((2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (1, 1, 1, 1))


def _integer_kernel(w: list[int]) -> list[list[int]]:
    """Basis of {c in Z^n : w.c = 0} via unimodular column operations."""
    n = len(w)
    w = list(w)
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns are U[.][j]

    def colop(dst, src, k):  # col_dst -= k * col_src
        w[dst] -= k * w[src]
        for row in U:
            row[dst] -= k * row[src]

    while sum(1 for v in w if v) > 1:
        nz = [j for j in range(n) if w[j]]
        piv = min(nz, key=lambda j: abs(w[j]))
        for j in nz:
            if j != piv:
                colop(j, piv, w[j] // w[piv])
    keep = [j for j in range(n) if w[j] == 0]
    return [[U[i][j] for i in range(n)] for j in keep]


def gram_matrix(vectors) -> list[list[Fraction]]:
    return [[a.dot(b) for b in vectors] for a in vectors]


def det3(m) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _lll(basis, delta=Fraction(3, 4)):
    """Plain exact LLL on a short list of quaternions (dimension 3 here)."""
    b = list(basis)
    k = 1

    def gso(b):
        bs, mu = [], [[Fraction(0)] * len(b) for _ in b]
        for i, v in enumerate(b):
            vec = [Fraction(c) for c in v.coords]
            for j in range(i):
                mu[i][j] = sum(Fraction(c) * d for c, d in zip(v.coords, bs[j])) / sum(d * d for d in bs[j])
                vec = [x - mu[i][j] * y for x, y in zip(vec, bs[j])]
            bs.append(vec)
        return bs, mu

    bs, mu = gso(b)
    while k < len(b):
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = b[k] - b[j] * q
                bs, mu = gso(b)
        nk = sum(x * x for x in bs[k])
        nk1 = sum(x * x for x in bs[k - 1])
        if nk >= (delta - mu[k][k - 1] ** 2) * nk1:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu = gso(b)
            k = max(k - 1, 1)
    return b


@dataclass(frozen=True)
class OrthogonalLattice:
    basis: tuple[HurwitzQuaternion, HurwitzQuaternion, HurwitzQuaternion]
    gram_determinant: Fraction


def orthogonal_lattice(r: HurwitzQuaternion) -> OrthogonalLattice:
    """LLL-reduced basis of the Hurwitz quaternions orthogonal to r, and its Gram determinant."""
    if r.is_zero():
        raise ValueError("orthogonal lattice of zero is not rank 3")
    w = [sum(b * t for b, t in zip(row, r.twice)) for row in _HURWITZ_BASIS]
    kernel = _integer_kernel(w)
    basis = []
    for c in kernel:
        t = [sum(c[i] * _HURWITZ_BASIS[i][k] for i in range(4)) for k in range(4)]
        basis.append(HurwitzQuaternion(tuple(t)))
    basis = _lll(basis)
    return OrthogonalLattice(tuple(basis), det3(gram_matrix(basis)))


def is_orthogonal_to(x: HurwitzQuaternion, r: HurwitzQuaternion) -> bool:
    return sum(a * b for a, b in zip(x.twice, r.twice)) == 0


def signed_permutations(x: HurwitzQuaternion):
    """All coordinate permutations and sign changes of x (with repeats)."""
    for perm in itertools.permutations(x.twice):
        for signs in itertools.product((1, -1), repeat=4):
            yield HurwitzQuaternion(tuple(s * v for s, v in zip(signs, perm)))
