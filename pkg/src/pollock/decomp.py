"""Writing n as a sum of seven positive octahedral numbers, with certificates.

The constructive route picks T = 2^a 3^b near n^(1/3)/173 and a small u, so that

    n = 4T(83x^2 + 91y^2 + 99z^2) + 2oct(83T) + 2oct(91T) + 2oct(99T) + oct(u)

and then uses oct(A + x) + oct(A - x) = 2 oct(A) + 4A x^2 three times.  Small n
go through an exhaustive search instead.  Whatever produced a certificate,
verify_certificate re-derives everything from scratch.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .arith import NotFound, crt, integer_cube_root
from .cubic import octa_congruence_solve, octahedral, octahedral_root, octahedral_seq
from .ternary import MAIN_FORM, represent_bounded

FORM_COEFFS = (83, 91, 99)
PAPER_BRACKET = (Fraction(1, 174), Fraction(1, 172))
RELAXED_BRACKET = (Fraction(1, 220), Fraction(1, 145))
# 2^-336 3^212 is = 1 mod 5 and lies in (1.008, 174/172)
PAPER_RATIO = Fraction(3**212, 2**336)
CERT_VERSION = 1


class DecompositionFailure(Exception):
    """A legitimate failure of the constructive pipeline; `kind` names the stage."""

    def __init__(self, kind: str, detail: str = ""):
        super().__init__(f"{kind}: {detail}" if detail else kind)
        self.kind = kind
        self.detail = detail


NO_T = "NoT"
NO_CONGRUENCE = "NoCongruenceSolution"
NO_REPRESENTATION = "NoFormRepresentation"


# -- residue class t ------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueChoice:
    t: int
    branch: str  # "n-t^3+t" or "n-t^3"
    target: int  # required value of oct(u) mod 5, 1 or 4


def residue_choices(n: int) -> list[ResidueChoice]:
    """Every (t, branch) in the search order t = 1 then 4, "n-t^3+t" before "n-t^3"."""
    out = []
    for t in (1, 4):
        for branch, value in (("n-t^3+t", n - t**3 + t), ("n-t^3", n - t**3)):
            if value % 5 in (1, 4):
                out.append(ResidueChoice(t, branch, value % 5))
    return out


def choose_residue_t(n: int) -> ResidueChoice:
    choices = residue_choices(n)
    if not choices:
        raise AssertionError(f"no residue class t for n = {n}")
    return choices[0]


# -- the scaling factor T -------------------------------------------------------------

@dataclass(frozen=True)
class ScalingT:
    a_exp: int
    b_exp: int

    @property
    def value(self) -> int:
        return 2**self.a_exp * 3**self.b_exp


def in_bracket(n: int, T: int, bracket) -> bool:
    """n^(1/3) c_lo < T < n^(1/3) c_hi, compared as cubes."""
    lo, hi = bracket
    return n * lo**3 < T**3 < n * hi**3


def find_scaling_T(n: int, t: int, bracket=None, mode: str = "paper") -> ScalingT:
    if mode == "paper":
        return _paper_T(n, t, bracket or PAPER_BRACKET)
    if mode == "relaxed":
        cands = relaxed_T_candidates(n, t, bracket or RELAXED_BRACKET)
        if not cands:
            raise NotFound("no 2^a 3^b = t (mod 5) in the window")
        return cands[0]
    raise ValueError(f"unknown mode {mode!r}")


def _paper_T(n: int, t: int, bracket) -> ScalingT:
    lo, hi = bracket
    a0 = {1: 0, 4: 2}[t % 5]
    # largest k with 2^(4k + a0) < n^(1/3) * hi
    if not (2**a0) ** 3 < n * hi**3:
        raise NotFound("n too small for the 2^(4k+a) 3^(212j) construction")
    hi = Fraction(hi)
    # 2^(3e) < n hi^3  <=>  2^(3e) q^3 < n p^3
    lhs_scale, rhs = hi.denominator**3, n * hi.numerator**3

    def fits(k):
        return (1 << (3 * (4 * k + a0))) * lhs_scale < rhs

    k = max(0, (rhs.bit_length() - lhs_scale.bit_length()) // 12 - 1)
    while k > 0 and not fits(k):
        k -= 1
    while fits(k + 1):
        k += 1
    for j in range(348):
        e2 = 4 * k + a0 - 336 * j
        if e2 < 0:
            break
        T = ScalingT(e2, 212 * j)
        if in_bracket(n, T.value, bracket):
            return T
    raise NotFound("no T of the form 2^(4k+a-336j) 3^(212j) (n below the range of this construction)")


def relaxed_T_candidates(n: int, t: int, bracket) -> list[ScalingT]:
    """All 2^a 3^b = t (mod 5) strictly inside the bracket, ascending."""
    lo, hi = bracket
    out = []
    b = 0
    while (3**b) ** 3 < n * hi**3:
        a = 0
        while (2**a * 3**b) ** 3 < n * hi**3:
            T = 2**a * 3**b
            if T % 5 == t % 5 and in_bracket(n, T, bracket):
                out.append(ScalingT(a, b))
            a += 1
        b += 1
    return sorted(out, key=lambda s: s.value)


# -- the congruences for u and u' -------------------------------------------------------

def base_remainder(n: int, T: int) -> int:
    """n - 2oct(83T) - 2oct(91T) - 2oct(99T)."""
    return n - 2 * sum(octahedral(c * T) for c in FORM_COEFFS)


_U_MOD5 = {1: (1, 2), 4: (3, 4)}


def _smallest_u(target16: int, target5: int, T: ScalingT) -> int:
    T_val = T.value
    classes = octa_congruence_solve(target16, T.a_exp + 4, T.b_exp)  # mod 48T
    m48 = 2 ** (T.a_exp + 4) * 3 ** (T.b_exp + 1)
    reps = []
    for r in classes:
        for r5 in _U_MOD5[target5]:
            u, M = crt((r, r5), (m48, 5))
            reps.append(u if u > 0 else M)
    u = min(reps)
    if not 0 < u <= 144 * T_val:
        raise DecompositionFailure(NO_CONGRUENCE, f"smallest u = {u} exceeds 144T")
    return u


def solve_congruence_u(n: int, T: ScalingT, choice: ResidueChoice) -> tuple[int, int]:
    """u, u' in (0, 144T] with oct(u) = base - 12T (mod 16T), oct(u') = oct(u) + 4T (mod 16T),
    and both = choice.target (mod 5)."""
    T_val = T.value
    if T_val % 5 != choice.t % 5:
        raise ValueError("T must be congruent to t mod 5")
    mod16 = 16 * T_val
    base = base_remainder(n, T_val)
    u = _smallest_u((base - 12 * T_val) % mod16, choice.target, T)
    u2 = _smallest_u((octahedral(u) + 4 * T_val) % mod16, choice.target, T)
    return u, u2


def intermediate_m(n: int, T: int, u: int) -> Fraction:
    return Fraction(base_remainder(n, T) - octahedral(u), 4 * T)


# -- certificates -------------------------------------------------------------------

@dataclass
class DecompositionCertificate:
    n: int
    arguments: tuple[int, ...]
    method: str = "pipeline"  # or "exhaustive"
    t: Optional[int] = None
    T: Optional[ScalingT] = None
    u: Optional[int] = None
    rep: Optional[tuple[int, int, int]] = None
    m: Optional[int] = None

    @property
    def values(self) -> list[int]:
        return [octahedral(w) for w in self.arguments]

    def to_dict(self) -> dict:
        d = {
            "version": CERT_VERSION,
            "method": self.method,
            "n": str(self.n),
            "arguments": [str(w) for w in self.arguments],
            "values": [str(v) for v in self.values],
        }
        if self.method == "pipeline":
            d.update(
                t=self.t,
                T={"a_exp": self.T.a_exp, "b_exp": self.T.b_exp, "value": str(self.T.value)},
                u=str(self.u),
                rep={k: str(v) for k, v in zip("xyz", self.rep)},
                m=str(self.m),
            )
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "DecompositionCertificate":
        if d.get("version") != CERT_VERSION:
            raise ValueError(f"unsupported certificate version {d.get('version')!r}")
        cert = cls(int(d["n"]), tuple(int(w) for w in d["arguments"]), d["method"])
        if cert.method == "pipeline":
            cert.t = int(d["t"])
            cert.T = ScalingT(int(d["T"]["a_exp"]), int(d["T"]["b_exp"]))
            if int(d["T"]["value"]) != cert.T.value:
                raise ValueError("T value does not match its exponents")
            cert.u = int(d["u"])
            cert.rep = tuple(int(d["rep"][k]) for k in "xyz")
            cert.m = int(d["m"])
        if "values" in d and [int(v) for v in d["values"]] != cert.values:
            raise ValueError("listed octahedral values do not match the arguments")
        return cert

    @classmethod
    def from_json(cls, text: str) -> "DecompositionCertificate":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self):
        return self.ok


def verify_certificate(cert: DecompositionCertificate) -> VerifyReport:
    fails = []
    args = tuple(cert.arguments)
    if len(args) != 7:
        fails.append(f"expected 7 arguments, got {len(args)}")
    if any(w < 1 for w in args):
        fails.append("an argument is not positive")
    if sum(octahedral(w) for w in args) != cert.n:
        fails.append("octahedral sum does not equal n")
    if cert.method == "exhaustive":
        if list(args) != sorted(args, reverse=True):
            fails.append("exhaustive certificates list arguments in descending order")
    elif cert.method == "pipeline":
        if None in (cert.t, cert.T, cert.u, cert.rep, cert.m):
            fails.append("pipeline certificate is missing fields")
        else:
            T = cert.T.value
            x, y, z = cert.rep
            if cert.t not in (1, 4):
                fails.append("t must be 1 or 4 mod 5")
            if T % 5 != cert.t:
                fails.append("T is not congruent to t mod 5")
            if not 0 < cert.u <= 144 * T:
                fails.append("u outside (0, 144T]")
            expected = (83 * T + x, 83 * T - x, 91 * T + y, 91 * T - y, 99 * T + z, 99 * T - z, cert.u)
            if args != expected:
                fails.append("arguments do not match (83T+-x, 91T+-y, 99T+-z, u)")
            if MAIN_FORM(x, y, z) != cert.m:
                fails.append("83x^2+91y^2+99z^2 != m")
            if 4 * T * cert.m != base_remainder(cert.n, T) - octahedral(cert.u):
                fails.append("m does not match n, T and u")
            if math.gcd(x, y, z) != 1:
                fails.append("representation is not primitive")
    else:
        fails.append(f"unknown method {cert.method!r}")
    return VerifyReport(not fails, tuple(fails))


# -- exhaustive search ----------------------------------------------------------------

def _octa_array(limit: int) -> np.ndarray:
    return np.array([v.value for v in octahedral_seq(limit)], dtype=np.int64)


def _next_layer(prev: np.ndarray, octs: np.ndarray) -> np.ndarray:
    """Sums of one more positive octahedral number."""
    out = np.zeros_like(prev)
    size = len(prev)
    for o in octs.tolist():
        if o >= size:
            break
        out[o:] |= prev[: size - o]
    return out


def _layers(limit: int, depth: int) -> list[np.ndarray]:
    """layers[k][v]: v is a sum of exactly k positive octahedral numbers (v <= limit)."""
    octs = _octa_array(limit)
    first = np.zeros(limit + 1, dtype=bool)
    first[0] = True
    layers = [first]
    for _ in range(depth):
        layers.append(_next_layer(layers[-1], octs))
    return layers


def _witness(n: int, k: int, layers, octs) -> list[int]:
    """Backtrack a descending list of k octahedral arguments summing to n."""
    args = []
    rest = n
    cap = None
    for level in range(k, 0, -1):
        for o in octs[::-1].tolist():
            if o > rest or (cap is not None and o > cap):
                continue
            if layers[level - 1][rest - o]:
                args.append(octahedral_root(o))
                rest -= o
                cap = o
                break
        else:
            raise AssertionError("backtracking failed")
    return args


@dataclass(frozen=True)
class MinOctahedral:
    n: int
    count: Optional[int]  # None when more than cap summands are needed
    arguments: tuple[int, ...]


def brute_force_min_octahedral(n: int, cap: int = 7) -> MinOctahedral:
    """Least k <= cap with n a sum of k positive octahedral numbers."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > 10**7:
        raise ValueError("exhaustive search is limited to n <= 10^7")
    octs = _octa_array(n)
    first = np.zeros(n + 1, dtype=bool)
    first[0] = True
    layers = [first]
    for k in range(1, cap + 1):
        layers.append(_next_layer(layers[-1], octs))
        if layers[k][n]:
            return MinOctahedral(n, k, tuple(_witness(n, k, layers, octs)))
    return MinOctahedral(n, None, ())


def exact_seven(n: int) -> DecompositionCertificate:
    """A certificate for n as exactly seven positive octahedral numbers, by search."""
    if n > 10**7:
        raise ValueError("exhaustive search is limited to n <= 10^7")
    layers = _layers(n, 7)
    if not layers[7][n]:
        raise DecompositionFailure("NoExhaustiveDecomposition", f"{n} is not a sum of exactly 7")
    args = _witness(n, 7, layers, _octa_array(n))
    return DecompositionCertificate(n, tuple(args), "exhaustive")


@dataclass
class PollockReport:
    limit: int
    histogram: dict = field(default_factory=dict)  # minimal count -> how many n
    exceeding: list = field(default_factory=list)  # n needing more than `cap`
    needing_max: list = field(default_factory=list)  # n needing the largest count seen

    @property
    def ok(self) -> bool:
        return not self.exceeding


def pollock_scan(limit: int, cap: int = 7) -> PollockReport:
    """Minimal octahedral counts for every 1 <= n <= limit."""
    octs = _octa_array(limit)
    best = np.zeros(limit + 1, dtype=np.int8)
    layer = np.zeros(limit + 1, dtype=bool)
    layer[0] = True
    for k in range(1, cap + 1):
        layer = _next_layer(layer, octs)
        best[(best == 0) & layer] = k
    best[0] = -1
    report = PollockReport(limit)
    counts = np.bincount(best[1:], minlength=cap + 1)
    report.histogram = {k: int(counts[k]) for k in range(1, cap + 1) if counts[k]}
    report.exceeding = np.flatnonzero(best == 0).tolist()
    top = max(report.histogram)
    report.needing_max = np.flatnonzero(best == top).tolist()[:100]
    return report


def min_octahedral_large(n: int, max_terms: int = 4) -> Optional[int]:
    """Least k <= max_terms (at most 4) with n a sum of k positive octahedrals, by meet in the middle."""
    octs = _octa_array(n)
    oset = set(octs.tolist())
    if n in oset:
        return 1
    if max_terms < 2:
        return None
    pairs = np.unique((octs[:, None] + octs[None, :]).ravel())
    pairs = pairs[pairs <= n]
    if np.any(np.isin(n - octs, octs)):
        return 2
    if max_terms >= 3 and np.any(np.isin(n - pairs, octs)):
        return 3
    if max_terms >= 4 and np.any(np.isin(n - pairs, pairs)):
        return 4
    return None


# -- the pipeline -------------------------------------------------------------------

@dataclass(frozen=True)
class DecomposeOptions:
    mode: str = "relaxed"
    bracket: Optional[tuple[Fraction, Fraction]] = None
    search_budget: int = 64  # candidate T values tried
    exhaustive_below: int = 10**5  # n at or below this go to exact_seven


def certificate_from_u(n: int, T: ScalingT, t: int, u: int) -> Optional[DecompositionCertificate]:
    """Finish the construction for a given u: represent m with x, y, z < 83T, or None."""
    T_val = T.value
    m = intermediate_m(n, T_val, u)
    if m.denominator != 1:
        raise ValueError("4T does not divide the remainder for this u")
    m = int(m)
    if m <= 0:
        return None
    # m < 83^3 T^2 would force x, y, z < 83T; at desk scale the bound is imposed directly
    rep = represent_bounded(MAIN_FORM, m, 83 * T_val)
    if rep is None:
        return None
    x, y, z = rep.as_tuple()
    args = (83 * T_val + x, 83 * T_val - x, 91 * T_val + y, 91 * T_val - y, 99 * T_val + z, 99 * T_val - z, u)
    return DecompositionCertificate(n, args, "pipeline", t, T, u, (x, y, z), m)


def _try_T(n: int, T: ScalingT, choice: ResidueChoice) -> DecompositionCertificate:
    u, u2 = solve_congruence_u(n, T, choice)
    for uu in (u, u2):  # m first, then m'
        cert = certificate_from_u(n, T, choice.t, uu)
        if cert is not None:
            return cert
    raise DecompositionFailure(NO_REPRESENTATION, f"neither m nor m' represented for T = {T.value}")


def decompose_seven(n: int, options: DecomposeOptions = DecomposeOptions()) -> DecompositionCertificate:
    """Certificate for n, or DecompositionFailure naming the failing stage."""
    if n < 7:
        raise ValueError("n must be at least 7")
    if n <= options.exhaustive_below:
        cert = exact_seven(n)
    else:
        choices = residue_choices(n)
        if options.mode == "paper":
            candidates = []
            for ch in choices:
                try:
                    candidates.append((ch, find_scaling_T(n, ch.t, options.bracket, "paper")))
                except NotFound:
                    pass
        else:
            bracket = options.bracket or RELAXED_BRACKET
            candidates = [(ch, T) for ch in choices for T in relaxed_T_candidates(n, ch.t, bracket)]
            candidates.sort(key=lambda c: c[1].value)
            candidates = candidates[: options.search_budget]
        if not candidates:
            raise DecompositionFailure(NO_T, "no admissible T")
        last = None
        cert = None
        for ch, T in candidates:
            try:
                cert = _try_T(n, T, ch)
                break
            except DecompositionFailure as exc:
                last = exc
        if cert is None:
            raise last
    report = verify_certificate(cert)
    if not report.ok:
        raise AssertionError(f"pipeline produced an invalid certificate: {report.failures}")
    return cert


def cube_root_window(n: int, bracket) -> tuple[int, int]:
    """Integer hull of (n^(1/3) c_lo, n^(1/3) c_hi), for display."""
    r = integer_cube_root(n)
    return math.floor(r * bracket[0]), math.ceil((r + 1) * bracket[1])
