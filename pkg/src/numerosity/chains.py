"""Computable label chains and closed-form counting functions.

The three canonical chains are indexed by m >= 1 with grid size
n(m) = m!^(m!): initial segments of the naturals, the rational grids
s(n) = {s/n : -n^2 <= s < n^2}, and the real grids built from a finite seed
whose size enters counting only as the formal variable x.  A counting
function is an exact closed form for |A ∩ label_m|, a signed combination of
terms c * n^q * x^j * (2^n)^i, valid from an explicit threshold index m0.

Eventual comparison replaces ultrafilter membership: a comparison is decided
by the basis grading 2^n over rational powers of n, with the concrete
threshold certified so the sign cannot flip at any later index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import field
from .field import NumExpr


class ChainKind(Enum):
    NAT = "nat"
    RAT = "rat"
    REAL = "real"


class IndexTooLarge(ValueError):
    pass


class NonIntegral(ValueError):
    pass


class XFreeRequired(ValueError):
    pass


class UnrecognizedBasis(ValueError):
    pass


@lru_cache(maxsize=None)
def chain_card(m: int) -> int:
    """n(m) = m!^(m!), the grid size at index m."""
    if m < 1:
        raise ValueError("chain index starts at 1")
    f = math.factorial(m)
    return f**f


def chain_label_card(kind: ChainKind, m: int) -> int:
    """|N+ ∩ label| for NAT and |Q∩(0,1] ∩ label| for RAT; both equal n(m)."""
    if kind is ChainKind.REAL:
        raise ValueError("the real chain count n(m)*x carries a formal seed size")
    return chain_card(m)


def threshold_divides(d: int, lower: int = 1) -> int:
    """Least m >= lower with d | n(m)."""
    m = max(1, lower)
    while chain_card(m) % d != 0:
        m += 1
    return m


def threshold_card_at_least(bound: Fraction, lower: int = 1) -> int:
    m = max(1, lower)
    while chain_card(m) < bound:
        m += 1
    return m


# ---------------------------------------------------------------------------
# Counting functions
# ---------------------------------------------------------------------------

# One term is (coeff, n_exponent, x_degree, two_to_n_degree).
CTerm = tuple[Fraction, Fraction, int, int]


@dataclass(frozen=True, slots=True)
class CountingFn:
    """Exact closed form of a counting net along a canonical chain."""

    terms: tuple[CTerm, ...]
    m0: int = 1

    @staticmethod
    def make(terms: list[CTerm] | tuple[CTerm, ...], m0: int = 1) -> "CountingFn":
        acc: dict[tuple[Fraction, int, int], Fraction] = {}
        for c, q, xj, ei in terms:
            key = (Fraction(q), xj, ei)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        cleaned = tuple(
            (c, q, xj, ei)
            for (q, xj, ei), c in sorted(acc.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]), reverse=True)
            if c != 0
        )
        return CountingFn(cleaned, m0)

    @staticmethod
    def constant(c: Fraction | int, m0: int = 1) -> "CountingFn":
        return CountingFn.make([(Fraction(c), Fraction(0), 0, 0)], m0)

    @staticmethod
    def monomial(coeff: Fraction | int, n_exp: Fraction | int = 0,
                 x_deg: int = 0, e_deg: int = 0, m0: int = 1) -> "CountingFn":
        return CountingFn.make([(Fraction(coeff), Fraction(n_exp), x_deg, e_deg)], m0)

    def is_zero(self) -> bool:
        return not self.terms

    def x_free(self) -> bool:
        return all(xj == 0 for _, _, xj, _ in self.terms)

    def __add__(self, other: "CountingFn") -> "CountingFn":
        return CountingFn.make(self.terms + other.terms, max(self.m0, other.m0))

    def __sub__(self, other: "CountingFn") -> "CountingFn":
        neg = tuple((-c, q, xj, ei) for c, q, xj, ei in other.terms)
        return CountingFn.make(self.terms + neg, max(self.m0, other.m0))

    def __mul__(self, other: "CountingFn") -> "CountingFn":
        out = []
        for c1, q1, x1, e1 in self.terms:
            for c2, q2, x2, e2 in other.terms:
                out.append((c1 * c2, q1 + q2, x1 + x2, e1 + e2))
        return CountingFn.make(out, max(self.m0, other.m0))

    def pow(self, k: int) -> "CountingFn":
        if k < 0:
            raise ValueError("negative powers of counting functions")
        out = CountingFn.constant(1, self.m0)
        for _ in range(k):
            out = out * self
        return out

    def with_m0(self, m0: int) -> "CountingFn":
        return CountingFn(self.terms, max(self.m0, m0))

    def __str__(self) -> str:
        return format_counting_fn(self)


def _nth_root_exact(value: int, k: int) -> int:
    if value < 0:
        raise NonIntegral("negative radicand")
    lo, hi = 0, 1 << (value.bit_length() // k + 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < value:
            lo = mid + 1
        else:
            hi = mid
    if lo**k != value:
        raise NonIntegral(f"{value} has no exact {k}-th root")
    return lo


def cf_eval(f: CountingFn, m: int) -> int:
    """Exact value at index m (x-free only); errors if not a natural number."""
    if m < f.m0:
        raise IndexTooLarge(f"index {m} is below the validity threshold {f.m0}")
    if not f.x_free():
        raise XFreeRequired("counting function involves the formal seed size x")
    if any(ei > 0 for _, _, _, ei in f.terms) and m > 3:
        raise IndexTooLarge("2^n(m) is astronomically large beyond m = 3")
    fact = math.factorial(m)
    n = fact**fact
    total = Fraction(0)
    for c, q, _, ei in f.terms:
        e = Fraction(fact) * q
        if e.denominator == 1:
            power = Fraction(fact) ** int(e)
        else:
            root = _nth_root_exact(fact ** abs(e.numerator), e.denominator)
            power = Fraction(root) if e.numerator >= 0 else Fraction(1, root)
        term = c * power
        if ei:
            term *= Fraction(2) ** (n * ei)
        total += term
    if total.denominator != 1 or total < 0:
        raise NonIntegral(f"value {total} at m={m} is not a natural number")
    return int(total)


class Eventually(Enum):
    LESS = "eventually-less"
    EQUAL = "eventually-equal"
    GREATER = "eventually-greater"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class CfComparison:
    kind: Eventually
    m0: Optional[int] = None
    reason: Optional[str] = None


def _tail_certified(terms: tuple[CTerm, ...], n0: int) -> bool:
    """Check that the lex-leading term outweighs the rest for every n >= n0.

    Ratios r_t = 2^(de*n) * n^dq against the leading term have (de, dq)
    lex-negative; each must be decreasing at n0 and their weighted sum < 1.
    Log arithmetic in floats is safe: the gaps at chain scale are enormous.
    """
    c0, q0, _, e0 = terms[0]
    # Clamping n0 in the linear (2^n) part only weakens the bound, so the
    # certificate stays sound for chain sizes beyond float range.
    n0f = float(min(n0, 10**300))
    ln_n0 = math.log(n0)
    budget = 0.0
    for c, q, _, e in terms[1:]:
        de, dq = e - e0, q - q0
        if de > 0 or (de == 0 and dq >= 0):
            return False
        if de < 0:
            if dq > 0 and n0 < float(dq) / (-de * math.log(2)):
                return False
        log_ratio = de * n0f * math.log(2) + float(dq) * ln_n0
        budget += abs(float(c) / float(c0)) * math.exp(min(log_ratio, 0.0))
        if budget >= 0.5:
            return False
    return True


def _x_groups(f: CountingFn) -> dict[int, tuple[CTerm, ...]]:
    groups: dict[int, list[CTerm]] = {}
    for c, q, xj, ei in f.terms:
        groups.setdefault(xj, []).append((c, q, 0, ei))
    return {j: tuple(ts) for j, ts in groups.items()}


def cf_compare(f: CountingFn, g: CountingFn) -> CfComparison:
    """Eventual comparison along the chain with a certified threshold."""
    h = f - g
    base = max(f.m0, g.m0)
    if h.is_zero():
        return CfComparison(Eventually.EQUAL, base)
    groups = _x_groups(h)
    signs = set()
    for ts in groups.values():
        signs.add(1 if ts[0][0] > 0 else -1)
    if len(signs) != 1:
        return CfComparison(
            Eventually.UNKNOWN,
            reason="mixed signs across seed-size degrees; no cone decides",
        )
    sign = signs.pop()
    for m in range(base, base + 9):
        n0 = chain_card(m)
        if all(_tail_certified(ts, n0) for ts in groups.values()):
            return CfComparison(
                Eventually.GREATER if sign > 0 else Eventually.LESS, m
            )
    return CfComparison(Eventually.UNKNOWN, reason="no certified threshold found")


def lambda_limit(f: CountingFn) -> NumExpr:
    """Evaluate the chain limit: n -> alpha, x -> beta/alpha, 2^n -> X/2.

    The finite-subset generator satisfies X = 2^(alpha+1), so the atom 2^n
    maps to X/2; with that choice the limit is a ring morphism and the
    power-set counts land exactly on X.
    """
    out = field.ZERO
    for c, q, xj, ei in f.terms:
        piece = field.from_rational(c)
        piece = field.nf_mul(piece, field.alpha_power(q - xj))
        if xj:
            piece = field.nf_mul(piece, field.nf_pow(field.BETA, field.from_rational(xj)))
        if ei:
            half_x = field.nf_div(field.X2W, field.from_rational(2))
            piece = field.nf_mul(piece, field.nf_pow(half_x, field.from_rational(ei)))
        out = field.nf_add(out, piece)
    return out


def format_counting_fn(f: CountingFn) -> str:
    if not f.terms:
        return "0"
    parts = []
    for i, (c, q, xj, ei) in enumerate(f.terms):
        factors = []
        if ei:
            factors.append("2^n" if ei == 1 else f"(2^n)^{ei}")
        if q:
            if q == 1:
                factors.append("n")
            elif q.denominator == 1:
                factors.append(f"n^{q.numerator}")
            else:
                factors.append(f"n^({q.numerator}/{q.denominator})")
        if xj:
            factors.append("x" if xj == 1 else f"x^{xj}")
        mag = abs(c)
        coeff = "" if (mag == 1 and factors) else (
            str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        )
        body = "*".join(([coeff] if coeff else []) + factors)
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def enumerate_count(expr, m: int) -> int:
    """Brute-force |A ∩ label_m| for ground set expressions (tiny m only)."""
    from .sets import enumerate_on_chain

    return enumerate_on_chain(expr, m)
