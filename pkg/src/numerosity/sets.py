"""Definable sets over N, Q, and R with exact counting and numerosity.

Each node either compiles to a closed-form counting function on its canonical
chain (constant sets, congruence classes, perfect powers, bounded intervals,
products, certified unions and differences) or carries a comparison-map
rewrite for its numerosity (the unbounded sets, the unit interval, power-set
and finite-map constructors, shifts).  A literal enumeration oracle backs the
compiled forms at tiny chain indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import chains, field
from .chains import ChainKind, CountingFn, IndexTooLarge, chain_card
from .field import NumExpr


class Uncompilable(ValueError):
    def __init__(self, node: "SetExpr", why: str):
        super().__init__(f"{node}: {why}")
        self.node = node
        self.why = why


class SubsetNotCertified(ValueError):
    pass


YES, NO, UNDECIDED = "yes", "no", "undecided"


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SetExpr:
    def __str__(self) -> str:
        return format_set(self)

    def __or__(self, other: "SetExpr") -> "SetExpr":
        return Union_(self, other)

    def __and__(self, other: "SetExpr") -> "SetExpr":
        return Inter(self, other)


@dataclass(frozen=True, slots=True)
class NatAll(SetExpr):
    pass


@dataclass(frozen=True, slots=True)
class NatPos(SetExpr):
    pass


@dataclass(frozen=True, slots=True)
class FinSet(SetExpr):
    elems: frozenset[int] = frozenset()

    def __post_init__(self):
        if any(e < 0 for e in self.elems):
            raise ValueError("finite sets hold naturals")


@dataclass(frozen=True, slots=True)
class Mod(SetExpr):
    """{n in N+ : n = i (mod p)}."""

    p: int
    i: int

    def __post_init__(self):
        if self.p < 1 or not (0 <= self.i < self.p):
            raise ValueError("need p >= 1 and 0 <= i < p")


@dataclass(frozen=True, slots=True)
class Pow(SetExpr):
    """{x^p : x in N+}."""

    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("need p >= 1")


@dataclass(frozen=True, slots=True)
class PfinN(SetExpr):
    """All finite subsets of N."""


@dataclass(frozen=True, slots=True)
class QInterval(SetExpr):
    """Q ∩ (p, q], rational endpoints."""

    p: Fraction
    q: Fraction

    def __post_init__(self):
        if self.p >= self.q:
            raise ValueError("need p < q")


@dataclass(frozen=True, slots=True)
class QPos(SetExpr):
    pass


@dataclass(frozen=True, slots=True)
class QAll(SetExpr):
    pass


@dataclass(frozen=True, slots=True)
class RInterval(SetExpr):
    """[p, q), rational endpoints."""

    p: Fraction
    q: Fraction

    def __post_init__(self):
        if self.p >= self.q:
            raise ValueError("need p < q")


@dataclass(frozen=True, slots=True)
class RPos(SetExpr):
    pass


@dataclass(frozen=True, slots=True)
class RAll(SetExpr):
    pass


@dataclass(frozen=True, slots=True)
class UnitInterval01(SetExpr):
    """[0, 1] as a set of reals."""


@dataclass(frozen=True, slots=True)
class Shift(SetExpr):
    q: Fraction
    child: SetExpr


@dataclass(frozen=True, slots=True)
class Union_(SetExpr):
    left: SetExpr
    right: SetExpr

    def __post_init__(self):
        _require_same_domain(self.left, self.right, "union")


@dataclass(frozen=True, slots=True)
class Inter(SetExpr):
    left: SetExpr
    right: SetExpr

    def __post_init__(self):
        _require_same_domain(self.left, self.right, "intersection")


@dataclass(frozen=True, slots=True)
class Diff(SetExpr):
    left: SetExpr
    right: SetExpr

    def __post_init__(self):
        _require_same_domain(self.left, self.right, "difference")
        if subset_certified(self.right, self.left) != YES:
            raise SubsetNotCertified(
                f"difference requires certified {self.right} ⊆ {self.left}"
            )


@dataclass(frozen=True, slots=True)
class Prod(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True, slots=True)
class FinMapsInto(SetExpr):
    """k-valued finite colorings of the child set; counts k^|S ∩ label|."""

    k: int
    child: SetExpr

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("need k >= 1")


GROUND_NAT = (NatAll, NatPos, FinSet, Mod, Pow)
GROUND_RAT = (QInterval, QPos, QAll)
GROUND_REAL = (RInterval, RPos, RAll, UnitInterval01)


def domain(e: SetExpr) -> Optional[ChainKind]:
    """Ground chain of e; None for higher-order nodes (powersets, products)."""
    if isinstance(e, GROUND_NAT):
        return ChainKind.NAT
    if isinstance(e, GROUND_RAT):
        return ChainKind.RAT
    if isinstance(e, GROUND_REAL):
        return ChainKind.REAL
    if isinstance(e, Shift):
        return domain(e.child)
    if isinstance(e, (Union_, Inter, Diff)):
        return domain(e.left)
    return None


def _require_same_domain(a: SetExpr, b: SetExpr, what: str) -> None:
    da, db = domain(a), domain(b)
    if da is None or db is None or da != db:
        raise ValueError(f"{what} requires both sides over one ground domain")


# ---------------------------------------------------------------------------
# Subset and disjointness certification
# ---------------------------------------------------------------------------


def _interval_bounds(e: SetExpr) -> Optional[tuple[Fraction, Fraction, ChainKind]]:
    if isinstance(e, QInterval):
        return e.p, e.q, ChainKind.RAT
    if isinstance(e, RInterval):
        return e.p, e.q, ChainKind.REAL
    return None


def subset_certified(a: SetExpr, b: SetExpr) -> str:
    """Syntactic containment: yes / no only for exactly-characterized pairs."""
    if a == b:
        return YES
    if isinstance(a, FinSet) and not a.elems:
        return YES
    if isinstance(b, NatAll) and domain(a) is ChainKind.NAT:
        return YES
    if isinstance(b, QAll) and domain(a) is ChainKind.RAT:
        return YES
    if isinstance(b, RAll) and domain(a) is ChainKind.REAL:
        return YES

    if isinstance(a, Mod) and isinstance(b, Mod):
        if b.p == 1 or (a.p % b.p == 0 and a.i % b.p == b.i):
            return YES
        return NO
    if isinstance(a, (Mod, Pow)) and isinstance(b, NatPos):
        return YES
    if isinstance(a, FinSet):
        if isinstance(b, FinSet):
            return YES if a.elems <= b.elems else NO
        if isinstance(b, NatPos):
            return YES if 0 not in a.elems else NO
        if isinstance(b, Mod):
            ok = all(x >= 1 and x % b.p == b.i % b.p for x in a.elems)
            return YES if ok else NO
    if isinstance(a, QInterval) and isinstance(b, QInterval):
        return YES if b.p <= a.p and a.q <= b.q else NO
    if isinstance(a, RInterval) and isinstance(b, RInterval):
        return YES if b.p <= a.p and a.q <= b.q else NO
    if isinstance(a, QInterval) and isinstance(b, QPos):
        return YES if a.p >= 0 else NO
    if isinstance(a, RInterval) and isinstance(b, RPos):
        return YES if a.p > 0 else NO
    if isinstance(a, RInterval) and isinstance(b, UnitInterval01):
        return YES if a.p >= 0 and a.q <= 1 else NO

    if isinstance(a, Union_):
        l, r = subset_certified(a.left, b), subset_certified(a.right, b)
        if l == YES and r == YES:
            return YES
        if NO in (l, r):
            return NO
        return UNDECIDED
    if isinstance(a, Inter):
        if YES in (subset_certified(a.left, b), subset_certified(a.right, b)):
            return YES
        return UNDECIDED
    if isinstance(a, Diff):
        return subset_certified(a.left, b) if subset_certified(a.left, b) == YES else UNDECIDED
    if isinstance(b, Union_):
        if YES in (subset_certified(a, b.left), subset_certified(a, b.right)):
            return YES
        return UNDECIDED
    if isinstance(b, Inter):
        l, r = subset_certified(a, b.left), subset_certified(a, b.right)
        if l == YES and r == YES:
            return YES
        if NO in (l, r):
            return NO
        return UNDECIDED
    if isinstance(b, Diff):
        if subset_certified(a, b.left) == YES and disjoint_certified(a, b.right) == YES:
            return YES
        return UNDECIDED
    if isinstance(a, Prod) and isinstance(b, Prod):
        l, r = subset_certified(a.left, b.left), subset_certified(a.right, b.right)
        if l == YES and r == YES:
            return YES
        return UNDECIDED
    return UNDECIDED


def disjoint_certified(a: SetExpr, b: SetExpr) -> str:
    if isinstance(a, FinSet) and not a.elems:
        return YES
    if isinstance(b, FinSet) and not b.elems:
        return YES
    if isinstance(a, Mod) and isinstance(b, Mod):
        g = math.gcd(a.p, b.p)
        return NO if a.i % g == b.i % g else YES
    if isinstance(a, FinSet) and isinstance(b, FinSet):
        return YES if not (a.elems & b.elems) else NO
    if isinstance(a, FinSet) and isinstance(b, Mod):
        hit = any(x >= 1 and x % b.p == b.i % b.p for x in a.elems)
        return NO if hit else YES
    if isinstance(b, FinSet) and isinstance(a, Mod):
        return disjoint_certified(b, a)
    if isinstance(a, FinSet) and isinstance(b, QPos):
        return YES if all(x <= 0 for x in a.elems) else NO
    ia, ib = _interval_bounds(a), _interval_bounds(b)
    if ia and ib:
        return YES if ia[1] <= ib[0] or ib[1] <= ia[0] else NO
    if isinstance(a, Union_):
        l, r = disjoint_certified(a.left, b), disjoint_certified(a.right, b)
        if l == YES and r == YES:
            return YES
        if NO in (l, r):
            return NO
        return UNDECIDED
    if isinstance(b, Union_):
        return disjoint_certified(b, a)
    return UNDECIDED


def is_bounded(e: SetExpr) -> bool:
    if isinstance(e, (FinSet, QInterval, RInterval, UnitInterval01)):
        return True
    if isinstance(e, (Union_, Inter, Prod)):
        return is_bounded(e.left) and is_bounded(e.right)
    if isinstance(e, Diff):
        return is_bounded(e.left)
    if isinstance(e, Shift):
        return is_bounded(e.child)
    return False


# ---------------------------------------------------------------------------
# Compilation to counting functions
# ---------------------------------------------------------------------------


def _threshold_interval(p: Fraction, q: Fraction, slack: int) -> int:
    d = math.lcm(p.denominator, q.denominator)
    bound = max(abs(p), abs(q), 1) + slack
    m = chains.threshold_divides(d)
    return chains.threshold_card_at_least(bound, m)


def counting_fn(e: SetExpr) -> CountingFn:
    """Compile e to its exact chain count; raises Uncompilable otherwise."""
    if isinstance(e, NatAll):
        return CountingFn.make([(Fraction(1), Fraction(1), 0, 0),
                                (Fraction(1), Fraction(0), 0, 0)], 1)
    if isinstance(e, NatPos):
        return CountingFn.monomial(1, 1)
    if isinstance(e, FinSet):
        if not e.elems:
            return CountingFn.constant(0)
        m0 = chains.threshold_card_at_least(Fraction(max(e.elems)))
        return CountingFn.constant(len(e.elems), m0)
    if isinstance(e, Mod):
        m0 = chains.threshold_divides(e.p)
        return CountingFn.monomial(Fraction(1, e.p), 1, m0=m0)
    if isinstance(e, Pow):
        m0 = 1
        while math.factorial(m0) % e.p != 0:
            m0 += 1
        return CountingFn.monomial(1, Fraction(1, e.p), m0=m0)
    if isinstance(e, PfinN):
        # Subsets of {0..n}: 2^(n+1).
        return CountingFn.monomial(2, 0, 0, 1)
    if isinstance(e, QInterval):
        m0 = _threshold_interval(e.p, e.q, 0)
        return CountingFn.monomial(e.q - e.p, 1, m0=m0)
    if isinstance(e, RInterval):
        m0 = _threshold_interval(e.p, e.q, 1)
        return CountingFn.monomial(e.q - e.p, 1, 1, m0=m0)
    if isinstance(e, (QPos, QAll, RPos, RAll, UnitInterval01)):
        raise Uncompilable(e, "determined by comparison-map rewrite, not the grid chain")
    if isinstance(e, Shift):
        if not is_bounded(e.child):
            raise Uncompilable(e, "shift of an unbounded set")
        inner = counting_fn(e.child)
        m0 = chains.threshold_divides(e.q.denominator, inner.m0)
        m0 = chains.threshold_card_at_least(abs(e.q) + _bound_radius(e.child) + 1, m0)
        return inner.with_m0(m0)
    if isinstance(e, Union_):
        both = _inter_count(e.left, e.right)
        if both is None:
            raise Uncompilable(e, "union needs certified disjointness or containment")
        return counting_fn(e.left) + counting_fn(e.right) - both
    if isinstance(e, Inter):
        both = _inter_count(e.left, e.right)
        if both is None:
            raise Uncompilable(e, "intersection outside the certified fragment")
        return both
    if isinstance(e, Diff):
        return counting_fn(e.left) - counting_fn(e.right)
    if isinstance(e, Prod):
        return counting_fn(e.left) * counting_fn(e.right)
    if isinstance(e, FinMapsInto):
        k = e.k
        if k == 1:
            return CountingFn.constant(1)
        j = k.bit_length() - 1
        if k == 1 << j:
            inner = counting_fn(e.child)
            aff = _affine_integer(inner)
            if aff is not None:
                a, c = aff
                return CountingFn.monomial(Fraction(2) ** (j * c), 0, 0, j * a, m0=inner.m0)
        raise Uncompilable(e, "colorings compile only for power-of-two k over affine counts")
    raise Uncompilable(e, "no chain form")


def _affine_integer(f: CountingFn) -> Optional[tuple[int, int]]:
    a = c = 0
    for coeff, q, xj, ei in f.terms:
        if xj or ei or coeff.denominator != 1:
            return None
        if q == 0:
            c = int(coeff)
        elif q == 1:
            a = int(coeff)
        else:
            return None
    return (a, c) if a >= 0 else None


def _bound_radius(e: SetExpr) -> Fraction:
    if isinstance(e, FinSet):
        return Fraction(max(e.elems) if e.elems else 0)
    if isinstance(e, (QInterval, RInterval)):
        return max(abs(e.p), abs(e.q))
    if isinstance(e, UnitInterval01):
        return Fraction(1)
    if isinstance(e, (Union_, Inter, Prod)):
        return max(_bound_radius(e.left), _bound_radius(e.right))
    if isinstance(e, Diff):
        return _bound_radius(e.left)
    if isinstance(e, Shift):
        return _bound_radius(e.child) + abs(e.q)
    raise Uncompilable(e, "unbounded")


def _inter_count(a: SetExpr, b: SetExpr) -> Optional[CountingFn]:
    """Counting function of a ∩ b on the certified fragment."""
    if disjoint_certified(a, b) == YES:
        return CountingFn.constant(0)
    if subset_certified(a, b) == YES:
        return counting_fn(a)
    if subset_certified(b, a) == YES:
        return counting_fn(b)
    if isinstance(a, Mod) and isinstance(b, Mod):
        l = math.lcm(a.p, b.p)
        # CRT: compatibility was excluded by the disjointness check above.
        m0 = chains.threshold_divides(l)
        return CountingFn.monomial(Fraction(1, l), 1, m0=m0)
    ia, ib = _interval_bounds(a), _interval_bounds(b)
    if ia and ib and ia[2] == ib[2]:
        p, q = max(ia[0], ib[0]), min(ia[1], ib[1])
        if p >= q:
            return CountingFn.constant(0)
        piece = QInterval(p, q) if ia[2] is ChainKind.RAT else RInterval(p, q)
        return counting_fn(piece)
    return None


# ---------------------------------------------------------------------------
# Numerosity
# ---------------------------------------------------------------------------


def num(e: SetExpr) -> NumExpr:
    """Exact numerosity of e: chain limit where compiled, rewrite otherwise."""
    if isinstance(e, QPos):
        return field.nf_pow(field.ALPHA, field.from_rational(2))
    if isinstance(e, QAll):
        a2 = field.nf_pow(field.ALPHA, field.from_rational(2))
        return field.nf_add(field.nf_mul(field.from_rational(2), a2), field.ONE)
    if isinstance(e, RPos):
        return field.nf_mul(field.ALPHA, field.BETA)
    if isinstance(e, RAll):
        ab = field.nf_mul(field.ALPHA, field.BETA)
        return field.nf_add(field.nf_mul(field.from_rational(2), ab), field.ONE)
    if isinstance(e, UnitInterval01):
        return field.nf_add(field.BETA, field.ONE)
    if isinstance(e, PfinN):
        return field.X2W
    if isinstance(e, FinMapsInto):
        return field.nf_pow(field.from_rational(e.k), num(e.child))
    if isinstance(e, Shift):
        if not is_bounded(e.child):
            raise Uncompilable(e, "shift invariance holds for bounded sets")
        return num(e.child)
    if isinstance(e, Prod):
        return field.nf_mul(num(e.left), num(e.right))
    try:
        return chains.lambda_limit(counting_fn(e))
    except Uncompilable:
        pass
    if isinstance(e, Union_):
        if disjoint_certified(e.left, e.right) == YES:
            return field.nf_add(num(e.left), num(e.right))
        if subset_certified(e.right, e.left) == YES:
            return num(e.left)
        if subset_certified(e.left, e.right) == YES:
            return num(e.right)
    if isinstance(e, Diff):
        return field.nf_sub(num(e.left), num(e.right))
    raise Uncompilable(e, "no numerosity rule applies")


def measure(e: SetExpr, gamma: NumExpr,
            table: field.AxiomTable = field.DEFAULT_TABLE) -> field.StandardPart:
    """gamma-measure of e: the standard part of num(e)/gamma."""
    return field.gamma_measure(num(e), gamma, table)


def psi_value(s: frozenset[int] | set[int]) -> Fraction:
    """Binary-expansion map: each n in s sets the (n+1)-th binary digit."""
    return sum((Fraction(1, 2 ** (n + 1)) for n in s), Fraction(0))


# ---------------------------------------------------------------------------
# Enumeration oracle
# ---------------------------------------------------------------------------


def _nat_member(e: SetExpr, x: int) -> bool:
    if isinstance(e, NatAll):
        return True
    if isinstance(e, NatPos):
        return x >= 1
    if isinstance(e, FinSet):
        return x in e.elems
    if isinstance(e, Mod):
        return x >= 1 and x % e.p == e.i % e.p
    if isinstance(e, Pow):
        if x < 1:
            return False
        r = round(x ** (1.0 / e.p))
        return any((r + d) >= 1 and (r + d) ** e.p == x for d in (-1, 0, 1))
    if isinstance(e, Union_):
        return _nat_member(e.left, x) or _nat_member(e.right, x)
    if isinstance(e, Inter):
        return _nat_member(e.left, x) and _nat_member(e.right, x)
    if isinstance(e, Diff):
        return _nat_member(e.left, x) and not _nat_member(e.right, x)
    raise Uncompilable(e, "not a ground natural-number set")


def _rat_member(e: SetExpr, x: Fraction) -> bool:
    if isinstance(e, QInterval):
        return e.p < x <= e.q
    if isinstance(e, QPos):
        return x > 0
    if isinstance(e, QAll):
        return True
    if isinstance(e, Shift):
        return _rat_member(e.child, x - e.q)
    if isinstance(e, Union_):
        return _rat_member(e.left, x) or _rat_member(e.right, x)
    if isinstance(e, Inter):
        return _rat_member(e.left, x) and _rat_member(e.right, x)
    if isinstance(e, Diff):
        return _rat_member(e.left, x) and not _rat_member(e.right, x)
    raise Uncompilable(e, "not a ground rational set")


def enumerate_on_chain(e: SetExpr, m: int) -> int:
    """Literal |e ∩ label_m|; the independent oracle for compiled counts."""
    if m > 3:
        raise IndexTooLarge("labels beyond m = 3 are astronomically large")
    n = chain_card(m)
    if isinstance(e, Prod):
        return enumerate_on_chain(e.left, m) * enumerate_on_chain(e.right, m)
    if isinstance(e, PfinN):
        # a ∈ P_fin(N) ∩ label iff a ⊆ {0..n}.
        return 2 ** (n + 1)
    if isinstance(e, FinMapsInto):
        return e.k ** enumerate_on_chain(e.child, m)
    d = domain(e)
    if d is ChainKind.NAT:
        return sum(1 for x in range(n + 1) if _nat_member(e, x))
    if d is ChainKind.RAT:
        if m > 2:
            raise IndexTooLarge("the rational grid at m = 3 has ~4*10^9 points")
        return sum(1 for s in range(-n * n, n * n) if _rat_member(e, Fraction(s, n)))
    raise Uncompilable(e, "no literal enumeration on this domain")


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_set(e: SetExpr) -> str:
    if isinstance(e, NatAll):
        return "N"
    if isinstance(e, NatPos):
        return "N+"
    if isinstance(e, FinSet):
        return "fin{" + ",".join(str(x) for x in sorted(e.elems)) + "}"
    if isinstance(e, Mod):
        return f"mod({e.p},{e.i})"
    if isinstance(e, Pow):
        return f"pow({e.p})"
    if isinstance(e, PfinN):
        return "Pfin(N)"
    if isinstance(e, QInterval):
        return f"Q({_fmt_q(e.p)},{_fmt_q(e.q)}]"
    if isinstance(e, QPos):
        return "Q+"
    if isinstance(e, QAll):
        return "Q"
    if isinstance(e, RInterval):
        return f"R[{_fmt_q(e.p)},{_fmt_q(e.q)})"
    if isinstance(e, RPos):
        return "R+"
    if isinstance(e, RAll):
        return "R"
    if isinstance(e, UnitInterval01):
        return "[0,1]"
    if isinstance(e, Shift):
        return f"shift({_fmt_q(e.q)}, {format_set(e.child)})"
    if isinstance(e, Union_):
        return f"({format_set(e.left)} | {format_set(e.right)})"
    if isinstance(e, Inter):
        return f"({format_set(e.left)} & {format_set(e.right)})"
    if isinstance(e, Diff):
        return f"({format_set(e.left)} \\ {format_set(e.right)})"
    if isinstance(e, Prod):
        return f"({format_set(e.left)} >< {format_set(e.right)})"
    if isinstance(e, FinMapsInto):
        return f"maps({e.k}, {format_set(e.child)})"
    return repr(e)
