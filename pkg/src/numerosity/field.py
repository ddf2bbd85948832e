"""Exact symbolic arithmetic on numerosity expressions.

Values are quotients of generalized polynomials over four infinite generators
-- alpha (the positive naturals), beta (the unit half-open interval), beth1
(the full power set of the naturals), X = 2^w (the finite subsets) -- plus
w-power monomials with infinite ordinal exponents.  Finite w-powers are
expanded eagerly through w = alpha + 1, so alpha-polynomials and w-monomials
coexist in one normal form.

Comparison is deliberately partial: only grounded order rules decide, and
everything else is reported as Unknown with the blocking pair named.  Extra
order axioms live in an AxiomTable value passed explicitly to the comparison
entry points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .ordinals import ZERO as ORD_ZERO
from .ordinals import Ord, UnsupportedPower, format_ordinal, natural_add, ord_cmp


class DivisionByZero(ZeroDivisionError):
    pass


class NonPositiveGamma(ValueError):
    pass


class InconsistentOrder(ValueError):
    pass


class MeasureInternalError(RuntimeError):
    """A gamma-measure came out -infinity, impossible for set numerosities."""


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Monomial:
    """Product of generator powers; the unit monomial has all fields trivial.

    alpha carries an arbitrary rational exponent, the remaining generators
    non-negative integers.  At most one w-power factor exists and its ordinal
    exponent is always infinite (finite powers are expanded via w = alpha+1);
    products fold repeated w-powers into one effective exponent.
    """

    alpha: Fraction = Fraction(0)
    beta: int = 0
    beth1: int = 0
    x2w: int = 0
    omega: Optional[Ord] = None

    def __post_init__(self) -> None:
        if self.omega is not None:
            if self.omega.is_finite():
                raise ValueError("w-power monomials must have infinite exponents")
            if self.omega.finite_part():
                # w^(g + r) with finite r splits as w^g * (alpha+1)^r; the
                # stored exponent must be finite-part free for canonicality.
                raise ValueError("w-power exponents carry no finite part")
        if min(self.beta, self.beth1, self.x2w) < 0:
            raise ValueError("only alpha admits negative exponents")

    def is_unit(self) -> bool:
        return (
            self.alpha == 0
            and self.beta == 0
            and self.beth1 == 0
            and self.x2w == 0
            and self.omega is None
        )

    def key(self) -> tuple:
        ok = self.omega._key() if self.omega is not None else ()
        return (ok, self.x2w, self.beth1, self.beta, self.alpha)

    def __str__(self) -> str:
        return format_monomial(self)


UNIT = Monomial()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if a.omega is None:
        om = b.omega
    elif b.omega is None:
        om = a.omega
    else:
        om = natural_add(a.omega, b.omega)
    return Monomial(a.alpha + b.alpha, a.beta + b.beta, a.beth1 + b.beth1,
                    a.x2w + b.x2w, om)


def _omega_effective(m: Monomial) -> Ord:
    return m.omega if m.omega is not None else ORD_ZERO


Terms = tuple[tuple[Fraction, Monomial], ...]


def _sort_terms(d: dict[Monomial, Fraction]) -> Terms:
    items = [(c, m) for m, c in d.items() if c != 0]
    items.sort(key=lambda t: t[1].key(), reverse=True)
    return tuple(items)


def _poly_add(a: Terms, b: Terms) -> Terms:
    d: dict[Monomial, Fraction] = {}
    for c, m in a + b:
        d[m] = d.get(m, Fraction(0)) + c
    return _sort_terms(d)


def _poly_neg(a: Terms) -> Terms:
    return tuple((-c, m) for c, m in a)


def _poly_mul(a: Terms, b: Terms) -> Terms:
    d: dict[Monomial, Fraction] = {}
    for ca, ma in a:
        for cb, mb in b:
            m = mono_mul(ma, mb)
            d[m] = d.get(m, Fraction(0)) + ca * cb
    return _sort_terms(d)


def _poly_scale(a: Terms, c: Fraction) -> Terms:
    if c == 0:
        return ()
    return tuple((ca * c, ma) for ca, ma in a)


# ---------------------------------------------------------------------------
# NumExpr
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class NumExpr:
    """Canonical quotient of two generalized polynomials.

    Invariants: term lists are sorted by monomial key and duplicate-free; the
    denominator's leading coefficient is 1; joint monomial content has been
    cancelled (so all stored exponents are non-negative); zero is the empty
    numerator over the unit denominator.
    """

    num: Terms = ()
    den: Terms = ((Fraction(1), UNIT),)

    def is_zero(self) -> bool:
        return not self.num

    def as_rational(self) -> Optional[Fraction]:
        if self.is_zero():
            return Fraction(0)
        if (
            len(self.num) == 1
            and self.num[0][1].is_unit()
            and len(self.den) == 1
            and self.den[0][1].is_unit()
        ):
            return self.num[0][0] / self.den[0][0]
        return None

    def __str__(self) -> str:
        return format_numexpr(self)

    def __repr__(self) -> str:
        return f"NumExpr[{format_numexpr(self)}]"


def _content(terms: Iterable[tuple[Fraction, Monomial]]) -> Monomial:
    monos = [m for _, m in terms]
    alpha = min(m.alpha for m in monos)
    beta = min(m.beta for m in monos)
    beth1 = min(m.beth1 for m in monos)
    x2w = min(m.x2w for m in monos)
    omegas = [m.omega for m in monos]
    if any(o is None for o in omegas):
        om = None
    else:
        om = min(omegas, key=lambda o: o._key())
    return Monomial(alpha, beta, beth1, x2w, om)


def _mono_div(m: Monomial, c: Monomial) -> Monomial:
    if c.omega is None:
        om = m.omega
    else:
        om = _ord_sub(_omega_effective(m), c.omega)
        om = om if not om.is_zero() else None
    return Monomial(m.alpha - c.alpha, m.beta - c.beta, m.beth1 - c.beth1,
                    m.x2w - c.x2w, om)


def _ord_sub(a: Ord, b: Ord) -> Ord:
    """Hessenberg difference a - b, defined when b's terms embed in a's."""
    have = {e._key(): (e, c) for e, c in a.terms}
    for e, c in b.terms:
        k = e._key()
        if k not in have or have[k][1] < c:
            raise ValueError("non-subtractable ordinal pair")
        e0, c0 = have[k]
        if c0 == c:
            del have[k]
        else:
            have[k] = (e0, c0 - c)
    ordered = sorted(have.values(), key=lambda t: t[0]._key(), reverse=True)
    return Ord(tuple(ordered))


def _make(num: Terms, den: Terms) -> NumExpr:
    if not den:
        raise DivisionByZero("denominator is zero")
    if not num:
        return NumExpr((), ((Fraction(1), UNIT),))
    if num == den:
        return NumExpr(((Fraction(1), UNIT),), ((Fraction(1), UNIT),))
    content = _content(tuple(num) + tuple(den))
    if not content.is_unit():
        num = tuple((c, _mono_div(m, content)) for c, m in num)
        den = tuple((c, _mono_div(m, content)) for c, m in den)
    lead = den[0][0]
    if lead != 1:
        num = _poly_scale(num, 1 / lead)
        den = _poly_scale(den, 1 / lead)
    return NumExpr(num, den)


ZERO = NumExpr()
ONE = _make(((Fraction(1), UNIT),), ((Fraction(1), UNIT),))


def from_rational(q: Fraction | int) -> NumExpr:
    q = Fraction(q)
    if q == 0:
        return ZERO
    return _make(((q, UNIT),), ((Fraction(1), UNIT),))


def _atom(m: Monomial) -> NumExpr:
    return _make(((Fraction(1), m),), ((Fraction(1), UNIT),))


ALPHA = _atom(Monomial(alpha=Fraction(1)))
BETA = _atom(Monomial(beta=1))
BETH1 = _atom(Monomial(beth1=1))
X2W = _atom(Monomial(x2w=1))


def alpha_power(q: Fraction) -> NumExpr:
    if q == 0:
        return ONE
    m = Monomial(alpha=Fraction(q))
    if q > 0:
        return _atom(m)
    return _make(((Fraction(1), UNIT),), ((Fraction(1), Monomial(alpha=-Fraction(q))),))


def nf_add(a: NumExpr, b: NumExpr) -> NumExpr:
    return _make(_poly_add(_poly_mul(a.num, b.den), _poly_mul(b.num, a.den)),
                 _poly_mul(a.den, b.den))


def nf_neg(a: NumExpr) -> NumExpr:
    return _make(_poly_neg(a.num), a.den)


def nf_sub(a: NumExpr, b: NumExpr) -> NumExpr:
    return nf_add(a, nf_neg(b))


def nf_mul(a: NumExpr, b: NumExpr) -> NumExpr:
    return _make(_poly_mul(a.num, b.num), _poly_mul(a.den, b.den))


def nf_div(a: NumExpr, b: NumExpr) -> NumExpr:
    if b.is_zero():
        raise DivisionByZero("division by the zero numerosity expression")
    return _make(_poly_mul(a.num, b.den), _poly_mul(a.den, b.num))


def nf_eq(a: NumExpr, b: NumExpr) -> bool:
    return nf_sub(a, b).is_zero()


OMEGA_NF = nf_add(ALPHA, ONE)
TWO = from_rational(2)


def omega_power(exp: Ord) -> NumExpr:
    """The numerosity w^exp; finite exponent parts expand through w = alpha+1."""
    if exp.is_zero():
        return ONE
    r = exp.finite_part()
    finite_power = ONE
    for _ in range(r):
        finite_power = nf_mul(finite_power, OMEGA_NF)
    if exp.is_finite():
        return finite_power
    limit_part = Ord(exp.terms[:-1]) if r else exp
    return nf_mul(_atom(Monomial(omega=limit_part)), finite_power)


def embed(o: Ord) -> NumExpr:
    """Order-embedding of the ordinals below epsilon_0 into expressions."""
    out = ZERO
    for e, c in o.terms:
        out = nf_add(out, nf_mul(from_rational(c), omega_power(e)))
    return out


def unembed(x: NumExpr) -> Optional[Ord]:
    """Inverse of embed on its image; None if x is not an embedded ordinal."""
    if x.den != ((Fraction(1), UNIT),):
        return None
    rest = x
    cnf: list[tuple[Ord, int]] = []
    prev: Optional[Ord] = None
    while not rest.is_zero():
        if rest.den != ((Fraction(1), UNIT),):
            return None
        c, m = rest.num[0]  # dominant by key: omega grade then alpha degree
        if m.beta or m.beth1 or m.x2w:
            return None
        if m.alpha.denominator != 1 or m.alpha < 0:
            return None
        # A w^g * alpha^r monomial is the split image of exponent g + r.
        e = Ord.from_int(int(m.alpha))
        if m.omega is not None:
            from .ordinals import cantor_add

            e = cantor_add(m.omega, e)
        if c.denominator != 1 or c <= 0:
            return None
        if prev is not None and ord_cmp(e, prev) >= 0:
            return None
        cnf.append((e, int(c)))
        prev = e
        rest = nf_sub(rest, nf_mul(from_rational(c), omega_power(e)))
    return Ord(tuple(cnf))


class UnsupportedPowerPair(UnsupportedPower):
    pass


def _rational_root(q: Fraction, k: int) -> Optional[Fraction]:
    if k == 1:
        return q
    if q < 0:
        return None

    def iroot(n: int) -> Optional[int]:
        if n in (0, 1):
            return n
        lo, hi = 0, 1 << ((n.bit_length() + k - 1) // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**k < n:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo**k == n else None

    p, d = iroot(q.numerator), iroot(q.denominator)
    if p is None or d is None:
        return None
    return Fraction(p, d)


def _alpha_affine(x: NumExpr) -> Optional[tuple[int, int]]:
    """Decompose x = a*alpha + c with integers a >= 0, c; None otherwise."""
    if x.den != ((Fraction(1), UNIT),):
        return None
    a = c = Fraction(0)
    for coeff, m in x.num:
        if m.is_unit():
            c = coeff
        elif m.beta == m.beth1 == m.x2w == 0 and m.omega is None and m.alpha == 1:
            a = coeff
        else:
            return None
    if a.denominator != 1 or c.denominator != 1 or a < 0:
        return None
    return int(a), int(c)


def nf_pow(base: NumExpr, exp: NumExpr) -> NumExpr:
    """Exponentiation on the supported case matrix; raises otherwise.

    Cases: non-negative integer exponents (iterated product); a single
    alpha-monomial base with rational exponent (exponent scaling); base 2^j
    with exponent a*alpha + c (covers 2^w = X); base w with an embedded
    ordinal exponent (w-power monomials).
    """
    r = exp.as_rational()
    if r is not None and r.denominator == 1 and r >= 0:
        n = int(r)
        out = ONE
        sq = base
        while n:
            if n & 1:
                out = nf_mul(out, sq)
            sq = nf_mul(sq, sq)
            n >>= 1
        return out

    if r is not None:
        # Rational non-integer exponent: only single monomials in alpha.
        if (
            len(base.num) == 1
            and base.den == ((Fraction(1), UNIT),)
            and base.num[0][1].beta == 0
            and base.num[0][1].beth1 == 0
            and base.num[0][1].x2w == 0
            and base.num[0][1].omega is None
        ):
            coeff, m = base.num[0]
            croot = None
            if r.denominator == 1:
                croot = coeff**int(r)
            else:
                root = _rational_root(coeff, r.denominator)
                if root is not None:
                    croot = root ** r.numerator if r.numerator >= 0 else Fraction(1) / root ** (-r.numerator)
            if croot is not None:
                return nf_mul(from_rational(croot), alpha_power(m.alpha * r))
        raise UnsupportedPowerPair(
            f"rational exponent {r} requires a single alpha-monomial base"
        )

    b = base.as_rational()
    if b is not None and b > 0 and b.denominator == 1:
        n = int(b)
        if n == 1:
            return ONE
        j = n.bit_length() - 1
        if n == 1 << j:
            aff = _alpha_affine(exp)
            if aff is not None:
                a, c = aff
                # (2^j)^(a*alpha + c) = 2^(j*c - j*a) * X^(j*a), using 2^alpha = X/2.
                ja, jc = j * a, j * c
                scale = Fraction(2) ** (jc - ja)
                return nf_mul(from_rational(scale), _atom(Monomial(x2w=ja)) if ja else ONE)
        raise UnsupportedPowerPair(
            f"finite base {n} supports only power-of-two bases with exponents a*alpha+c"
        )

    if nf_eq(base, OMEGA_NF):
        g = unembed(exp)
        if g is not None:
            return omega_power(g)
        raise UnsupportedPowerPair("base w requires an embedded ordinal exponent")

    raise UnsupportedPowerPair("base/exponent pair outside the supported matrix")


# ---------------------------------------------------------------------------
# Axiom table
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class AxiomTable:
    """Session-scoped order axioms.

    bb_mode rewrites beth1 to beta + X on input (applied by callers via
    apply_bb).  declared holds extra order assertions: ("alpha_dom", m) means
    every alpha power lies below monomial m (a dominance-grade relation);
    ("lt", m1, m2) is a single order-grade assertion.
    """

    bb_mode: bool = False
    declared: tuple[tuple, ...] = ()

    def with_bb(self, on: bool = True) -> "AxiomTable":
        return AxiomTable(on, self.declared)

    def with_alpha_dominated_by(self, m: Monomial) -> "AxiomTable":
        probe = Monomial(alpha=Fraction(1))
        c = _mono_order(probe, m, self)
        if c is not None and c >= 0:
            raise InconsistentOrder(f"alpha^k < {format_monomial(m)} contradicts the built-in order")
        return AxiomTable(self.bb_mode, self.declared + (("alpha_dom", m),))

    def with_order(self, m1: Monomial, m2: Monomial) -> "AxiomTable":
        c = _mono_order(m1, m2, self)
        if c is not None and c >= 0:
            raise InconsistentOrder(
                f"{format_monomial(m1)} < {format_monomial(m2)} contradicts the built-in order"
            )
        return AxiomTable(self.bb_mode, self.declared + (("lt", m1, m2),))


DEFAULT_TABLE = AxiomTable()


def apply_bb(x: NumExpr, table: AxiomTable) -> NumExpr:
    """Rewrite beth1 := beta + X when the table is in bb mode."""
    if not table.bb_mode:
        return x

    def subst(terms: Terms) -> NumExpr:
        out = ZERO
        bx = nf_add(BETA, X2W)
        for c, m in terms:
            stripped = Monomial(m.alpha, m.beta, 0, m.x2w, m.omega)
            piece = nf_mul(from_rational(c), _atom(stripped) if not stripped.is_unit() else ONE)
            for _ in range(m.beth1):
                piece = nf_mul(piece, bx)
            out = nf_add(out, piece)
        return out

    return nf_div(subst(x.num), subst(x.den))


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------

LESS, EQUAL, GREATER, UNKNOWN = "less", "equal", "greater", "unknown"


@dataclass(frozen=True, slots=True)
class Comparison:
    kind: str
    reason: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == UNKNOWN and self.reason:
            return f"unknown ({self.reason})"
        return self.kind


@dataclass(frozen=True, slots=True)
class _Ratio:
    """Exponent vector of m1/m2; the omega part is pre-compared."""

    alpha: Fraction
    beta: int
    beth1: int
    x2w: int
    omega_sign: int  # sign of ord_cmp(effective w-exponents)

    def inverse(self) -> "_Ratio":
        return _Ratio(-self.alpha, -self.beta, -self.beth1, -self.x2w, -self.omega_sign)

    def trivial(self) -> bool:
        return (
            self.alpha == 0
            and self.beta == 0
            and self.beth1 == 0
            and self.x2w == 0
            and self.omega_sign == 0
        )


def _ratio(m1: Monomial, m2: Monomial) -> _Ratio:
    return _Ratio(
        m1.alpha - m2.alpha,
        m1.beta - m2.beta,
        m1.beth1 - m2.beth1,
        m1.x2w - m2.x2w,
        ord_cmp(_omega_effective(m1), _omega_effective(m2)),
    )


def _alpha_dominators(table: AxiomTable) -> list[Monomial]:
    return [m for tag, *rest in table.declared if tag == "alpha_dom" for m in rest]


def _ratio_exceeds_one(r: _Ratio, table: AxiomTable, need_dominance: bool) -> bool:
    """Sound one-sided test: does the ratio exceed 1 (or every rational)?

    Only grounded rules fire: positive generator powers are infinite; X and
    w-powers dominate every alpha power; beta exceeds alpha once per factor
    (order grade only); declared alpha-dominators absorb any alpha deficit.
    """
    pos_beta_extra = r.beta  # beta exponent available after covering alpha
    alpha = r.alpha
    if r.beth1 < 0 or r.x2w < 0 or r.omega_sign < 0 or r.beta < 0:
        # A deficit in a non-alpha generator is never covered by built-ins.
        return False
    if alpha >= 0:
        if need_dominance:
            return (
                alpha > 0
                or r.beta > 0
                or r.beth1 > 0
                or r.x2w > 0
                or r.omega_sign > 0
            )
        return r.beta > 0 or r.beth1 > 0 or r.x2w > 0 or r.omega_sign > 0 or alpha > 0
    # alpha deficit: needs coverage by a dominating generator.
    if r.x2w > 0 or r.omega_sign > 0:
        return True
    for m in _alpha_dominators(table):
        # Declared: every alpha power < m.  One unit of a matching generator
        # in the positive part absorbs the whole alpha deficit, with room.
        if m.beta == 1 and m.beth1 == 0 and m.x2w == 0 and m.omega is None and m.alpha == 0:
            if r.beta >= 1:
                return True
        if m.beth1 == 1 and m.beta == 0 and m.x2w == 0 and m.omega is None and m.alpha == 0:
            if r.beth1 >= 1:
                return True
    if pos_beta_extra > 0 and not need_dominance:
        # beta^b * alpha^a > 1 for a >= -b: each beta/alpha factor exceeds 1.
        if -alpha <= pos_beta_extra:
            return True
    if pos_beta_extra > 0 and need_dominance:
        if -alpha < pos_beta_extra:
            return True
    return False


def _declared_order(m1: Monomial, m2: Monomial, table: AxiomTable) -> Optional[int]:
    for entry in table.declared:
        if entry[0] != "lt":
            continue
        _, a, b = entry
        if (m1, m2) == (a, b):
            return -1
        if (m1, m2) == (b, a):
            return 1
    return None


def _mono_order(m1: Monomial, m2: Monomial, table: AxiomTable) -> Optional[int]:
    if m1 == m2:
        return 0
    r = _ratio(m1, m2)
    if r.trivial():
        return 0
    if _ratio_exceeds_one(r, table, need_dominance=False):
        return 1
    if _ratio_exceeds_one(r.inverse(), table, need_dominance=False):
        return -1
    d = _declared_order(m1, m2, table)
    if d is not None:
        return d
    return None


def _mono_dominates(m1: Monomial, m2: Monomial, table: AxiomTable) -> bool:
    """True iff m1/m2 exceeds every rational (infinite ratio)."""
    if m1 == m2:
        return False
    return _ratio_exceeds_one(_ratio(m1, m2), table, need_dominance=True)


def _blocking_pair(terms: Terms, table: AxiomTable) -> str:
    pos = [m for c, m in terms if c > 0]
    neg = [m for c, m in terms if c < 0]
    if pos and neg:
        m1, m2 = pos[0], neg[0]
        r = _ratio(m1, m2)
        return f"{_format_ratio_side(r, positive=True)} vs {_format_ratio_side(r, positive=False)} undeclared"
    return "sign of a mixed expression undecided"


def _poly_sign(terms: Terms, table: AxiomTable) -> tuple[Optional[int], Optional[str]]:
    if not terms:
        return 0, None
    if all(c > 0 for c, _ in terms):
        return 1, None
    if all(c < 0 for c, _ in terms):
        return -1, None

    def positive_decided(ts: Terms) -> bool:
        neg = [(c, m) for c, m in ts if c < 0]
        total_neg = -sum(c for c, _ in neg)
        for c, m in ts:
            if c <= 0:
                continue
            if all(_mono_dominates(m, mn, table) for _, mn in neg):
                return True
            if c >= total_neg and all(
                (_mono_order(m, mn, table) or 0) > 0 for _, mn in neg
            ):
                return True
        return False

    if positive_decided(terms):
        return 1, None
    if positive_decided(_poly_neg(terms)):
        return -1, None
    return None, _blocking_pair(terms, table)


def nf_cmp(a: NumExpr, b: NumExpr, table: AxiomTable = DEFAULT_TABLE) -> Comparison:
    """Partial comparison: cross-multiplied equality, then dominant-sign."""
    diff = nf_sub(a, b)
    if diff.is_zero():
        return Comparison(EQUAL)
    sn, rn = _poly_sign(diff.num, table)
    if sn is None:
        return Comparison(UNKNOWN, rn)
    sd, rd = _poly_sign(diff.den, table)
    if sd is None or sd == 0:
        return Comparison(UNKNOWN, rd or "denominator sign undecided")
    s = sn * sd
    return Comparison(GREATER if s > 0 else LESS)


def is_positive(a: NumExpr, table: AxiomTable = DEFAULT_TABLE) -> bool:
    return nf_cmp(a, ZERO, table).kind == GREATER


# ---------------------------------------------------------------------------
# Standard part and gamma-measure
# ---------------------------------------------------------------------------

FINITE, PLUS_INF, MINUS_INF = "finite", "+infinity", "-infinity"


@dataclass(frozen=True, slots=True)
class StandardPart:
    kind: str
    value: Optional[Fraction] = None
    reason: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        if self.kind == UNKNOWN and self.reason:
            return f"unknown ({self.reason})"
        return self.kind


def _dominant_term(terms: Terms, table: AxiomTable) -> Optional[tuple[Fraction, Monomial]]:
    for c, m in terms:
        if all(m2 == m or _mono_dominates(m, m2, table) for _, m2 in terms):
            return c, m
    return None


def standard_part(a: NumExpr, table: AxiomTable = DEFAULT_TABLE) -> StandardPart:
    """Shadow of a on the real line: leading-term quotient when decided."""
    if a.is_zero():
        return StandardPart(FINITE, Fraction(0))
    top = _dominant_term(a.num, table)
    bot = _dominant_term(a.den, table)
    if top is None or bot is None:
        return StandardPart(UNKNOWN, reason="dominant term undecided")
    cn, mn = top
    cd, md = bot
    if mn == md:
        return StandardPart(FINITE, cn / cd)
    if _mono_dominates(mn, md, table):
        return StandardPart(PLUS_INF if cn * cd > 0 else MINUS_INF)
    if _mono_dominates(md, mn, table):
        return StandardPart(FINITE, Fraction(0))
    return StandardPart(
        UNKNOWN,
        reason=f"{format_monomial(mn)} vs {format_monomial(md)} dominance undeclared",
    )


def gamma_measure(num_a: NumExpr, gamma: NumExpr,
                  table: AxiomTable = DEFAULT_TABLE) -> StandardPart:
    """st(num_a / gamma); gamma must be decidedly positive."""
    if nf_cmp(gamma, ZERO, table).kind != GREATER:
        raise NonPositiveGamma(f"gamma = {gamma} is not decidedly positive")
    st = standard_part(nf_div(num_a, gamma), table)
    if st.kind == MINUS_INF:
        raise MeasureInternalError("negative infinite measure from a set numerosity")
    return st


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------


def _fmt_exp(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def format_monomial(m: Monomial) -> str:
    if m.is_unit():
        return "1"
    parts = []
    if m.omega is not None:
        parts.append(f"w^({format_ordinal(m.omega)})")
    if m.x2w:
        parts.append("X" if m.x2w == 1 else f"X^{m.x2w}")
    if m.beth1:
        parts.append("beth1" if m.beth1 == 1 else f"beth1^{m.beth1}")
    if m.beta:
        parts.append("beta" if m.beta == 1 else f"beta^{m.beta}")
    if m.alpha:
        parts.append("alpha" if m.alpha == 1 else f"alpha^{_fmt_exp(m.alpha)}")
    return "*".join(parts)


def _format_ratio_side(r: _Ratio, positive: bool) -> str:
    sgn = 1 if positive else -1
    parts = []
    if r.omega_sign * sgn > 0:
        parts.append("w-power")
    if r.x2w * sgn > 0:
        parts.append("2^w" if abs(r.x2w) == 1 else f"2^w^{abs(r.x2w)}")
    if r.beth1 * sgn > 0:
        parts.append("beth1" if abs(r.beth1) == 1 else f"beth1^{abs(r.beth1)}")
    if r.beta * sgn > 0:
        parts.append("beta" if abs(r.beta) == 1 else f"beta^{abs(r.beta)}")
    if r.alpha * sgn > 0:
        q = abs(r.alpha)
        parts.append("alpha" if q == 1 else f"alpha^{_fmt_exp(q)}")
    return "*".join(parts) if parts else "1"


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(terms: Terms) -> str:
    if not terms:
        return "0"
    parts = []
    for i, (c, m) in enumerate(terms):
        mag = abs(c)
        if m.is_unit():
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = format_monomial(m)
        else:
            body = f"{_fmt_coeff(mag)}*{format_monomial(m)}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def format_numexpr(x: NumExpr) -> str:
    num = format_poly(x.num)
    if x.den == ((Fraction(1), UNIT),):
        return num
    den = format_poly(x.den)
    lhs = f"({num})" if len(x.num) > 1 else num
    rhs = f"({den})" if len(x.den) > 1 else den
    return f"{lhs}/{rhs}"


def _mono_factor_string(m: Monomial) -> str:
    return format_monomial(m)


def numexpr_to_json(x: NumExpr) -> dict:
    return {
        "num": [[_fmt_coeff(c), _mono_factor_string(m)] for c, m in x.num],
        "den": [[_fmt_coeff(c), _mono_factor_string(m)] for c, m in x.den],
    }
