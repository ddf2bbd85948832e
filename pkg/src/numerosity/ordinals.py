"""Exact arithmetic on ordinals below epsilon_0 in hereditary Cantor normal form.

An ordinal is a descending sum of terms w^e * c with ordinal exponents e and
positive integer coefficients c; exponents recursively carry the same shape,
so every representable ordinal lies strictly below epsilon_0.  Two arithmetics
live on this representation: the Cantor operations (left-absorbing sum,
left-distributing product) and the natural (Hessenberg) operations, which are
commutative and coefficient-wise/convolution-wise on the normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class UnsupportedPower(ValueError):
    """Base/exponent pair outside the implemented exponentiation cases."""


class ZeroArgument(ValueError):
    """Raised where zero is excluded (e.g. indecomposability of 0)."""


@dataclass(frozen=True, slots=True)
class Ord:
    """An ordinal < epsilon_0: tuple of (exponent, coefficient) terms.

    Terms are sorted by strictly decreasing exponent; coefficients are >= 1;
    the empty tuple is 0; a natural number n is the single term (0, n).
    """

    terms: tuple[tuple["Ord", int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for exp, coeff in self.terms:
            if coeff < 1:
                raise ValueError(f"coefficient {coeff} must be >= 1")
            if prev is not None and ord_cmp(exp, prev) >= 0:
                raise ValueError("exponents must strictly decrease")
            prev = exp

    # -- structure helpers ------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Ord":
        if n < 0:
            raise ValueError("ordinals are non-negative")
        if n == 0:
            return ZERO
        return Ord(((ZERO, n),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1]

    def lead_exp(self) -> "Ord":
        if self.is_zero():
            raise ValueError("0 has no leading term")
        return self.terms[0][0]

    def finite_part(self) -> int:
        """Coefficient of the w^0 term (0 if absent)."""
        if self.terms and self.terms[-1][0].is_zero():
            return self.terms[-1][1]
        return 0

    def _key(self) -> tuple:
        return tuple((exp._key(), coeff) for exp, coeff in self.terms)

    # -- order ------------------------------------------------------------

    def __lt__(self, other: "Ord") -> bool:
        return ord_cmp(self, other) < 0

    def __le__(self, other: "Ord") -> bool:
        return ord_cmp(self, other) <= 0

    def __gt__(self, other: "Ord") -> bool:
        return ord_cmp(self, other) > 0

    def __ge__(self, other: "Ord") -> bool:
        return ord_cmp(self, other) >= 0

    # -- arithmetic dunders use the natural operations --------------------

    def __add__(self, other: "Ord") -> "Ord":
        return natural_add(self, other)

    def __mul__(self, other: "Ord") -> "Ord":
        return natural_mul(self, other)

    def __repr__(self) -> str:
        return f"Ord[{format_ordinal(self)}]"

    def __str__(self) -> str:
        return format_ordinal(self)


ZERO = Ord()
ONE = Ord.from_int(1)
OMEGA = Ord(((ONE, 1),))


def omega_pow(exp: Ord, coeff: int = 1) -> Ord:
    """The monomial w^exp * coeff."""
    if coeff < 1:
        raise ValueError("coefficient must be >= 1")
    return Ord(((exp, coeff),))


def ord_cmp(a: Ord, b: Ord) -> int:
    """Total order: -1, 0, or 1.  Lexicographic on (exponent, coefficient)."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = ord_cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def cantor_add(a: Ord, b: Ord) -> Ord:
    """Cantor sum: a's terms below b's leading exponent are absorbed."""
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    eb = b.lead_exp()
    kept = [t for t in a.terms if ord_cmp(t[0], eb) > 0]
    merged = list(b.terms)
    for exp, coeff in a.terms:
        if ord_cmp(exp, eb) == 0:
            merged[0] = (eb, coeff + b.terms[0][1])
            break
    return Ord(tuple(kept) + tuple(merged))


def cantor_mul(a: Ord, b: Ord) -> Ord:
    """Cantor product, distributing a over b's terms from the left."""
    if a.is_zero() or b.is_zero():
        return ZERO
    out = ZERO
    ea = a.lead_exp()
    for exp, coeff in b.terms:
        if exp.is_zero():
            # a * n multiplies only the leading coefficient of a.
            piece = Ord(((ea, a.terms[0][1] * coeff),) + a.terms[1:])
        else:
            piece = omega_pow(cantor_add(ea, exp), coeff)
        out = cantor_add(out, piece)
    return out


def natural_add(a: Ord, b: Ord) -> Ord:
    """Hessenberg sum: coefficient-wise merge over the union of exponents."""
    coeffs: dict[tuple, tuple[Ord, int]] = {}
    for exp, coeff in a.terms + b.terms:
        k = exp._key()
        if k in coeffs:
            coeffs[k] = (exp, coeffs[k][1] + coeff)
        else:
            coeffs[k] = (exp, coeff)
    ordered = sorted(coeffs.values(), key=lambda t: t[0]._key(), reverse=True)
    return Ord(tuple(ordered))


def natural_mul(a: Ord, b: Ord) -> Ord:
    """Hessenberg product: convolution with natural sums of exponents."""
    if a.is_zero() or b.is_zero():
        return ZERO
    out = ZERO
    for ea, ca in a.terms:
        for eb, cb in b.terms:
            out = natural_add(out, omega_pow(natural_add(ea, eb), ca * cb))
    return out


def _finite_pow(base: Ord, n: int) -> Ord:
    result = ONE
    square = base
    while n:
        if n & 1:
            result = cantor_mul(result, square)
        square = cantor_mul(square, square)
        n >>= 1
    return result


def ord_exp(base: Ord, exp: Ord) -> Ord:
    """Ordinal exponentiation base^<exp> on the supported case matrix.

    Supported: base w with any exponent (the monomial rule), any base with
    finite exponent (iterated Cantor product), and finite base n >= 2 with
    infinite exponent (closed form via n^<w> = w).  Anything else raises
    UnsupportedPower.
    """
    if exp.is_zero():
        return ONE
    if base.is_zero():
        return ZERO
    if ord_cmp(base, ONE) == 0:
        return ONE
    if ord_cmp(base, OMEGA) == 0:
        return omega_pow(exp)
    if exp.is_finite():
        return _finite_pow(base, exp.as_int())
    if base.is_finite():
        # n^<w^e * c + ...> collapses to a single monomial: each infinite
        # exponent term w^e*c contributes w^(w^e' * c) with e' = -1 + e,
        # and the finite remainder r contributes the coefficient n^r.
        n = base.as_int()
        shifted = []
        r = 0
        for e, c in exp.terms:
            if e.is_zero():
                r = c
                continue
            if e.is_finite():
                e_shift = Ord.from_int(e.as_int() - 1)
            else:
                e_shift = e
            shifted.append((e_shift, c))
        return omega_pow(Ord(tuple(shifted)), n**r)
    raise UnsupportedPower(
        f"base {format_ordinal(base)} with infinite exponent {format_ordinal(exp)}"
    )


def is_indecomposable(t: Ord) -> bool:
    """True iff a + b*c < t for all a, b, c < t (natural operations).

    Structurally: t = 1, or t = w^(w^d) for some d (single term, coefficient 1,
    whose exponent is itself a single term with coefficient 1).  The degenerate
    t = 1 is included.
    """
    if t.is_zero():
        raise ZeroArgument("0 is neither decomposable nor indecomposable")
    if ord_cmp(t, ONE) == 0:
        return True
    if len(t.terms) != 1 or t.terms[0][1] != 1:
        return False
    e = t.terms[0][0]
    return len(e.terms) == 1 and e.terms[0][1] == 1


def format_ordinal(o: Ord) -> str:
    """Canonical text: terms `w^(E)*C` in decreasing exponent order.

    Exponent parentheses are dropped when the exponent prints as a single
    token (a natural number or the bare `w`).
    """
    if o.is_zero():
        return "0"
    parts = []
    for exp, coeff in o.terms:
        if exp.is_zero():
            parts.append(str(coeff))
            continue
        if ord_cmp(exp, ONE) == 0:
            head = "w"
        else:
            inner = format_ordinal(exp)
            simple = inner == "w" or inner.isdigit()
            head = f"w^{inner}" if simple else f"w^({inner})"
        parts.append(head if coeff == 1 else f"{head}*{coeff}")
    return " + ".join(parts)


def fold_cantor(monomials: Iterable[Ord]) -> Ord:
    out = ZERO
    for m in monomials:
        out = cantor_add(out, m)
    return out


def fold_natural(monomials: Iterable[Ord]) -> Ord:
    out = ZERO
    for m in monomials:
        out = natural_add(out, m)
    return out
