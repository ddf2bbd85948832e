"""Tokenizer and recursive-descent parsers for the calculator surface.

Three small grammars share one tokenizer: numerosity expressions (field
values), ordinal expressions (with distinct spellings for the Cantor
operations), and set expressions.  Every error carries the offending position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import field, ordinals, sets
from .field import Monomial, NumExpr
from .ordinals import Ord


class ParseError(ValueError):
    def __init__(self, pos: int, expected: str, text: str = ""):
        self.pos = pos
        self.expected = expected
        marker = ""
        if text:
            marker = f"\n  {text}\n  {' ' * pos}^"
        super().__init__(f"at column {pos + 1}: expected {expected}{marker}")


_TWO_CHAR = ("+.", "*.", "><")
_THREE_CHAR = ("^<>",)
_SINGLE = "+-*/^|&\\()[]{},<=."


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # 'num', 'ident', 'op', 'end'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text[i : i + 3] in _THREE_CHAR:
            out.append(Token("op", text[i : i + 3], i))
            i += 3
            continue
        if text[i : i + 2] in _TWO_CHAR:
            out.append(Token("op", text[i : i + 2], i))
            i += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], i))
            i = j
            continue
        if ch in _SINGLE:
            out.append(Token("op", ch, i))
            i += 1
            continue
        raise ParseError(i, "a token", text)
    out.append(Token("end", "", n))
    return out


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "end":
            self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            raise ParseError(t.pos, f"{text!r}", self.text)
        return self.next()

    def at(self, text: str) -> bool:
        return self.peek().text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.next()
            return True
        return False

    def done(self) -> bool:
        return self.peek().kind == "end"

    def fail(self, expected: str):
        raise ParseError(self.peek().pos, expected, self.text)

    def adjacent(self) -> bool:
        """Next token starts exactly where the previous one ended."""
        if self.i == 0:
            return False
        prev = self.tokens[self.i - 1]
        return self.peek().pos == prev.pos + len(prev.text)


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------


def parse_rational(ts: TokenStream) -> Fraction:
    neg = ts.accept("-")
    t = ts.peek()
    if t.kind != "num":
        ts.fail("a number")
    ts.next()
    value = Fraction(int(t.text))
    if ts.at("/") and ts.peek(1).kind == "num":
        ts.next()
        value /= int(ts.next().text)
    return -value if neg else value


# ---------------------------------------------------------------------------
# Ordinal expressions: + and * natural, +. and *. Cantor, ^<> exponentiation
# ---------------------------------------------------------------------------


def parse_ordinal_expr(ts: TokenStream) -> Ord:
    return _ord_sum(ts)


def _ord_sum(ts: TokenStream) -> Ord:
    left = _ord_product(ts)
    while ts.at("+") or ts.at("+."):
        op = ts.next().text
        right = _ord_product(ts)
        left = ordinals.natural_add(left, right) if op == "+" else ordinals.cantor_add(left, right)
    return left


def _ord_product(ts: TokenStream) -> Ord:
    left = _ord_power(ts)
    while ts.at("*") or ts.at("*."):
        op = ts.next().text
        right = _ord_power(ts)
        left = ordinals.natural_mul(left, right) if op == "*" else ordinals.cantor_mul(left, right)
    return left


def _ord_power(ts: TokenStream) -> Ord:
    base = _ord_atom(ts)
    if ts.accept("^<>") or ts.accept("^"):
        return ordinals.ord_exp(base, _ord_power(ts))
    return base


def _ord_atom(ts: TokenStream) -> Ord:
    t = ts.peek()
    if t.text == "w":
        ts.next()
        return ordinals.OMEGA
    if t.kind == "num":
        ts.next()
        return Ord.from_int(int(t.text))
    if ts.accept("("):
        inner = _ord_sum(ts)
        ts.expect(")")
        return inner
    ts.fail("an ordinal atom (w, a natural number, or parentheses)")


def parse_ordinal(text: str) -> Ord:
    ts = TokenStream(text)
    out = parse_ordinal_expr(ts)
    if not ts.done():
        ts.fail("end of ordinal expression")
    return out


# ---------------------------------------------------------------------------
# Numerosity expressions
# ---------------------------------------------------------------------------


def parse_numexpr(ts: TokenStream) -> NumExpr:
    return _nf_sum(ts)


def _nf_sum(ts: TokenStream) -> NumExpr:
    if ts.accept("-"):
        left = field.nf_neg(_nf_product(ts))
    else:
        left = _nf_product(ts)
    while ts.at("+") or ts.at("-"):
        op = ts.next().text
        right = _nf_product(ts)
        left = field.nf_add(left, right) if op == "+" else field.nf_sub(left, right)
    return left


def _nf_product(ts: TokenStream) -> NumExpr:
    left = _nf_power(ts)
    while ts.at("*") or ts.at("/"):
        op = ts.next().text
        right = _nf_power(ts)
        left = field.nf_mul(left, right) if op == "*" else field.nf_div(left, right)
    return left


def _nf_power(ts: TokenStream) -> NumExpr:
    base = _nf_atom(ts)
    if ts.accept("^"):
        return field.nf_pow(base, _nf_power(ts))
    return base


def _nf_atom(ts: TokenStream) -> NumExpr:
    t = ts.peek()
    if t.kind == "num":
        ts.next()
        value = Fraction(int(t.text))
        return field.from_rational(value)
    if t.text == "w":
        ts.next()
        if ts.at("^"):
            ts.next()
            if ts.accept("("):
                g = _ord_sum(ts)
                ts.expect(")")
            else:
                nt = ts.peek()
                if nt.kind == "num":
                    ts.next()
                    g = Ord.from_int(int(nt.text))
                elif nt.text == "w":
                    ts.next()
                    g = ordinals.OMEGA
                else:
                    ts.fail("an ordinal exponent")
            return field.omega_power(g)
        return field.OMEGA_NF
    if t.text == "alpha":
        ts.next()
        return field.ALPHA
    if t.text == "beta":
        ts.next()
        return field.BETA
    if t.text == "beth1":
        ts.next()
        return field.BETH1
    if t.text == "X":
        ts.next()
        return field.X2W
    if t.text == "num":
        ts.next()
        ts.expect("(")
        inner = parse_setexpr(ts)
        ts.expect(")")
        return sets.num(inner)
    if ts.accept("("):
        inner = _nf_sum(ts)
        ts.expect(")")
        return inner
    ts.fail("a numerosity atom")


def parse_num(text: str) -> NumExpr:
    ts = TokenStream(text)
    out = parse_numexpr(ts)
    if not ts.done():
        ts.fail("end of expression")
    return out


# ---------------------------------------------------------------------------
# Set expressions: | union, & intersection, \ difference, >< product
# ---------------------------------------------------------------------------


def parse_setexpr(ts: TokenStream) -> sets.SetExpr:
    return _set_union(ts)


def _set_union(ts: TokenStream) -> sets.SetExpr:
    left = _set_inter(ts)
    while ts.accept("|"):
        left = sets.Union_(left, _set_inter(ts))
    return left


def _set_inter(ts: TokenStream) -> sets.SetExpr:
    left = _set_prod(ts)
    while ts.at("&") or ts.at("\\"):
        op = ts.next().text
        right = _set_prod(ts)
        left = sets.Inter(left, right) if op == "&" else sets.Diff(left, right)
    return left


def _set_prod(ts: TokenStream) -> sets.SetExpr:
    left = _set_atom(ts)
    while ts.accept("><"):
        left = sets.Prod(left, _set_atom(ts))
    return left


def _set_atom(ts: TokenStream) -> sets.SetExpr:
    t = ts.peek()
    if t.text == "N":
        ts.next()
        if ts.at("+") and ts.adjacent():
            ts.next()
            return sets.NatPos()
        return sets.NatAll()
    if t.text == "Q":
        ts.next()
        if ts.at("+") and ts.adjacent():
            ts.next()
            return sets.QPos()
        if ts.at("(") and ts.adjacent():
            ts.next()
            p = parse_rational(ts)
            ts.expect(",")
            q = parse_rational(ts)
            ts.expect("]")
            return sets.QInterval(p, q)
        return sets.QAll()
    if t.text == "R":
        ts.next()
        if ts.at("+") and ts.adjacent():
            ts.next()
            return sets.RPos()
        if ts.at("[") and ts.adjacent():
            ts.next()
            p = parse_rational(ts)
            ts.expect(",")
            q = parse_rational(ts)
            ts.expect(")")
            return sets.RInterval(p, q)
        return sets.RAll()
    if t.text == "fin":
        ts.next()
        ts.expect("{")
        elems = []
        if not ts.at("}"):
            while True:
                nt = ts.peek()
                if nt.kind != "num":
                    ts.fail("a natural number")
                ts.next()
                elems.append(int(nt.text))
                if not ts.accept(","):
                    break
        ts.expect("}")
        return sets.FinSet(frozenset(elems))
    if t.text == "mod":
        ts.next()
        ts.expect("(")
        p = int(ts.next().text)
        ts.expect(",")
        i = int(ts.next().text)
        ts.expect(")")
        return sets.Mod(p, i)
    if t.text == "pow":
        ts.next()
        ts.expect("(")
        p = int(ts.next().text)
        ts.expect(")")
        return sets.Pow(p)
    if t.text == "Pfin":
        ts.next()
        ts.expect("(")
        ts.expect("N")
        ts.expect(")")
        return sets.PfinN()
    if t.text == "shift":
        ts.next()
        ts.expect("(")
        q = parse_rational(ts)
        ts.expect(",")
        child = parse_setexpr(ts)
        ts.expect(")")
        return sets.Shift(q, child)
    if t.text == "maps":
        ts.next()
        ts.expect("(")
        k = int(ts.next().text)
        ts.expect(",")
        child = parse_setexpr(ts)
        ts.expect(")")
        return sets.FinMapsInto(k, child)
    if t.text == "[":
        ts.next()
        ts.expect("0")
        ts.expect(",")
        ts.expect("1")
        ts.expect("]")
        return sets.UnitInterval01()
    if ts.accept("("):
        inner = _set_union(ts)
        ts.expect(")")
        return inner
    ts.fail("a set expression")


def parse_set(text: str) -> sets.SetExpr:
    ts = TokenStream(text)
    out = parse_setexpr(ts)
    if not ts.done():
        ts.fail("end of set expression")
    return out


# ---------------------------------------------------------------------------
# Order assertions: `alpha^k < beta` (universal) or concrete monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class OrderAssertion:
    universal_alpha: bool
    lhs: Optional[Monomial]
    rhs: Monomial


def _parse_monomial(ts: TokenStream) -> tuple[Optional[Monomial], bool]:
    """One monomial; returns (monomial, saw_universal_alpha_power)."""
    alpha = Fraction(0)
    beta = beth1 = x2w = 0
    omega: Optional[Ord] = None
    universal = False
    while True:
        t = ts.peek()
        if t.text not in ("alpha", "beta", "beth1", "X", "w"):
            break
        ts.next()
        exp: Fraction = Fraction(1)
        if ts.accept("^"):
            nt = ts.peek()
            if nt.kind == "ident" and t.text == "alpha":
                ts.next()
                universal = True
                exp = Fraction(1)
            elif nt.text == "(":
                ts.next()
                if t.text == "w":
                    g = _ord_sum(ts)
                    ts.expect(")")
                    omega = g if omega is None else ordinals.natural_add(omega, g)
                    if not ts.accept("*"):
                        break
                    continue
                exp = parse_rational(ts)
                ts.expect(")")
            else:
                exp = parse_rational(ts)
        if t.text == "alpha":
            alpha += exp
        elif t.text == "beta":
            beta += int(exp)
        elif t.text == "beth1":
            beth1 += int(exp)
        elif t.text == "X":
            x2w += int(exp)
        elif t.text == "w":
            ts.fail("w requires an ordinal exponent in order assertions")
        if not ts.accept("*"):
            break
    m = Monomial(alpha, beta, beth1, x2w, omega)
    return (None if universal else m), universal


def parse_order_assertion(text: str) -> OrderAssertion:
    ts = TokenStream(text)
    lhs, universal = _parse_monomial(ts)
    ts.expect("<")
    rhs, runi = _parse_monomial(ts)
    if runi or rhs is None:
        ts.fail("a concrete monomial on the right")
    if not ts.done():
        ts.fail("end of assertion")
    return OrderAssertion(universal, lhs, rhs)
