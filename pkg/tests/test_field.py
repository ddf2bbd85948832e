"""Field laws, partial comparison, standard part, and the ordinal embedding."""

from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numerosity import field
from numerosity import ordinals as o
from numerosity.field import (
    ALPHA,
    BETA,
    BETH1,
    EQUAL,
    GREATER,
    LESS,
    ONE,
    UNKNOWN,
    X2W,
    ZERO,
    AxiomTable,
    DivisionByZero,
    InconsistentOrder,
    Monomial,
    NonPositiveGamma,
    UnsupportedPowerPair,
    apply_bb,
    embed,
    from_rational,
    gamma_measure,
    nf_add,
    nf_cmp,
    nf_div,
    nf_eq,
    nf_mul,
    nf_neg,
    nf_pow,
    nf_sub,
    omega_power,
    standard_part,
    unembed,
)
from conftest import random_numexpr, random_ord


def q(n, d=1):
    return from_rational(F(n, d))


ALPHA2 = nf_mul(ALPHA, ALPHA)
DOM_TABLE = AxiomTable().with_alpha_dominated_by(Monomial(beta=1))


# -- expression strategy -----------------------------------------------------

_atoms = st.sampled_from([ALPHA, BETA, BETH1, X2W, ONE, q(2), q(1, 2), q(-3)])


@st.composite
def exprs(draw, max_ops: int = 4):
    out = draw(_atoms)
    for _ in range(draw(st.integers(0, max_ops))):
        other = draw(_atoms)
        op = draw(st.sampled_from(["add", "sub", "mul", "pow2", "inv"]))
        if op == "add":
            out = nf_add(out, other)
        elif op == "sub":
            out = nf_sub(out, other)
        elif op == "mul":
            out = nf_mul(out, other)
        elif op == "pow2":
            out = nf_pow(out, q(2))
        elif op == "inv" and not other.is_zero():
            out = nf_div(out, other)
    return out


class TestFieldLaws:
    @settings(max_examples=120, deadline=None)
    @given(exprs(), exprs(), exprs())
    def test_ring_laws(self, a, b, c):
        assert nf_eq(nf_add(a, b), nf_add(b, a))
        assert nf_eq(nf_mul(a, b), nf_mul(b, a))
        assert nf_eq(nf_add(nf_add(a, b), c), nf_add(a, nf_add(b, c)))
        assert nf_eq(nf_mul(nf_mul(a, b), c), nf_mul(a, nf_mul(b, c)))
        assert nf_eq(nf_mul(a, nf_add(b, c)), nf_add(nf_mul(a, b), nf_mul(a, c)))

    @settings(max_examples=120, deadline=None)
    @given(exprs())
    def test_identities_and_inverses(self, a):
        assert nf_eq(nf_add(a, ZERO), a)
        assert nf_eq(nf_mul(a, ONE), a)
        assert nf_add(a, nf_neg(a)).is_zero()
        if not a.is_zero():
            assert nf_eq(nf_mul(a, nf_div(ONE, a)), ONE)

    def test_half_plus_half(self):
        half = nf_div(ALPHA, q(2))
        assert nf_eq(nf_add(half, half), ALPHA)

    def test_difference_of_squares(self):
        lhs = nf_mul(nf_add(ALPHA, ONE), nf_sub(ALPHA, ONE))
        assert nf_eq(lhs, nf_sub(ALPHA2, ONE))

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            nf_div(ONE, ZERO)


class TestPow:
    def test_integer_exponents(self):
        assert nf_eq(nf_pow(nf_add(ALPHA, BETA), q(0)), ONE)
        assert nf_eq(nf_pow(ALPHA, q(3)), nf_mul(ALPHA2, ALPHA))

    def test_alpha_roots(self):
        r = nf_pow(ALPHA, q(1, 2))
        assert nf_eq(nf_mul(r, r), ALPHA)
        assert nf_eq(nf_pow(nf_pow(ALPHA, q(1, 3)), q(3)), ALPHA)

    def test_two_to_omega(self):
        assert nf_eq(nf_pow(q(2), field.OMEGA_NF), X2W)
        assert nf_eq(nf_pow(q(4), field.OMEGA_NF), nf_mul(X2W, X2W))

    def test_two_to_alpha(self):
        assert nf_eq(nf_pow(q(2), ALPHA), nf_div(X2W, q(2)))

    def test_unsupported(self):
        with pytest.raises(UnsupportedPowerPair):
            nf_pow(BETA, q(1, 2))
        with pytest.raises(UnsupportedPowerPair):
            nf_pow(q(3), field.OMEGA_NF)


class TestComparison:
    def test_trivial(self):
        assert nf_cmp(ALPHA, ALPHA).kind == EQUAL
        big = nf_add(nf_mul(q(2), ALPHA2), ONE)
        assert nf_cmp(big, nf_mul(q(2), ALPHA2)).kind == GREATER

    def test_alpha_below_beta(self):
        assert nf_cmp(ALPHA, BETA).kind == LESS
        assert nf_cmp(ALPHA2, nf_mul(ALPHA, BETA)).kind == LESS

    def test_documented_unknowns(self):
        c = nf_cmp(BETA, X2W)
        assert c.kind == UNKNOWN and "beta vs 2^w" in c.reason
        c = nf_cmp(ALPHA2, BETA)
        assert c.kind == UNKNOWN and "alpha^2 vs beta" in c.reason
        assert nf_cmp(BETH1, nf_mul(ALPHA, BETA)).kind == UNKNOWN

    def test_x_dominates_alpha_powers(self):
        assert nf_cmp(X2W, nf_pow(ALPHA, q(100))).kind == GREATER
        assert nf_cmp(omega_power(o.OMEGA), nf_pow(ALPHA, q(50))).kind == GREATER

    def test_omega_powers_by_exponent(self):
        w_w = omega_power(o.OMEGA)
        w_w1 = omega_power(o.cantor_add(o.OMEGA, o.ONE))
        assert nf_cmp(w_w, w_w1).kind == LESS

    def test_declared_order_upgrades(self):
        assert nf_cmp(ALPHA2, BETA, DOM_TABLE).kind == LESS
        assert nf_cmp(nf_pow(ALPHA, q(7)), BETA, DOM_TABLE).kind == LESS

    def test_declared_inconsistency_rejected(self):
        with pytest.raises(InconsistentOrder):
            AxiomTable().with_order(Monomial(beta=1), Monomial(alpha=F(1)))

    def test_reversal_consistency(self, rng):
        for _ in range(150):
            a, b = random_numexpr(rng), random_numexpr(rng)
            ab, ba = nf_cmp(a, b), nf_cmp(b, a)
            flip = {LESS: GREATER, GREATER: LESS, EQUAL: EQUAL, UNKNOWN: UNKNOWN}
            assert ba.kind == flip[ab.kind]

    def test_additive_consistency(self, rng):
        for _ in range(150):
            a, b, c = (random_numexpr(rng) for _ in range(3))
            first = nf_cmp(a, b)
            if first.kind in (LESS, GREATER, EQUAL):
                shifted = nf_cmp(nf_add(a, c), nf_add(b, c))
                assert shifted.kind == first.kind

    def test_multiplicative_consistency(self, rng):
        for _ in range(150):
            a, b = random_numexpr(rng), random_numexpr(rng)
            c = rng.choice([ALPHA, BETA, q(3), X2W, nf_mul(ALPHA, BETA)])
            first = nf_cmp(a, b)
            if first.kind not in (LESS, GREATER):
                continue
            scaled = nf_cmp(nf_mul(a, c), nf_mul(b, c))
            if scaled.kind in (LESS, GREATER):
                assert scaled.kind == first.kind


class TestStandardPart:
    def test_leading_quotient(self):
        rat = nf_div(nf_add(nf_mul(q(2), ALPHA2), ONE), ALPHA2)
        st_ = standard_part(rat)
        assert (st_.kind, st_.value) == (field.FINITE, F(2))

    def test_constant_and_infinitesimal(self):
        assert standard_part(q(5)).value == F(5)
        assert standard_part(nf_div(ONE, ALPHA)).value == F(0)

    def test_unbounded(self):
        assert standard_part(ALPHA).kind == field.PLUS_INF
        assert standard_part(nf_neg(ALPHA)).kind == field.MINUS_INF

    def test_unknown_ratio(self):
        assert standard_part(nf_div(ALPHA, BETA)).kind == UNKNOWN
        assert standard_part(nf_div(ALPHA, BETA), DOM_TABLE).value == F(0)

    def test_infinitesimal_perturbation(self, rng):
        for k in (1, 2, 5):
            eps = nf_div(ONE, nf_pow(ALPHA, q(k)))
            base = nf_div(nf_add(nf_mul(q(3), ALPHA), q(7)), ALPHA)
            assert standard_part(nf_add(base, eps)).value == F(3)
            assert standard_part(nf_sub(base, eps)).value == F(3)


class TestGammaMeasure:
    def test_half(self):
        assert gamma_measure(nf_div(BETA, q(2)), BETA).value == F(1, 2)

    def test_dominating_numerator(self):
        big = nf_add(nf_mul(q(2), nf_mul(ALPHA, BETA)), ONE)
        assert gamma_measure(big, BETA).kind == field.PLUS_INF

    def test_alpha_vs_beta_default_unknown(self):
        assert gamma_measure(ALPHA, BETA).kind == UNKNOWN
        assert gamma_measure(ALPHA, BETA, DOM_TABLE).value == F(0)

    def test_gamma_positivity_required(self):
        with pytest.raises(NonPositiveGamma):
            gamma_measure(ALPHA, nf_neg(BETA))
        with pytest.raises(NonPositiveGamma):
            gamma_measure(ALPHA, ZERO)

    def test_finitely_additive(self):
        a = nf_div(BETA, q(4))
        b = nf_div(BETA, q(2))
        lhs = gamma_measure(nf_add(a, b), BETA)
        assert lhs.value == gamma_measure(a, BETA).value + gamma_measure(b, BETA).value


class TestEmbed:
    def test_zero_and_retagging(self):
        assert embed(o.ZERO).is_zero()
        got = embed(o.cantor_add(o.cantor_mul(o.OMEGA, o.Ord.from_int(2)), o.ONE))
        # w*2 + 1 expands through w = alpha + 1.
        assert nf_eq(got, nf_add(nf_mul(q(2), ALPHA), q(3)))

    def test_homomorphism(self, rng):
        for _ in range(500):
            a, b = random_ord(rng), random_ord(rng)
            assert nf_eq(embed(o.natural_add(a, b)), nf_add(embed(a), embed(b)))
            assert nf_eq(embed(o.natural_mul(a, b)), nf_mul(embed(a), embed(b)))

    def test_order_embedding(self, rng):
        for _ in range(300):
            a, b = random_ord(rng), random_ord(rng)
            c = o.ord_cmp(a, b)
            got = nf_cmp(embed(a), embed(b))
            assert got.kind == {-1: LESS, 0: EQUAL, 1: GREATER}[c]

    def test_unembed_roundtrip(self, rng):
        for _ in range(300):
            g = random_ord(rng)
            assert unembed(embed(g)) == g
        assert unembed(BETA) is None
        assert unembed(nf_div(ALPHA, q(2))) is None

    def test_omega_power_via_pow(self, rng):
        for _ in range(120):
            g = random_ord(rng)
            want = embed(o.ord_exp(o.OMEGA, g))
            got = nf_pow(field.OMEGA_NF, embed(g))
            assert nf_eq(got, want)

    def test_cantor_power_below_natural_power(self, rng):
        # Iterated ordinal power is dominated by the field power.
        for _ in range(80):
            b = random_ord(rng, depth=1)
            if o.ord_cmp(b, o.ONE) <= 0:
                continue
            n = rng.randint(1, 4)
            lhs = embed(o.ord_exp(b, o.Ord.from_int(n)))
            rhs = nf_pow(embed(b), q(n))
            assert nf_cmp(lhs, rhs).kind in (LESS, EQUAL)
        # 2^<w> = w lands strictly below the field power 2^w = X.
        lhs = embed(o.ord_exp(o.Ord.from_int(2), o.OMEGA))
        rhs = nf_pow(q(2), embed(o.OMEGA))
        assert nf_cmp(lhs, rhs).kind == LESS


class TestJsonEncoding:
    def test_shape(self):
        x = nf_div(nf_add(nf_mul(q(2), ALPHA2), ONE), nf_add(BETA, ONE))
        data = field.numexpr_to_json(x)
        assert data["num"] == [["2", "alpha^2"], ["1", "1"]]
        assert data["den"] == [["1", "beta"], ["1", "1"]]


class TestBbMode:
    def test_rewrite(self):
        t = AxiomTable(bb_mode=True)
        lhs = apply_bb(BETH1, t)
        assert nf_eq(lhs, nf_add(BETA, X2W))
        beta_id = apply_bb(nf_sub(BETH1, X2W), t)
        assert nf_eq(beta_id, BETA)

    def test_unit_interval_identity(self):
        t = AxiomTable(bb_mode=True)
        lhs = apply_bb(nf_add(nf_sub(BETH1, X2W), ONE), t)
        assert nf_eq(lhs, nf_add(BETA, ONE))

    def test_off_by_default(self):
        assert not nf_eq(apply_bb(BETH1, AxiomTable()), nf_add(BETA, X2W))
