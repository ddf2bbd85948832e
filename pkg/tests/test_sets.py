"""Set DSL: compilation, numerosities, subset certification, measures."""

from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest

from numerosity import chains, field
from numerosity.chains import Eventually, cf_compare, cf_eval, chain_card, enumerate_count
from numerosity.field import (
    ALPHA,
    BETA,
    GREATER,
    LESS,
    ONE,
    UNKNOWN,
    X2W,
    from_rational,
    nf_add,
    nf_cmp,
    nf_eq,
    nf_mul,
    nf_pow,
)
from numerosity.sets import (
    Diff,
    FinMapsInto,
    FinSet,
    Inter,
    Mod,
    NatAll,
    NatPos,
    PfinN,
    Pow,
    Prod,
    QAll,
    QInterval,
    QPos,
    RAll,
    RInterval,
    RPos,
    Shift,
    SubsetNotCertified,
    Uncompilable,
    Union_,
    UnitInterval01,
    YES,
    NO,
    UNDECIDED,
    counting_fn,
    disjoint_certified,
    measure,
    num,
    psi_value,
    subset_certified,
)


def q(n, d=1):
    return from_rational(F(n, d))


class TestCountingFns:
    def test_mod_form(self):
        cf = counting_fn(Mod(3, 1))
        assert cf.terms == ((F(1), F(1), 0, 0),) or str(cf) == "1/3*n"
        assert cf.m0 == 3
        assert cf_eval(cf, 3) == 46656 // 3

    def test_mod_threshold_computed(self):
        assert counting_fn(Mod(4, 0)).m0 == 2
        assert counting_fn(Mod(5, 0)).m0 == 5

    def test_pow_threshold(self):
        assert counting_fn(Pow(2)).m0 == 2
        assert counting_fn(Pow(3)).m0 == 3
        assert counting_fn(Pow(4)).m0 == 4

    def test_q_interval(self):
        cf = counting_fn(QInterval(F(0), F(1)))
        assert cf.m0 == 1
        assert cf_eval(cf, 2) == 4

    def test_product(self):
        cf = counting_fn(Prod(Mod(2, 0), Mod(2, 0)))
        assert cf_eval(cf, 2) == 4

    def test_uncompilable_nodes(self):
        for e in (QPos(), QAll(), RPos(), RAll(), UnitInterval01()):
            with pytest.raises(Uncompilable):
                counting_fn(e)

    def test_diff_requires_certificate(self):
        with pytest.raises(SubsetNotCertified):
            Diff(Mod(2, 0), Pow(2))

    def test_crt_intersection(self):
        cf = counting_fn(Inter(Mod(2, 0), Mod(3, 0)))
        assert cf_eval(cf, 3) == 46656 // 6
        empty = counting_fn(Inter(Mod(2, 0), Mod(2, 1)))
        assert empty.is_zero()

    def test_union_inclusion_exclusion(self):
        cf = counting_fn(Union_(Mod(2, 0), Mod(3, 0)))
        want = 46656 // 2 + 46656 // 3 - 46656 // 6
        assert cf_eval(cf, 3) == want


class TestOracleAgreement:
    CASES = [
        NatAll(),
        NatPos(),
        FinSet(frozenset({1, 2, 3})),
        Mod(2, 0),
        Mod(2, 1),
        Mod(3, 1),
        Mod(5, 2),
        Pow(2),
        Pow(3),
        Union_(Mod(2, 0), Mod(2, 1)),
        Union_(Mod(2, 0), Mod(3, 1)),
        Inter(Mod(2, 0), Mod(3, 0)),
        Diff(NatPos(), Mod(2, 0)),
        Diff(Mod(2, 0), Mod(4, 0)),
        Prod(Mod(2, 0), Mod(2, 0)),
        Prod(NatPos(), Pow(2)),
        PfinN(),
        FinMapsInto(2, NatPos()),
        FinMapsInto(4, FinSet(frozenset({1, 2}))),
    ]

    @pytest.mark.parametrize("e", CASES, ids=str)
    def test_compiled_count_matches_enumeration(self, e):
        cf = counting_fn(e)
        for m in (2, 3):
            if m < cf.m0:
                continue
            assert cf_eval(cf, m) == enumerate_count(e, m), f"{e} at m={m}"

    def test_spec_enumeration_values(self):
        assert enumerate_count(Mod(2, 0), 2) == 2
        assert enumerate_count(Pow(2), 3) == 216
        assert enumerate_count(FinSet(frozenset({1, 2, 3})), 2) == 3

    def test_pfin_matches_literal_powerset(self):
        n = chain_card(2)
        ground = list(range(n + 1))
        literal = sum(
            1 for r in range(len(ground) + 1) for _ in itertools.combinations(ground, r)
        )
        assert enumerate_count(PfinN(), 2) == literal == 32

    def test_rational_grid_enumeration(self):
        cf = counting_fn(QInterval(F(0), F(1)))
        assert enumerate_count(QInterval(F(0), F(1)), 2) == cf_eval(cf, 2) == 4
        assert enumerate_count(QInterval(F(-1, 2), F(3, 4)), 2) == 5


class TestNumerosities:
    def test_congruence_classes(self):
        for p in (2, 3, 5):
            for i in range(p):
                want = field.nf_div(ALPHA, q(p))
                assert nf_eq(num(Mod(p, i)), want)

    def test_roots(self):
        for p in (2, 3):
            assert nf_eq(num(Pow(p)), nf_pow(ALPHA, q(1, p)))

    def test_rational_sets(self):
        assert nf_eq(num(QInterval(F(0), F(1))), ALPHA)
        assert nf_eq(num(QPos()), nf_mul(ALPHA, ALPHA))
        assert nf_eq(num(QAll()), nf_add(nf_mul(q(2), nf_mul(ALPHA, ALPHA)), ONE))

    def test_real_sets(self):
        assert nf_eq(num(RInterval(F(1, 4), F(3, 4))), field.nf_div(BETA, q(2)))
        assert nf_eq(num(RPos()), nf_mul(ALPHA, BETA))
        assert nf_eq(num(RAll()), nf_add(nf_mul(q(2), nf_mul(ALPHA, BETA)), ONE))
        assert nf_eq(num(UnitInterval01()), nf_add(BETA, ONE))

    def test_interval_scaling(self):
        for p, qq in [(F(0), F(1)), (F(-1), F(2)), (F(1, 3), F(5, 3))]:
            want = nf_mul(from_rational(qq - p), BETA)
            assert nf_eq(num(RInterval(p, qq)), want)
            want_q = nf_mul(from_rational(qq - p), ALPHA)
            assert nf_eq(num(QInterval(p, qq)), want_q)

    def test_shift_invariance(self):
        for e in [
            QInterval(F(0), F(1)),
            RInterval(F(-1, 2), F(1, 2)),
            FinSet(frozenset({1, 5})),
            Union_(RInterval(F(0), F(1)), RInterval(F(2), F(3))),
        ]:
            if isinstance(e, FinSet):
                continue
            assert nf_eq(num(Shift(F(7, 2), e)), num(e))

    def test_empty_set_and_null_principle(self):
        assert num(FinSet(frozenset())).is_zero()
        for e in [Mod(2, 0), QInterval(F(0), F(1)), PfinN(), RAll()]:
            assert nf_cmp(num(e), field.ZERO).kind == GREATER

    def test_union_additivity(self):
        a, b = Mod(2, 0), Mod(2, 1)
        assert nf_eq(num(Union_(a, b)), nf_add(num(a), num(b)))
        ia, ib = RInterval(F(0), F(1)), RInterval(F(2), F(3))
        assert nf_eq(num(Union_(ia, ib)), nf_add(num(ia), num(ib)))

    def test_product_rule(self):
        a, b = Mod(2, 0), QInterval(F(0), F(1))
        assert nf_eq(num(Prod(a, b)), nf_mul(num(a), num(b)))
        unit = Prod(FinSet(frozenset({7})), b)
        assert nf_eq(num(unit), num(b))

    def test_powerset_and_maps(self):
        assert nf_eq(num(PfinN()), X2W)
        assert nf_eq(num(FinMapsInto(2, NatAll())), X2W)
        assert nf_eq(num(FinMapsInto(2, NatPos())), field.nf_div(X2W, q(2)))
        assert nf_eq(num(FinMapsInto(4, FinSet(frozenset({1, 2})))), q(16))

    def test_euclid_on_certified_subsets(self):
        cases = [
            (Mod(4, 0), Mod(2, 0)),
            (QInterval(F(0), F(1)), QInterval(F(0), F(2))),
            (RInterval(F(0), F(1)), RInterval(F(-1), F(2))),
            (Diff(Mod(2, 0), Mod(4, 0)), Mod(2, 0)),
        ]
        for small, large in cases:
            assert subset_certified(small, large) == YES
            assert nf_cmp(num(small), num(large)).kind == LESS


class TestSubsets:
    def test_examples(self):
        assert subset_certified(Mod(4, 0), Mod(2, 0)) == YES
        assert subset_certified(QInterval(F(0), F(1)), QInterval(F(0), F(2))) == YES
        assert subset_certified(Pow(2), Mod(2, 0)) == UNDECIDED

    def test_no_cases(self):
        assert subset_certified(Mod(2, 0), Mod(4, 0)) == NO
        assert subset_certified(QInterval(F(0), F(2)), QInterval(F(0), F(1))) == NO
        assert subset_certified(FinSet(frozenset({0})), NatPos()) == NO

    def test_disjointness(self):
        assert disjoint_certified(Mod(2, 0), Mod(2, 1)) == YES
        assert disjoint_certified(Mod(2, 0), Mod(3, 0)) == NO
        assert disjoint_certified(RInterval(F(0), F(1)), RInterval(F(1), F(2))) == YES


class TestMeasure:
    def test_lebesgue_on_intervals(self):
        st = measure(RInterval(F(1, 4), F(3, 4)), BETA)
        assert st.value == F(1, 2)

    def test_lebesgue_on_disjoint_unions(self):
        e = Union_(RInterval(F(0), F(1, 4)), RInterval(F(1, 2), F(3, 4)))
        assert measure(e, BETA).value == F(1, 2)

    def test_two_dimensional_box(self):
        e = Prod(RInterval(F(0), F(1)), RInterval(F(0), F(1, 2)))
        assert measure(e, nf_mul(BETA, BETA)).value == F(1, 2)

    def test_rationals_are_beta_null_by_declaration(self):
        st = measure(QInterval(F(0), F(1)), BETA)
        assert st.kind == UNKNOWN
        table = field.AxiomTable().with_alpha_dominated_by(field.Monomial(beta=1))
        st = measure(QInterval(F(0), F(1)), BETA, table)
        assert st.value == F(0)

    def test_truncated_superadditivity(self):
        whole = measure(RInterval(F(0), F(1)), BETA).value
        for n_max in (5, 20):
            total = F(0)
            for k in range(n_max + 1):
                piece = RInterval(F(1, 2 ** (k + 1)), F(1, 2**k))
                total += measure(piece, BETA).value
            assert total == 1 - F(1, 2 ** (n_max + 1))
            assert whole >= total


class TestPsi:
    def test_binary_expansion_values(self):
        assert psi_value({0, 2}) == F(5, 8)
        assert psi_value(set()) == 0
        assert psi_value({0}) == F(1, 2)

    def test_matches_direct_summation(self):
        import random

        rng = random.Random(5)
        for _ in range(50):
            s = {rng.randint(0, 20) for _ in range(rng.randint(0, 8))}
            direct = sum(F(1, 2 ** (n + 1)) for n in s)
            assert psi_value(s) == direct


class TestChainVsLimitConsistency:
    def test_limit_of_compiled_equals_num(self):
        cases = [
            NatAll(),
            Mod(3, 2),
            Pow(2),
            QInterval(F(-1), F(1)),
            RInterval(F(0), F(2)),
            PfinN(),
            Prod(Mod(2, 0), QInterval(F(0), F(1))),
        ]
        for e in cases:
            assert nf_eq(chains.lambda_limit(counting_fn(e)), num(e))

    def test_eventual_dominance_transfers(self):
        f = counting_fn(Mod(2, 0))
        g = counting_fn(Mod(3, 0))
        assert cf_compare(g, f).kind == Eventually.LESS
        assert nf_cmp(num(Mod(3, 0)), num(Mod(2, 0))).kind == LESS
