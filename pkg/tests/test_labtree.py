"""Pivotal-tree validation, labels, comparison maps, counting axioms."""

from __future__ import annotations

import json

import pytest

from numerosity.labtree import (
    EMPTY,
    NotABijection,
    check_comparison_map,
    check_counting_axioms,
    counterexample_missing_membership,
    counterexample_noninjective,
    counterexample_unreachable,
    format_elem,
    format_instance,
    generate_set_pairs,
    label,
    label_family,
    parse_elem,
    parse_instance,
    preserves_labels,
    stable_count,
    standard_instance,
    preserves_relative_labels,
    validate_labeltree,
    validate_pivotal,
    UnknownElement,
)

TREE = standard_instance()
S = {a: frozenset([a]) for a in range(6)}
P45 = frozenset([4, 5])
S44 = frozenset([S[4]])
TOP = TREE.universe[-1]


class TestElements:
    def test_parse_format_roundtrip(self):
        for text in ["3", "{}", "{1,2}", "{{4},{4,5}}", "{0,{0},{1,2}}"]:
            assert format_elem(parse_elem(text)) == text

    def test_nested(self):
        assert parse_elem("{{4},{4,5}}") == frozenset([S[4], P45])


class TestStandardInstance:
    def test_pivotal_ok_both_modes(self):
        for mode in ("literal", "hereditary"):
            rep = validate_pivotal(TREE, mode)
            assert rep.ok, rep.violations

    def test_labeltree_ok(self):
        rep = validate_labeltree(TREE)
        assert rep.ok, rep.violations
        assert rep.details["pair_label_instances"] >= 2
        assert rep.details["kuratowski_instances"] >= 1

    def test_verbatim_labels(self):
        assert label(TREE, 3) == frozenset([3, EMPTY])
        want = frozenset([frozenset([1, 2]), S[1], S[2], 1, 2, EMPTY])
        assert label(TREE, frozenset([1, 2])) == want

    def test_label_idempotence_by_closure(self):
        for a in TREE.universe:
            lam = label(TREE, a)
            assert frozenset().union(*(label(TREE, x) for x in lam)) == lam

    def test_unknown_element(self):
        with pytest.raises(UnknownElement):
            label(TREE, 99)

    def test_stable_counts_are_cardinalities(self):
        for A in [frozenset(), frozenset([1]), frozenset([0, 3, S[2]]), frozenset(TREE.universe)]:
            assert stable_count(TREE, A) == len(A)

    def test_report_json_shape(self):
        data = json.loads(validate_pivotal(TREE).to_json())
        assert data["check"] == "pivotal"
        assert data["status"] == "ok"
        assert data["witnesses"] == []


class TestCounterexamples:
    def test_noninjective_rejected(self):
        rep = validate_pivotal(counterexample_noninjective())
        assert not rep.ok
        assert {v["rule"] for v in rep.violations} == {"successor-injective"}

    def test_unreachable_rejected(self):
        rep = validate_pivotal(counterexample_unreachable())
        assert not rep.ok
        assert {v["rule"] for v in rep.violations} == {"successor-reach"}

    def test_missing_membership_rejected(self):
        rep = validate_pivotal(counterexample_missing_membership())
        assert not rep.ok
        assert {v["rule"] for v in rep.violations} == {"membership-order"}

    def test_labeltree_propagates_pivotal_failure(self):
        rep = validate_labeltree(counterexample_noninjective())
        assert not rep.ok


class TestComparisonMaps:
    def test_identity(self):
        A = frozenset([1, 2, S[3]])
        assert check_comparison_map(TREE, A, A, {x: x for x in A})

    def test_label_preserving_block_swap(self):
        phi = {S44: P45}
        assert preserves_labels(TREE, phi)
        assert check_comparison_map(TREE, frozenset([S44]), frozenset([P45]), phi)

    def test_relative_label_preservation(self):
        A = frozenset([1, S[1]])
        B = frozenset([2, S[2]])
        phi = {1: 2, S[1]: S[2]}
        assert preserves_relative_labels(TREE, A, B, phi)
        assert check_comparison_map(TREE, A, B, phi)

    def test_early_to_late_fails_at_separating_cone(self):
        phi = {3: TOP}
        assert not check_comparison_map(
            TREE, frozenset([3]), frozenset([TOP]), phi, vertex=label(TREE, 3)
        )

    def test_not_a_bijection(self):
        with pytest.raises(NotABijection):
            check_comparison_map(TREE, frozenset([1, 2]), frozenset([3]), {1: 3, 2: 3})

    def test_hypotheses_imply_equality(self):
        # Any map satisfying either hypothesis passes the count check.
        for phi, A, B in [
            ({S44: P45}, frozenset([S44]), frozenset([P45])),
            ({1: 2, S[1]: S[2]}, frozenset([1, S[1]]), frozenset([2, S[2]])),
            ({0: 0, 5: 5}, frozenset([0, 5]), frozenset([0, 5])),
        ]:
            if preserves_labels(TREE, phi) or preserves_relative_labels(TREE, A, B, phi):
                assert check_comparison_map(TREE, A, B, phi)


class TestCountingAxioms:
    def test_axioms_hold_on_generated_pairs(self):
        pairs = generate_set_pairs(TREE, 60, seed=42)
        rep = check_counting_axioms(TREE, pairs)
        assert rep.ok, rep.violations
        checked = rep.details["checked"]
        assert checked["null"] >= 50
        assert checked["euclid"] >= 10
        assert checked["union"] >= 10
        assert checked["product"] >= 10
        assert checked["unit"] >= 5

    def test_euclid_strictness(self):
        pairs = [(frozenset([1]), frozenset([1, 2, S[1]]))]
        rep = check_counting_axioms(TREE, pairs)
        assert rep.ok, rep.violations


class TestLatticeStructure:
    def test_meet_trichotomy_via_labels(self):
        fam = label_family(TREE)
        empty_label = label(TREE, EMPTY)
        for lam in fam:
            for mu in fam:
                assert lam & mu in (lam, mu, empty_label)

    def test_containment_linearization(self):
        fam = sorted(label_family(TREE), key=len)
        for i, lam in enumerate(fam):
            for j in range(i + 1, len(fam)):
                assert not fam[j] < lam


class TestInstanceFiles:
    def test_roundtrip(self, tmp_path):
        text = format_instance(TREE)
        back = parse_instance(text)
        assert set(back.universe) == set(TREE.universe)
        assert back.le == TREE.le
        assert back.succ == TREE.succ
        rep = validate_pivotal(back)
        assert rep.ok

    def test_bad_directive(self):
        with pytest.raises(ValueError):
            parse_instance("frobnicate 1 2\n")

    def test_counterexample_through_file(self, tmp_path):
        text = format_instance(counterexample_noninjective())
        rep = validate_pivotal(parse_instance(text))
        assert {v["rule"] for v in rep.violations} == {"successor-injective"}
