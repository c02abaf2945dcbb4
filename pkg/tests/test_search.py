"""Exhaustive extremal searches and their frozen small-parameter answers."""

from __future__ import annotations

import math

import pytest

import oracles
from tracecodes import bounds, search, verify
from tracecodes.search import SearchProblem, max_code_search


class TestProblemValidation:
    def test_rejects_nonsense(self):
        with pytest.raises(ValueError):
            SearchProblem("XYZ", N=3, t=2)
        with pytest.raises(ValueError):
            SearchProblem("FP", N=0, t=2)
        with pytest.raises(ValueError):
            SearchProblem("FP", N=3, t=0)
        with pytest.raises(ValueError):
            SearchProblem("CFF", N=3, t=2, q=3)
        with pytest.raises(ValueError):
            SearchProblem("FP", N=3, t=2, mode="decide")  # missing goal
        with pytest.raises(ValueError):
            SearchProblem("FP", N=3, t=2, goal=4)  # goal without decide

    def test_enumeration_cap(self):
        with pytest.raises(ValueError):
            max_code_search(SearchProblem("FP", N=30, t=2, q=2))


class TestMaximumSizes:
    def test_two_coordinates(self):
        res = max_code_search(SearchProblem("FP", N=2, t=2, q=2))
        assert res.optimum == 2
        assert res.complete
        assert res.witness.words == ((0, 0), (0, 1))
        assert verify.check_frameproof(res.witness, 2).holds
        assert res.nodes == 5

    def test_three_coordinates_even_weight_code(self):
        res = max_code_search(SearchProblem("FP", N=3, t=2, q=2))
        # The even-weight code pairs agree somewhere on every coordinate
        # pattern, so four words fit at length three for pairs of traitors.
        assert res.optimum == 4
        assert res.witness.words == ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))
        assert verify.check_frameproof(res.witness, 2).holds
        assert res.nodes == 20

    def test_matches_unnormalized_oracle(self):
        # The production search fixes the all-zero first word by relabeling;
        # the oracle DFS does no such thing and must land on the same sizes.
        assert oracles.max_code_size(2, 2, lambda w: oracles.frameproof_holds(w, 2)) == 2
        assert oracles.max_code_size(3, 2, lambda w: oracles.frameproof_holds(w, 2)) == 4
        assert oracles.max_code_size(3, 2, lambda w: oracles.ipp_holds(w, 2, 2)) == 2
        assert oracles.max_code_size(3, 2, lambda w: oracles.ta_holds(w, 2)) == 2

    def test_three_traitors(self):
        res = max_code_search(SearchProblem("FP", N=4, t=3, q=2))
        assert res.optimum == 4
        assert res.complete
        assert res.nodes == 193
        assert verify.check_frameproof(res.witness, 3).holds

        res = max_code_search(SearchProblem("FP", N=5, t=3, q=2))
        assert res.optimum == 5
        assert res.complete
        assert res.nodes == 2671

    def test_identifiable_and_traceable_maxima(self):
        ipp = max_code_search(SearchProblem("IPP", N=3, t=2, q=2))
        assert ipp.optimum == 2
        assert ipp.nodes == 27
        assert verify.check_ipp(ipp.witness, 2).holds
        ta = max_code_search(SearchProblem("TA", N=3, t=2, q=2))
        assert ta.optimum == 2
        assert verify.check_ta(ta.witness, 2).holds

    def test_hierarchy_of_maxima(self):
        fp = max_code_search(SearchProblem("FP", N=3, t=2, q=2)).optimum
        ipp = max_code_search(SearchProblem("IPP", N=3, t=2, q=2)).optimum
        ta = max_code_search(SearchProblem("TA", N=3, t=2, q=2)).optimum
        assert fp >= ipp >= ta

    def test_maxima_respect_closed_form_caps(self):
        for N, t, got in ((2, 2, 2), (3, 2, 4), (4, 3, 4), (5, 3, 5)):
            assert got <= bounds.fp_bound(N, 2, t).value
        balanced, _, _ = bounds.ipp_bound(3, 2, 2)
        assert 2 <= balanced.value

    def test_sperner_family(self):
        res = max_code_search(SearchProblem("CFF", N=4, t=1))
        assert res.optimum == math.comb(4, 2)
        assert res.nodes == 374
        fam = res.witness
        assert fam.size == 6
        assert all(fam.member_size(i) == 2 for i in range(6))
        assert verify.check_cff(fam, 1).holds

    def test_determinism(self):
        a = max_code_search(SearchProblem("FP", N=4, t=3, q=2))
        b = max_code_search(SearchProblem("FP", N=4, t=3, q=2))
        assert (a.optimum, a.nodes, a.witness) == (b.optimum, b.nodes, b.witness)


class TestBudgets:
    def test_truncated_maximize_is_flagged(self):
        res = max_code_search(SearchProblem("FP", N=4, t=3, q=2), budget=50)
        assert not res.complete
        assert res.budget == 50
        assert res.nodes == 51  # the stopping probe is counted
        assert res.optimum <= 4
        assert verify.check_frameproof(res.witness, 3).holds

    def test_truncated_decision_is_none(self):
        res = max_code_search(
            SearchProblem("FP", N=5, t=3, q=2, mode="decide", goal=6), budget=100
        )
        assert res.decided is None
        assert not res.complete
        assert res.witness is None

    def test_budget_does_not_change_the_answer(self):
        free = max_code_search(SearchProblem("FP", N=3, t=2, q=2))
        roomy = max_code_search(SearchProblem("FP", N=3, t=2, q=2), budget=10**6)
        assert roomy.complete
        assert (free.optimum, free.nodes) == (roomy.optimum, roomy.nodes)


class TestDecisions:
    def test_positive_decision_comes_with_witness(self):
        res = max_code_search(
            SearchProblem("FP", N=3, t=2, q=2, mode="decide", goal=4)
        )
        assert res.decided is True
        assert res.witness.size == 4
        assert verify.check_frameproof(res.witness, 2).holds

    def test_negative_decision_has_no_witness(self):
        res = max_code_search(
            SearchProblem("FP", N=2, t=2, q=2, mode="decide", goal=3)
        )
        assert res.decided is False
        assert res.complete
        assert res.witness is None

    def test_trivial_goal(self):
        res = max_code_search(
            SearchProblem("FP", N=2, t=2, q=2, mode="decide", goal=1)
        )
        assert res.decided is True


class TestUpperBoundRegion:
    def test_guaranteed_band_for_three_traitors(self):
        report = search.verify_upper_bound_region(3, [4, 5])
        assert report.all_confirmed
        by_N = {e.N: e for e in report.entries}
        assert by_N[4].in_window and by_N[5].in_window
        assert by_N[4].nodes == 189
        assert by_N[5].nodes == 2665
        assert by_N[4].witness is None

    def test_pair_coalitions_break_at_length_three(self):
        # For two traitors the length-N cap does not hold at N=3: the
        # even-weight code packs four words.  The run reports the
        # counterexample instead of a confirmation.
        report = search.verify_upper_bound_region(2, [3])
        entry = report.entries[0]
        assert entry.confirmed is False
        assert not entry.in_window
        assert not report.all_confirmed
        assert entry.witness.size == 4
        assert verify.check_frameproof(entry.witness, 2).holds

    def test_budget_exhaustion_is_per_length(self):
        report = search.verify_upper_bound_region(3, [4, 5], budget=200)
        by_N = {e.N: e for e in report.entries}
        assert by_N[4].confirmed is True  # finishes in 189 nodes
        assert by_N[5].confirmed is None  # needs 2665


class TestMinimumLengths:
    def test_smallest_useful_family_length(self):
        res = search.min_length_search(1, "CFF")
        assert res.value == 4
        assert res.complete
        assert [(p.N, p.decided, p.nodes) for p in res.probes] == [
            (1, False, 0),
            (2, False, 3),
            (3, False, 30),
            (4, True, 211),
        ]
        fam = res.witness
        assert fam.size == 5
        assert verify.check_cff(fam, 1).holds
        assert all(fam.member_size(i) <= 2 for i in range(fam.size))

    def test_code_length_beyond_degenerate_line(self):
        res = search.min_length_search(2, "FP", start_length=2)
        assert res.value == 3
        assert [(p.N, p.decided) for p in res.probes] == [(2, False), (3, True)]
        assert res.witness.words == ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))

    def test_degenerate_literal_answer(self):
        res = search.min_length_search(2, "FP")
        assert res.value == 1
        assert res.probes[0].decided is True

    def test_budget_gives_lower_bound(self):
        res = search.min_length_search(2, "CFF", budget=1000)
        assert res.value is None
        assert not res.complete
        assert res.lower_bound == 5
        assert res.probes[-1] == search.LengthProbe(N=5, decided=None, nodes=1001)

    def test_errors(self):
        with pytest.raises(ValueError):
            search.min_length_search(0, "CFF")
        with pytest.raises(ValueError):
            search.min_length_search(2, "TA")

    def test_exhausting_the_window_reports_a_bound(self):
        res = search.min_length_search(2, "CFF", start_length=1, max_length=4)
        assert res.value is None
        assert res.lower_bound == 5
        assert all(p.decided is False for p in res.probes)


class TestSandwich:
    def test_budgeted_run_shapes(self):
        report = search.min_length_sandwich(3, budget=2000)
        assert report.t == 3
        assert report.family_lower.value == 4  # pairs-of-others answer
        assert report.code.value is None
        assert report.code.lower_bound == 5
        assert report.family_upper.value is None
        assert report.consistent is None

    def test_requires_three_traitors(self):
        with pytest.raises(ValueError):
            search.min_length_sandwich(2)
