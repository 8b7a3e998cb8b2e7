import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beliefhc.belief import (
    Frame,
    MassFunction,
    conjunctive_combine,
    dempster_combine,
    make_simple_mass,
    pignistic,
    vacuous_mass,
)
from beliefhc.exceptions import BeliefHCError, FrameMismatch, SumExceedsOne, TotalConflict

from conftest import mass_functions, mass_pairs
import oracles

AB = Frame(["a", "b"])


def example_pair():
    m1 = make_simple_mass(AB, {"a": 0.6})
    m2 = make_simple_mass(AB, {"b": 0.5})
    return m1, m2


class TestFrame:
    def test_encode_decode(self):
        f = Frame(["x", "y", "z"])
        assert f.encode(["x", "z"]) == 0b101
        assert f.decode(0b110) == {"y", "z"}
        assert f.full == 0b111

    def test_duplicates_rejected(self):
        with pytest.raises(BeliefHCError):
            Frame(["a", "a"])

    def test_unknown_element(self):
        with pytest.raises(BeliefHCError):
            AB.encode(["c"])


class TestMassFunction:
    def test_rejects_bad_sum(self):
        with pytest.raises(BeliefHCError, match="sum"):
            MassFunction(AB, {0b01: 0.5})

    def test_zero_entries_pruned(self):
        m = MassFunction(AB, {0b01: 1.0, 0b10: 0.0})
        assert dict(m.focal) == {0b01: 1.0}

    def test_subset_outside_frame(self):
        with pytest.raises(BeliefHCError):
            MassFunction(AB, {0b100: 1.0})

    def test_json_round_trip(self):
        m1, m2 = example_pair()
        m = conjunctive_combine(m1, m2)
        obj = json.loads(m.to_json())
        assert obj["frame"] == ["a", "b"]
        assert {"set": [], "mass": pytest.approx(0.3)} in obj["focal"]
        assert MassFunction.from_json(m.to_json()).isclose(m, 0)


class TestSimpleMass:
    def test_complement(self):
        m = make_simple_mass(AB, {"a": 0.6})
        assert m[["a"]] == pytest.approx(0.6)
        assert m.ignorance == pytest.approx(0.4)

    def test_certainty_on_one_element_frame(self):
        m = make_simple_mass(Frame(["a"]), {"a": 1.0})
        assert m[["a"]] == 1.0
        # {a} is the whole frame here, so nothing is left over
        assert len(m.focal) == 1

    def test_vacuous(self):
        m = make_simple_mass(Frame("abc"), {})
        assert m.is_vacuous()

    def test_sum_exceeds_one(self):
        with pytest.raises(SumExceedsOne):
            make_simple_mass(AB, {"a": 0.7, "b": 0.4})

    def test_tolerates_rounding(self):
        m = make_simple_mass(AB, {"a": 0.5, "b": 0.5 + 5e-10})
        assert m.ignorance == 0.0


class TestConjunctive:
    def test_vacuous_is_neutral(self):
        _, m2 = example_pair()
        assert conjunctive_combine(vacuous_mass(AB), m2).isclose(m2)

    def test_worked_example(self):
        m = conjunctive_combine(*example_pair())
        # hand enumeration of the four focal pairs
        assert m.conflict == pytest.approx(0.30, abs=1e-12)
        assert m[["a"]] == pytest.approx(0.30, abs=1e-12)
        assert m[["b"]] == pytest.approx(0.20, abs=1e-12)
        assert m.ignorance == pytest.approx(0.20, abs=1e-12)

    def test_total_conflict(self):
        m = conjunctive_combine(MassFunction(AB, {0b01: 1.0}), MassFunction(AB, {0b10: 1.0}))
        assert m.conflict == 1.0

    def test_frame_mismatch(self):
        with pytest.raises(FrameMismatch):
            conjunctive_combine(vacuous_mass(AB), vacuous_mass(Frame("abc")))

    @given(mass_pairs())
    def test_matches_dense_oracle(self, pair):
        m1, m2 = pair
        expected = oracles.conjunctive_dense(m1, m2)
        got = oracles.dense(conjunctive_combine(m1, m2))
        for s in expected:
            assert got[s] == pytest.approx(expected[s], abs=1e-9)

    @given(mass_pairs())
    def test_sums_to_one(self, pair):
        m = conjunctive_combine(*pair)
        assert sum(m.focal.values()) == pytest.approx(1.0, abs=1e-9)

    @given(st.integers(1, 5).flatmap(lambda k: st.tuples(*[mass_functions(frame=Frame("abcde"[:k]))] * 3)))
    def test_associative(self, triple):
        a, b, c = triple
        left = conjunctive_combine(conjunctive_combine(a, b), c)
        right = conjunctive_combine(a, conjunctive_combine(b, c))
        assert left.isclose(right, 1e-9)


class TestDempster:
    def test_worked_example(self):
        m = dempster_combine(*example_pair())
        assert m.conflict == 0.0
        assert m[["a"]] == pytest.approx(3 / 7, abs=1e-12)
        assert m[["b"]] == pytest.approx(2 / 7, abs=1e-12)
        assert m.ignorance == pytest.approx(2 / 7, abs=1e-12)

    def test_vacuous_is_neutral(self):
        m2 = make_simple_mass(Frame("abc"), {"a": 0.2, "c": 0.5})
        assert dempster_combine(vacuous_mass(m2.frame), m2).isclose(m2)

    def test_total_conflict_raises(self):
        with pytest.raises(TotalConflict):
            dempster_combine(MassFunction(AB, {0b01: 1.0}), MassFunction(AB, {0b10: 1.0}))

    @given(mass_pairs())
    def test_commutative(self, pair):
        m1, m2 = pair
        try:
            ab = dempster_combine(m1, m2)
        except TotalConflict:
            with pytest.raises(TotalConflict):
                dempster_combine(m2, m1)
            return
        assert ab.isclose(dempster_combine(m2, m1), 1e-12)


class TestPignistic:
    def test_uniform_from_vacuous(self):
        p = pignistic(vacuous_mass(Frame("abcd")))
        assert all(v == pytest.approx(0.25) for v in p.probabilities.values())

    def test_with_conflict(self):
        m = conjunctive_combine(*example_pair())
        p = pignistic(m)
        # (0.30 + 0.20/2) / (1 - 0.30)
        assert p["a"] == pytest.approx(0.4 / 0.7, abs=1e-12)
        assert p["b"] == pytest.approx(0.3 / 0.7, abs=1e-12)
        assert round(p["a"], 4) == 0.5714

    def test_certainty(self):
        p = pignistic(MassFunction(AB, {0b01: 1.0}))
        assert p["a"] == 1.0 and p["b"] == 0.0

    def test_subset_probability(self):
        p = pignistic(vacuous_mass(Frame("abcd")))
        assert p.prob("ab") == pytest.approx(0.5)

    def test_all_conflict_raises(self):
        with pytest.raises(TotalConflict):
            pignistic(MassFunction(AB, {0: 1.0}))

    @given(mass_functions(allow_empty=True))
    def test_matches_dense_oracle(self, m):
        if m.conflict >= 1 - 1e-12:
            return
        expected = oracles.betp_dense(m)
        p = pignistic(m)
        for e, v in expected.items():
            assert p[e] == pytest.approx(v, abs=1e-12)
