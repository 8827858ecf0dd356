from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovwires import Alphabet, automaton, normalize
from markovwires.analysis import (
    check_pf_hypotheses,
    deadlock_probability_series,
    deadlock_states,
    eating_state_count,
    evolve_distribution,
    reachable_part,
    subset_probability,
)
from markovwires.dsl import dining_initial, sofia_initial
from markovwires.errors import DimensionMismatch, NotClosed, NotMarkov, UnknownState
from markovwires.random_models import random_automaton

from .oracles import enumerate_paths

U = Alphabet.unit()
E = "eps"


def closed(states, moves):
    return automaton(states, U, U, [(s, E, E, t, w) for s, t, w in moves])


def identity(n):
    states = [str(i) for i in range(1, n + 1)]
    return closed(states, [(q, q, 1) for q in states])


@pytest.fixture(scope="module")
def df2(lib):
    return reachable_part(lib("DF2"), dining_initial(2))[0]


@pytest.fixture(scope="module")
def party(lib):
    return reachable_part(lib("Sofia3_2"), sofia_initial(3, 2))


# --- reachability ------------------------------------------------------------------


def test_df2_reachable(df2):
    assert set(df2.states) == {
        ("1", "1", "1", "1"), ("1", "3", "3", "2"), ("3", "2", "1", "3"), ("1", "1", "4", "2"),
        ("4", "2", "1", "1"), ("1", "3", "2", "1"), ("2", "1", "1", "3"), ("2", "3", "2", "3"),
    }


def test_party_reachable(party):
    sub, report = party
    assert len(sub.states) == 36 and report.transition_count == 141


def test_self_loop_only():
    q = closed(["1", "2"], [("1", "1", 1), ("2", "1", 1)])
    sub, report = reachable_part(q, "1")
    assert sub.states == ("1",) and report.transition_count == 1


def test_reachable_drops_interface_points():
    a = Alphabet.of("a")
    q = automaton(["1", "2"], a, a, [("1", "a", "a", "1", 1)], top={"x": "1", "z": "2"})
    sub, _ = reachable_part(q, "1")
    assert sub.top.domain == ("x",)


def test_reachable_unknown_initial(df2):
    with pytest.raises(UnknownState):
        reachable_part(df2, ("9", "9", "9", "9"))


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_reachable_idempotent(r):
    q = random_automaton(r, max_states=5, max_points=2)
    once, _ = reachable_part(q, q.states[0])
    twice, _ = reachable_part(once, q.states[0])
    assert once == twice


# --- deadlocks and hypotheses ----------------------------------------------------------


def test_df2_deadlock(df2):
    assert deadlock_states(df2) == (("2", "3", "2", "3"),)


def test_deadlock_needs_closed_markov(phil):
    with pytest.raises(NotClosed):
        deadlock_states(phil)
    with pytest.raises(NotMarkov):
        deadlock_states(closed(["1"], [("1", "1", 2)]))


def test_identity_all_deadlocks():
    assert deadlock_states(identity(3)) == ("1", "2", "3")


def test_df2_hypotheses(lib):
    v = check_pf_hypotheses(lib("DF2"), dining_initial(2)).pf_verdict
    assert (v.unique_reachable_deadlock, v.all_return_to_initial, v.all_have_self_loop) == (True, True, True)


def test_df3_hypotheses(lib):
    report = check_pf_hypotheses(lib("DF3"), dining_initial(3))
    assert report.pf_verdict.overall
    assert report.deadlocks == (("2", "3", "2", "3", "2", "3"),)


def test_two_reachable_deadlocks_fail_first_condition():
    both = normalize(closed(["1", "2", "3"], [("1", "1", 1), ("1", "2", 1), ("1", "3", 1),
                                              ("2", "2", 1), ("3", "3", 1)]))
    v = check_pf_hypotheses(both, "1").pf_verdict
    assert not v.unique_reachable_deadlock and not v.overall


def test_identity_counts_only_reachable_deadlocks():
    # from either state of the 2-state identity only that state is reachable
    report = check_pf_hypotheses(identity(2), "1")
    assert report.deadlocks == ("1",)
    assert report.pf_verdict.unique_reachable_deadlock


def test_chain_without_self_loops():
    cyc = closed(["1", "2"], [("1", "2", 1), ("2", "1", 1)])
    v = check_pf_hypotheses(cyc, "1").pf_verdict
    assert not v.all_have_self_loop and not v.overall


# --- distributions -------------------------------------------------------------------


def test_evolve_zero_steps(df2):
    x0 = {q: F(1, 8) for q in df2.states}
    assert evolve_distribution(df2, x0, 0) == x0


def test_evolve_df2(df2):
    x = evolve_distribution(df2, {dining_initial(2): 1}, 2)
    assert x[("2", "3", "2", "3")] == F(23, 48)


def test_evolve_dimension(df2):
    with pytest.raises(DimensionMismatch):
        evolve_distribution(df2, [1, 0], 1)


def test_evolve_matches_path_enumeration(df2):
    q0 = dining_initial(2)
    for k in range(4):
        assert evolve_distribution(df2, {q0: 1}, k) == enumerate_paths(df2, q0, k)


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(0, 6))
def test_mass_preserved(r, k):
    q = normalize(random_automaton(r, U, U, max_states=5))
    x0 = {s: F(1, len(q.states)) for s in q.states}
    assert sum(evolve_distribution(q, x0, k).values()) == 1
    xf = evolve_distribution(q, x0, k, mode="float")
    assert abs(sum(xf.values()) - 1) <= 1e-12 * max(k, 1)


def test_party_subsets(party):
    sub, _ = party
    q0 = sofia_initial(3, 2)
    eating = lambda q: any(q[i] == "3" for i in (0, 2, 4))  # noqa: E731
    assert subset_probability(sub, q0, eating, 1) == 0
    assert subset_probability(sub, q0, eating, 2) == F(19, 60)
    assert subset_probability(sub, q0, eating, 4) == F(49133, 108000)


def test_float_and_exact_agree(df2, party):
    for aut, q0 in ((df2, dining_initial(2)), (party[0], sofia_initial(3, 2))):
        exact = {q0: F(1)}
        flt = {q0: 1.0}
        for _ in range(100):
            exact = evolve_distribution(aut, exact, 1)
            flt = evolve_distribution(aut, flt, 1, mode="float")
            assert all(abs(float(exact.get(q, 0)) - flt.get(q, 0.0)) <= 1e-12 for q in aut.states)


# --- series ------------------------------------------------------------------------


def test_df2_series(df2):
    series = dict(deadlock_probability_series(df2, dining_initial(2), 4))
    assert (series[2], series[3], series[4]) == (F(23, 48), F(341, 576), F(4415, 6912))


def test_series_monotone_and_bounded(df2):
    values = [p for _, p in deadlock_probability_series(df2, dining_initial(2), 60)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert all(0 <= p <= 1 for p in values)


def test_all_deadlock_series_is_constant():
    assert [p for _, p in deadlock_probability_series(identity(3), "2", 5)] == [1] * 5


# --- eating states ----------------------------------------------------------------


def test_eating_count(party):
    assert eating_state_count(party[0]) == 12


def test_eating_count_empty():
    assert eating_state_count(automaton([], U, U)) == 0


def test_eating_exclusivity_enforced():
    q = automaton([("3", "1", "3", "1")], U, U)
    with pytest.raises(AssertionError):
        eating_state_count(q)
