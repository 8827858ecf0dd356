"""Reachability, deadlocks and transient distributions of closed Markov automata."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import WeightedAutomaton, _as_vector, is_markov, total_weights
from .errors import NotClosed, NotMarkov, UnknownState


@dataclass(frozen=True)
class PFVerdict:
    unique_reachable_deadlock: bool
    all_return_to_initial: bool
    all_have_self_loop: bool

    @property
    def overall(self) -> bool:
        return self.unique_reachable_deadlock and self.all_return_to_initial and self.all_have_self_loop


@dataclass
class AnalysisReport:
    initial: object
    reachable: tuple = ()
    transition_count: int = 0
    deadlocks: tuple = ()
    pf_verdict: PFVerdict | None = None
    series: list = field(default_factory=list)  # [(k, Fraction | float)]


def _successors(aut: WeightedAutomaton) -> dict:
    succ = {q: set() for q in aut.states}
    for s, _a, _b, t, _w in aut.transitions():
        succ[s].add(t)
    return succ


def _reach(succ: dict, start) -> set:
    seen = {start}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        for t in succ[s]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def reachable_part(aut: WeightedAutomaton, q0) -> tuple:
    """Restrict ``aut`` to the states reachable from ``q0``.

    Returns the restricted automaton and a report skeleton holding the
    reachable states and the number of stored transitions.
    """
    if q0 not in aut.state_index:
        raise UnknownState(f"unknown initial state {q0!r}")
    keep = _reach(_successors(aut), q0)
    sub = WeightedAutomaton(
        tuple(q for q in aut.states if q in keep),
        aut.left,
        aut.right,
        {x: q for x, q in aut.top.items() if q in keep},
        {y: q for y, q in aut.bottom.items() if q in keep},
        {k: w for k, w in aut.table.items() if k[0] in keep},
    )
    report = AnalysisReport(initial=q0, reachable=sub.states, transition_count=len(sub.table))
    return sub, report


def _require_closed_markov(aut: WeightedAutomaton) -> None:
    if len(aut.left) != 1 or len(aut.right) != 1:
        raise NotClosed("parallel alphabets must have exactly one label")
    if not is_markov(aut):
        raise NotMarkov("automaton is not Markov")


def deadlock_states(aut: WeightedAutomaton) -> tuple:
    """States whose only positive-weight move is the self-loop."""
    _require_closed_markov(aut)
    succ = _successors(aut)
    return tuple(q for q in aut.states if succ[q] == {q})


def check_pf_hypotheses(aut: WeightedAutomaton, q0) -> AnalysisReport:
    """Check the three conditions under which deadlock is reached almost surely."""
    _require_closed_markov(aut)
    sub, report = reachable_part(aut, q0)
    dead = deadlock_states(sub)
    succ = _successors(sub)
    pred = {q: set() for q in sub.states}
    for s, targets in succ.items():
        for t in targets:
            pred[t].add(s)
    back = _reach(pred, q0)  # states with a path to q0
    report.deadlocks = dead
    report.pf_verdict = PFVerdict(
        unique_reachable_deadlock=len(dead) == 1,
        all_return_to_initial=all(q in back for q in sub.states if q not in dead),
        all_have_self_loop=all(q in succ[q] for q in sub.states),
    )
    return report


def _start(aut, x0, mode):
    if mode not in ("exact", "float"):
        raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")
    if mode == "float":
        return {q: float(v) for q, v in _as_vector(aut, _exact(x0)).items() if v}
    return {q: v for q, v in _as_vector(aut, x0).items() if v}


def _rows(aut, mode) -> dict:
    rows = {}
    for (s, t), w in total_weights(aut).items():
        rows.setdefault(s, []).append((t, w if mode == "exact" else float(w)))
    return rows


def _step(x: dict, rows: dict) -> dict:
    nxt = {}
    for s, v in x.items():
        for t, w in rows.get(s, ()):
            nxt[t] = nxt.get(t, 0) + v * w
    return {q: v for q, v in nxt.items() if v != 0}


def _exact(x0):
    """Floats converted exactly, so float-mode vectors pass the shared validation."""
    conv = lambda v: Fraction(v) if isinstance(v, float) else v  # noqa: E731
    if isinstance(x0, dict):
        return {q: conv(v) for q, v in x0.items()}
    return [conv(v) for v in x0]


def evolve_distribution(aut: WeightedAutomaton, x0, k: int, mode: str = "exact") -> dict:
    """``x0`` times the k-th power of the total matrix, as a sparse ``{state: mass}``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    x, rows = _start(aut, x0, mode), _rows(aut, mode)
    for _ in range(k):
        x = _step(x, rows)
    return x


def subset_probability(aut: WeightedAutomaton, q0, predicate: Callable, k: int, mode: str = "exact"):
    if q0 not in aut.state_index:
        raise UnknownState(f"unknown initial state {q0!r}")
    x = evolve_distribution(aut, {q0: 1}, k, mode)
    zero = Fraction(0) if mode == "exact" else 0.0
    return sum((v for q, v in x.items() if predicate(q)), zero)


def probability_series(aut, q0, predicate: Callable, k_max: int, mode: str = "exact") -> list:
    """``[(k, mass on predicate after k steps)]`` for k = 1..k_max, in one pass."""
    if q0 not in aut.state_index:
        raise UnknownState(f"unknown initial state {q0!r}")
    x, rows = _start(aut, {q0: 1}, mode), _rows(aut, mode)
    zero = Fraction(0) if mode == "exact" else 0.0
    out = []
    for k in range(1, k_max + 1):
        x = _step(x, rows)
        out.append((k, sum((v for q, v in x.items() if predicate(q)), zero)))
    return out


def deadlock_probability_series(aut: WeightedAutomaton, q0, k_max: int, mode: str = "exact") -> list:
    dead = set(deadlock_states(aut))
    return probability_series(aut, q0, dead.__contains__, k_max, mode)


def seat_eating(state, eating: str = "3") -> int:
    """Number of seat components (even positions) of a Sofia state equal to ``eating``."""
    return sum(1 for i in range(0, len(state), 2) if state[i] == eating)


def eating_state_count(aut: WeightedAutomaton) -> int:
    """Count states with a child eating; raise if two children ever eat together."""
    count = 0
    for q in aut.states:
        n = seat_eating(q)
        if n > 1:
            raise AssertionError(f"state {q!r} has {n} eating children")
        count += n == 1
    return count
