"""Reference checks for the dining philosophers, the birthday party and the lemmas."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction as F

from .analysis import (
    check_pf_hypotheses,
    deadlock_probability_series,
    eating_state_count,
    probability_series,
    reachable_part,
    seat_eating,
)
from .core import k_step_automaton, normalize, relabel, total_weights
from .dsl import Environment, builtin_file, dining_initial, sofia_initial
from .ops import communicating_parallel, parallel_product
from .random_models import random_alphabet, random_automaton
from .serialize import decimal_text, weight_text

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class Check:
    id: str
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.id} expected={_fmt(self.expected)} got={_fmt(self.got)}"


def _fmt(v) -> str:
    if isinstance(v, F):
        return weight_text(v)
    if isinstance(v, tuple):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return str(v)


# --- dining philosophers -------------------------------------------------------

DF2_STATES = (
    ("1", "1", "1", "1"), ("1", "3", "3", "2"), ("3", "2", "1", "3"), ("1", "1", "4", "2"),
    ("4", "2", "1", "1"), ("1", "3", "2", "1"), ("2", "1", "1", "3"), ("2", "3", "2", "3"),
)
_q, _h, _t = F(1, 4), F(1, 2), F(1, 3)
DF2_MATRIX = (
    (_q, 0, 0, 0, 0, _q, _q, _q),
    (0, _h, 0, _h, 0, 0, 0, 0),
    (0, 0, _h, 0, _h, 0, 0, 0),
    (_h, 0, 0, _h, 0, 0, 0, 0),
    (_h, 0, 0, 0, _h, 0, 0, 0),
    (0, _t, 0, 0, 0, _t, 0, _t),
    (0, 0, _t, 0, 0, 0, _t, _t),
    (0, 0, 0, 0, 0, 0, 0, 1),
)
DF2_DEADLOCK = {2: F(23, 48), 3: F(341, 576), 4: F(4415, 6912)}


def matrix_in_order(aut, order) -> tuple:
    total = total_weights(aut)
    return tuple(tuple(total.get((s, t), F(0)) for t in order) for s in order)


def check_df2() -> list:
    aut = Environment(builtin_file("dining"))("DF2")
    q0 = dining_initial(2)
    sub, report = reachable_part(aut, q0)
    checks = [
        Check("df2.states", 144, len(aut.states)),
        Check("df2.reachable", tuple(sorted(DF2_STATES)), tuple(sorted(sub.states))),
    ]
    got = matrix_in_order(sub, DF2_STATES) if set(sub.states) == set(DF2_STATES) else None
    checks.append(Check("df2.matrix", DF2_MATRIX, got))
    pf = check_pf_hypotheses(aut, q0)
    checks.append(Check("df2.deadlock_state", (("2", "3", "2", "3"),), pf.deadlocks))
    checks.append(Check("df2.pf_hypotheses", True, pf.pf_verdict.overall))
    series = dict(deadlock_probability_series(sub, q0, 4))
    for k, want in DF2_DEADLOCK.items():
        checks.append(Check(f"df2.deadlock_k{k}", want, series[k]))
    return checks


# --- birthday party --------------------------------------------------------------

SOFIA_STATES = frozenset(tuple(s) for s in """
    511111 511321 532111 532321 111151 132151 511332 532332 533211 133251 115111 211153
    215113 232153 233253 511142 532142 514211 114251 214253 115321 215323 321153 325113
    325323 533242 324253 115332 421151 425111 425321 514242 424251 115142 425332 425142
""".split())
SOFIA_EATING = {1: F(0), 2: F(19, 60), 3: F(98, 225), 4: F(49133, 108000), 5: F(1473023, 3240000)}
SOFIA_K100 = "0.3768058221"


def check_sofia() -> list:
    aut = Environment(builtin_file("sofia"))("Sofia3_2")
    q0 = sofia_initial(3, 2)
    sub, report = reachable_part(aut, q0)
    checks = [
        Check("sofia.initial", ("5", "1", "1", "1", "1", "1"), q0),
        Check("sofia.reachable_count", 36, len(sub.states)),
        Check("sofia.reachable_states", True, frozenset(sub.states) == SOFIA_STATES),
        Check("sofia.transitions", 141, report.transition_count),
        Check("sofia.eating_states", 12, eating_state_count(sub)),
        Check("sofia.two_eating", 0, sum(1 for q in sub.states if seat_eating(q) > 1)),
    ]
    eating = lambda q: seat_eating(q) > 0  # noqa: E731
    series = dict(probability_series(sub, q0, eating, 100))
    for k, want in SOFIA_EATING.items():
        checks.append(Check(f"sofia.eating_k{k}", want, series[k]))
    checks.append(Check("sofia.eating_k100", SOFIA_K100, decimal_text(series[100])))
    return checks


# --- compositionality lemmas -----------------------------------------------------


def random_pair(rng: random.Random, max_states: int = 4, max_labels: int = 3):
    """Positive Q: A -> B and R: B -> C sharing the middle alphabet."""
    a = random_alphabet(rng, max_labels, "a")
    b = random_alphabet(rng, max_labels, "b")
    c = random_alphabet(rng, max_labels, "c")
    q = random_automaton(rng, a, b, max_states=max_states)
    r = random_automaton(rng, b, c, max_states=max_states)
    return q, r


def unzip_words(word: tuple) -> tuple:
    """((a1,c1),...,(ak,ck)) -> ((a1,...,ak),(c1,...,ck))."""
    return tuple(x for x, _ in word), tuple(y for _, y in word)


def power_of_product_matches(q, r, k: int) -> bool:
    lhs = k_step_automaton(parallel_product(q, r), k)
    rhs = parallel_product(k_step_automaton(q, k), k_step_automaton(r, k))
    moved = relabel(lhs, left=unzip_words, right=unzip_words,
                    left_alphabet=rhs.left, right_alphabet=rhs.right)
    return moved == rhs


def lemma_results(seed: int = DEFAULT_SEED, count: int = 200) -> dict:
    rng = random.Random(seed)
    passed = {"lemmas.norm_product": 0, "lemmas.norm_parallel": 0, "lemmas.power_product": 0}
    for i in range(count):
        q, r = random_pair(rng)
        nq, nr = normalize(q), normalize(r)
        passed["lemmas.norm_product"] += normalize(parallel_product(q, r)) == parallel_product(nq, nr)
        passed["lemmas.norm_parallel"] += (
            normalize(communicating_parallel(nq, nr)) == normalize(communicating_parallel(q, r))
        )
        passed["lemmas.power_product"] += power_of_product_matches(q, r, 1 + i % 3)
    return passed


def check_lemmas(seed: int = DEFAULT_SEED, count: int = 200) -> list:
    return [Check(cid, count, n) for cid, n in lemma_results(seed, count).items()]


SUITES = {"df2": check_df2, "sofia": check_sofia, "lemmas": check_lemmas}
