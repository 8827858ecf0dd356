"""Seeded random automata for randomized checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Alphabet, WeightedAutomaton, automaton

WEIGHTS = (Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(2, 3), Fraction(5, 4))


def random_alphabet(rng: random.Random, max_labels: int = 3, prefix: str = "a") -> Alphabet:
    n = rng.randint(1, max_labels)
    return Alphabet.of("eps", *(f"{prefix}{i}" for i in range(1, n)))


def random_automaton(
    rng: random.Random,
    left: Alphabet | None = None,
    right: Alphabet | None = None,
    max_states: int = 4,
    max_labels: int = 3,
    positive: bool = True,
    extra: int = 2,
    max_points: int = 0,
) -> WeightedAutomaton:
    """A sparse automaton: each state gets up to ``extra`` random entries.

    With ``positive`` every state also gets an idle (eps, eps) move.
    ``max_points`` bounds the number of top and bottom interface points.
    """
    left = left or random_alphabet(rng, max_labels, "a")
    right = right or random_alphabet(rng, max_labels, "b")
    states = [str(i) for i in range(1, rng.randint(1, max_states) + 1)]
    entries = {}
    for s in states:
        if positive:
            entries[s, left.epsilon, right.epsilon, rng.choice(states)] = rng.choice(WEIGHTS)
        for _ in range(rng.randint(0 if positive else 1, extra)):
            key = (s, rng.choice(left.labels), rng.choice(right.labels), rng.choice(states))
            entries[key] = rng.choice(WEIGHTS)
    top = {f"x{i}": rng.choice(states) for i in range(rng.randint(0, max_points))}
    bottom = {f"y{i}": rng.choice(states) for i in range(rng.randint(0, max_points))}
    return automaton(states, left, right, [k + (w,) for k, w in entries.items()], top, bottom)
