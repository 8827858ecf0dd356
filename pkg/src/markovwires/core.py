"""Weighted automata with parallel (label) and sequential (gluing) interfaces.

An automaton has a state set, a left and a right alphabet, a top and a
bottom interface map into the states, and a sparse table of transition
weights keyed by ``(source, left_label, right_label, target)``.  Weights are
exact :class:`fractions.Fraction` values; absent keys mean weight zero.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product as cartesian
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import (
    InvalidAutomaton,
    InvalidK,
    LengthMismatch,
    NotNormalizable,
    UnknownLabel,
)
from .names import EPS, Tag, name_key, sort_names

Weight = Fraction


def as_weight(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, float):
        raise TypeError("floating-point weights are not accepted; use Fraction or 'p/q'")
    return Fraction(w)


def coproduct(xs: Sequence, zs: Sequence):
    """Disjoint union ``xs + zs`` with its two injections.

    An empty summand is a strict unit: ``X + {} == X`` with identity
    injection, so sums with sequential constants keep their alphabets.
    """
    if not zs:
        return tuple(xs), (lambda x: x), None
    if not xs:
        return tuple(zs), None, (lambda z: z)
    inl = lambda x: Tag("L", x)  # noqa: E731
    inr = lambda z: Tag("R", z)  # noqa: E731
    return tuple(inl(x) for x in xs) + tuple(inr(z) for z in zs), inl, inr


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of labels with an optional distinguished epsilon."""

    labels: tuple = ()
    epsilon: Any = None

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise InvalidAutomaton(f"duplicate labels in alphabet {labels!r}")
        if self.epsilon is not None and self.epsilon not in labels:
            raise InvalidAutomaton(f"epsilon {self.epsilon!r} is not a label")

    @classmethod
    def of(cls, *symbols) -> "Alphabet":
        """Alphabet from symbols; the symbol ``eps`` becomes the epsilon."""
        return cls(tuple(symbols), EPS if EPS in symbols else None)

    @classmethod
    def unit(cls) -> "Alphabet":
        return cls((EPS,), EPS)

    @classmethod
    def empty(cls) -> "Alphabet":
        return cls((), None)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.index

    @cached_property
    def index(self) -> dict:
        return {a: i for i, a in enumerate(self.labels)}

    @property
    def is_unit(self) -> bool:
        return len(self.labels) == 1

    def product(self, other: "Alphabet") -> "Alphabet":
        eps = None
        if self.epsilon is not None and other.epsilon is not None:
            eps = (self.epsilon, other.epsilon)
        return Alphabet(tuple((a, c) for a in self.labels for c in other.labels), eps)

    def sum(self, other: "Alphabet") -> "Alphabet":
        return self.sum_with_injections(other)[0]

    def sum_with_injections(self, other: "Alphabet"):
        labels, inl, inr = coproduct(self.labels, other.labels)
        if inl is None or inr is None:
            # strict unit: the non-empty summand keeps its epsilon
            return (other if inl is None else self), inl, inr
        return Alphabet(labels, None), inl, inr

    def power(self, k: int) -> "Alphabet":
        labels = tuple(cartesian(self.labels, repeat=k))
        eps = None if self.epsilon is None else (self.epsilon,) * k
        return Alphabet(labels, eps)


@dataclass(frozen=True)
class InterfaceMap:
    """Total function from a finite set of interface points into the states."""

    domain: tuple = ()
    images: tuple = ()

    def __post_init__(self):
        if len(self.domain) != len(self.images):
            raise InvalidAutomaton("interface domain and images differ in length")
        if len(set(self.domain)) != len(self.domain):
            raise InvalidAutomaton(f"duplicate interface points {self.domain!r}")
        order = sorted(range(len(self.domain)), key=lambda i: name_key(self.domain[i]))
        object.__setattr__(self, "domain", tuple(self.domain[i] for i in order))
        object.__setattr__(self, "images", tuple(self.images[i] for i in order))

    @classmethod
    def from_dict(cls, mapping: Mapping) -> "InterfaceMap":
        return cls(tuple(mapping), tuple(mapping.values()))

    def as_dict(self) -> dict:
        return dict(zip(self.domain, self.images))

    def __call__(self, x):
        return self.as_dict()[x]

    def __len__(self):
        return len(self.domain)

    def items(self):
        return zip(self.domain, self.images)

    def rename(self, points: Callable = None, states: Callable = None) -> "InterfaceMap":
        points = points or (lambda x: x)
        states = states or (lambda q: q)
        return InterfaceMap(
            tuple(points(x) for x in self.domain), tuple(states(q) for q in self.images)
        )


@dataclass(frozen=True, eq=True)
class WeightedAutomaton:
    states: tuple
    left: Alphabet
    right: Alphabet
    top: InterfaceMap = field(default_factory=InterfaceMap)
    bottom: InterfaceMap = field(default_factory=InterfaceMap)
    table: dict = field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        states = sort_names(self.states)
        if len(set(states)) != len(states):
            raise InvalidAutomaton("duplicate state names")
        object.__setattr__(self, "states", states)
        top, bottom = self.top, self.bottom
        if isinstance(top, Mapping):
            top = InterfaceMap.from_dict(top)
        if isinstance(bottom, Mapping):
            bottom = InterfaceMap.from_dict(bottom)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        sset = set(states)
        for imap, which in ((top, "top"), (bottom, "bottom")):
            for x, q in imap.items():
                if q not in sset:
                    raise InvalidAutomaton(f"{which} interface sends {x!r} to unknown state {q!r}")
        table = {}
        for key, w in dict(self.table).items():
            s, a, b, t = key
            w = as_weight(w)
            if w < 0:
                raise InvalidAutomaton(f"negative weight {w} on {key!r}")
            if w == 0:
                continue
            if s not in sset or t not in sset:
                raise InvalidAutomaton(f"transition {key!r} references an unknown state")
            if a not in self.left or b not in self.right:
                raise InvalidAutomaton(f"transition {key!r} uses an undeclared label")
            table[key] = w
        object.__setattr__(self, "table", dict(sorted(table.items(), key=self._entry_key)))

    def _entry_key(self, item):
        s, a, b, t = item[0]
        return (name_key(s), self.left.index[a], self.right.index[b], name_key(t))

    # --- views -----------------------------------------------------------
    @cached_property
    def state_index(self) -> dict:
        return {q: i for i, q in enumerate(self.states)}

    def __len__(self):
        return len(self.states)

    def transitions(self):
        """Entries ``(source, left, right, target, weight)`` in canonical order."""
        for (s, a, b, t), w in self.table.items():
            yield s, a, b, t, w

    @cached_property
    def out_entries(self) -> dict:
        out = defaultdict(list)
        for s, a, b, t, w in self.transitions():
            out[s].append((a, b, t, w))
        return dict(out)

    def matrix(self, a, b) -> list:
        """Dense ``|Q| x |Q|`` matrix of the transitions labelled ``a/b``."""
        if a not in self.left or b not in self.right:
            raise UnknownLabel(f"no label pair {a!r}/{b!r}")
        n, idx = len(self.states), self.state_index
        m = [[Fraction(0)] * n for _ in range(n)]
        for s, a2, b2, t, w in self.transitions():
            if a2 == a and b2 == b:
                m[idx[s]][idx[t]] += w
        return m

    def replace(self, **changes) -> "WeightedAutomaton":
        fields = dict(
            states=self.states,
            left=self.left,
            right=self.right,
            top=self.top,
            bottom=self.bottom,
            table=self.table,
        )
        fields.update(changes)
        return WeightedAutomaton(**fields)

    def __repr__(self):
        return (
            f"<WeightedAutomaton {len(self.states)} states, |A|={len(self.left)}, "
            f"|B|={len(self.right)}, |X|={len(self.top)}, |Y|={len(self.bottom)}, "
            f"{len(self.table)} transitions>"
        )


# --- basic operations ------------------------------------------------------


def total_weights(aut: WeightedAutomaton) -> dict:
    """Sparse total matrix ``{(q, q'): weight}``."""
    out = defaultdict(Fraction)
    for s, _a, _b, t, w in aut.transitions():
        out[s, t] += w
    return dict(out)


def total_matrix(aut: WeightedAutomaton) -> list:
    n, idx = len(aut.states), aut.state_index
    m = [[Fraction(0)] * n for _ in range(n)]
    for (s, t), w in total_weights(aut).items():
        m[idx[s]][idx[t]] = w
    return m


def row_sums(aut: WeightedAutomaton) -> dict:
    sums = {q: Fraction(0) for q in aut.states}
    for s, _a, _b, _t, w in aut.transitions():
        sums[s] += w
    return sums


def is_positive(aut: WeightedAutomaton) -> bool:
    ea, eb = aut.left.epsilon, aut.right.epsilon
    if ea is None or eb is None:
        return False
    idle = {q: Fraction(0) for q in aut.states}
    for s, a, b, _t, w in aut.transitions():
        if a == ea and b == eb:
            idle[s] += w
    return all(v > 0 for v in idle.values())


def is_markov(aut: WeightedAutomaton) -> bool:
    return is_positive(aut) and all(v == 1 for v in row_sums(aut).values())


def normalize(aut: WeightedAutomaton) -> WeightedAutomaton:
    """Divide every transition weight by the total out-weight of its source.

    Only requires positive row sums of the total matrix, which is weaker than
    positivity of the automaton.
    """
    sums = row_sums(aut)
    empty = [q for q, v in sums.items() if v == 0]
    if empty:
        raise NotNormalizable(f"states with zero total out-weight: {empty[:5]!r}")
    return aut.replace(table={k: w / sums[k[0]] for k, w in aut.table.items()})


def k_step_automaton(aut: WeightedAutomaton, k: int) -> WeightedAutomaton:
    """Automaton of k step paths: labels are k-tuples, weights sum over paths."""
    if not isinstance(k, int) or k < 1:
        raise InvalidK(f"k must be a positive integer, got {k!r}")
    out = aut.out_entries
    # partial paths: (source, left word, right word, end) -> weight
    layer = {(s, (a,), (b,), t): w for s, a, b, t, w in aut.transitions()}
    for _ in range(k - 1):
        nxt = defaultdict(Fraction)
        for (s, u, v, t), w in layer.items():
            for a, b, t2, w2 in out.get(t, ()):
                nxt[s, u + (a,), v + (b,), t2] += w * w2
        layer = nxt
    return aut.replace(left=aut.left.power(k), right=aut.right.power(k), table=layer)


@dataclass(frozen=True)
class Behaviour:
    left_word: tuple
    right_word: tuple
    vectors: tuple


def _vec_times_matrix(aut, x: dict, a, b) -> dict:
    y = defaultdict(Fraction)
    for s, xs in x.items():
        if not xs:
            continue
        for a2, b2, t, w in aut.out_entries.get(s, ()):
            if a2 == a and b2 == b:
                y[t] += xs * w
    return {q: y.get(q, Fraction(0)) for q in aut.states}


def behaviour_evolve(aut: WeightedAutomaton, x0, u: Sequence, v: Sequence) -> Behaviour:
    """Row vectors ``x_i = x_{i-1} Q_{u_i, v_i}``.

    ``x0`` may be a mapping state -> weight or a sequence in state order;
    vectors are returned as tuples in state order.
    """
    if len(u) != len(v):
        raise LengthMismatch(f"words of lengths {len(u)} and {len(v)}")
    for a in u:
        if a not in aut.left:
            raise UnknownLabel(f"{a!r} not in left alphabet")
    for b in v:
        if b not in aut.right:
            raise UnknownLabel(f"{b!r} not in right alphabet")
    x = _as_vector(aut, x0)
    vectors = [x]
    for a, b in zip(u, v):
        x = _vec_times_matrix(aut, x, a, b)
        vectors.append(x)
    return Behaviour(
        tuple(u), tuple(v), tuple(tuple(vec[q] for q in aut.states) for vec in vectors)
    )


def _as_vector(aut, x0) -> dict:
    from .errors import DimensionMismatch

    if isinstance(x0, Mapping):
        unknown = set(x0) - set(aut.states)
        if unknown:
            raise DimensionMismatch(f"vector indexed by unknown states {sorted(map(repr, unknown))}")
        x = {q: as_weight(x0.get(q, 0)) for q in aut.states}
    else:
        x0 = list(x0)
        if len(x0) != len(aut.states):
            raise DimensionMismatch(f"vector of length {len(x0)} for {len(aut.states)} states")
        x = {q: as_weight(w) for q, w in zip(aut.states, x0)}
    if any(w < 0 for w in x.values()):
        raise ValueError("vector entries must be non-negative")
    return x


def structurally_equal(p: WeightedAutomaton, q: WeightedAutomaton) -> bool:
    return p == q


def relabel(
    aut: WeightedAutomaton,
    left: Callable | None = None,
    right: Callable | None = None,
    states: Callable | None = None,
    left_alphabet: Alphabet | None = None,
    right_alphabet: Alphabet | None = None,
    top: Callable | None = None,
    bottom: Callable | None = None,
) -> WeightedAutomaton:
    """Rename labels, states or interface points through bijections.

    When ``left_alphabet``/``right_alphabet`` is omitted the image alphabet
    is built from the mapped labels in their original order.
    """
    ident = lambda x: x  # noqa: E731
    fl, fr, fs = left or ident, right or ident, states or ident
    if left_alphabet is None:
        eps = None if aut.left.epsilon is None else fl(aut.left.epsilon)
        left_alphabet = Alphabet(tuple(fl(a) for a in aut.left), eps)
    if right_alphabet is None:
        eps = None if aut.right.epsilon is None else fr(aut.right.epsilon)
        right_alphabet = Alphabet(tuple(fr(b) for b in aut.right), eps)
    table = {}
    for s, a, b, t, w in aut.transitions():
        key = (fs(s), fl(a), fr(b), fs(t))
        if key in table:
            raise InvalidAutomaton("relabelling is not injective")
        table[key] = w
    new_states = tuple(fs(q) for q in aut.states)
    if len(set(new_states)) != len(new_states):
        raise InvalidAutomaton("state renaming is not injective")
    return WeightedAutomaton(
        new_states,
        left_alphabet,
        right_alphabet,
        aut.top.rename(top, fs),
        aut.bottom.rename(bottom, fs),
        table,
    )


def automaton(
    states: Iterable,
    left: Alphabet,
    right: Alphabet,
    transitions: Iterable = (),
    top: Mapping | None = None,
    bottom: Mapping | None = None,
) -> WeightedAutomaton:
    """Convenience constructor from ``(source, a, b, target, weight)`` records."""
    table = {}
    for s, a, b, t, w in transitions:
        table[s, a, b, t] = table.get((s, a, b, t), 0) + as_weight(w)
    return WeightedAutomaton(
        tuple(states), left, right, InterfaceMap.from_dict(top or {}),
        InterfaceMap.from_dict(bottom or {}), table,
    )
