"""Any automaton as sequential wires around a local sum of one-transition automata."""

from __future__ import annotations

from collections import defaultdict

from .core import InterfaceMap, WeightedAutomaton
from .expr import Literal, LocalSum, SeqCompose, SeqConstant
from .names import Tag

SRC, TGT = "src", "tgt"


def _elementary(aut, s, a, b, t, w) -> WeightedAutomaton:
    # both endpoints are exposed on both interfaces so the wires can glue
    # sources of one transition to targets of another
    ends = {SRC: "0", TGT: "1"}
    return WeightedAutomaton(
        ("0", "1"), aut.left, aut.right,
        InterfaceMap.from_dict(ends), InterfaceMap.from_dict(ends),
        {("0", a, b, "1"): w},
    )


def _unit(aut) -> WeightedAutomaton:
    return WeightedAutomaton(
        ("0",), aut.left, aut.right,
        InterfaceMap.from_dict({SRC: "0"}), InterfaceMap.from_dict({SRC: "0"}), {},
    )


def elementary_decomposition(aut: WeightedAutomaton):
    """Expression ``Seq(top wires) ;; (T1 + ... + Tn) ;; Seq(bottom wires)``.

    One leaf per stored transition, plus a transition-free one-state leaf for
    each state touched by no transition.  Evaluating the expression gives an
    automaton isomorphic to ``aut``.
    """
    leaves = []  # (automaton, {interface point: original state})
    for s, a, b, t, w in aut.transitions():
        leaves.append((_elementary(aut, s, a, b, t, w), {SRC: s, TGT: t}))
    touched = {s for s, *_ in aut.transitions()} | {t for _s, _a, _b, t, _w in aut.transitions()}
    for q in aut.states:
        if q not in touched:
            leaves.append((_unit(aut), {SRC: q}))
    if not leaves:
        empty = WeightedAutomaton((), aut.left, aut.right)
        leaves.append((empty, {}))

    n = len(leaves)
    where = defaultdict(list)  # original state -> interface points of the sum
    for i, (_leaf, ends) in enumerate(leaves):
        for point, q in ends.items():
            where[q].append(_leaf_point(point, i, n))

    top_pairs, bottom_pairs = [], []
    for q, points in where.items():
        first = points[0]
        for other in points[1:]:
            top_pairs.append((Tag("R", first), Tag("R", other)))
            bottom_pairs.append((Tag("L", first), Tag("L", other)))
    for x, q in aut.top.items():
        top_pairs.append((Tag("L", x), Tag("R", where[q][0])))
    for y, q in aut.bottom.items():
        bottom_pairs.append((Tag("L", where[q][0]), Tag("R", y)))

    inner = Literal("T1", leaves[0][0])
    for i in range(1, n):
        inner = LocalSum(inner, Literal(f"T{i + 1}", leaves[i][0]))
    sum_points = tuple(p for pts in where.values() for p in pts)
    top = SeqConstant(aut.top.domain, sum_points, tuple(sorted(top_pairs, key=repr)))
    bottom = SeqConstant(sum_points, aut.bottom.domain, tuple(sorted(bottom_pairs, key=repr)))
    return SeqCompose(SeqCompose(top, inner), bottom)


def _leaf_point(point, index: int, count: int):
    """Name of leaf ``index``'s point inside ``((T1 + T2) + T3) + ...``."""
    if count == 1:
        return point
    name = Tag("R", point) if index > 0 else point
    wraps = count - 1 if index == 0 else count - 1 - index
    for _ in range(wraps):
        name = Tag("L", name)
    return name
