"""Isomorphism of weighted automata up to renaming of states."""

from __future__ import annotations

from collections import defaultdict

from .core import WeightedAutomaton
from .errors import TooLarge

DEFAULT_MAX_STATES = 16


def _initial_colours(aut: WeightedAutomaton) -> dict:
    tops, bottoms = defaultdict(list), defaultdict(list)
    for x, q in aut.top.items():
        tops[q].append(x)
    for y, q in aut.bottom.items():
        bottoms[q].append(y)
    # interface points are shared names, so they pin states exactly
    return {q: (tuple(sorted(map(repr, tops[q]))), tuple(sorted(map(repr, bottoms[q])))) for q in aut.states}


def _refine(auts, colours):
    """Colour refinement run jointly so colours are comparable across automata."""
    while True:
        sigs = []
        for aut, col in zip(auts, colours):
            out = defaultdict(list)
            inc = defaultdict(list)
            for s, a, b, t, w in aut.transitions():
                out[s].append((aut.left.index[a], aut.right.index[b], w, col[t]))
                inc[t].append((aut.left.index[a], aut.right.index[b], w, col[s]))
            sigs.append(
                {q: (col[q], tuple(sorted(out[q])), tuple(sorted(inc[q]))) for q in aut.states}
            )
        palette = {}
        for sig in sigs:
            for v in sig.values():
                palette.setdefault(v, None)
        ids = {v: i for i, v in enumerate(sorted(palette, key=repr))}
        new = [{q: ids[v] for q, v in sig.items()} for sig in sigs]
        if all(len(set(n.values())) == len(set(c.values())) for n, c in zip(new, colours)):
            return new
        colours = new


def _classes(col):
    cls = defaultdict(list)
    for q, c in col.items():
        cls[c].append(q)
    return cls


def _check(p, q, f) -> bool:
    if any(f[p.top(x)] != q.top(x) for x in p.top.domain):
        return False
    if any(f[p.bottom(y)] != q.bottom(y) for y in p.bottom.domain):
        return False
    mapped = {(f[s], a, b, f[t]): w for (s, a, b, t), w in p.table.items()}
    return mapped == q.table


def find_isomorphism(
    p: WeightedAutomaton, q: WeightedAutomaton, max_states: int = DEFAULT_MAX_STATES
) -> dict | None:
    """A state bijection ``p.states -> q.states`` witnessing ``p ≅ q``, or None.

    Alphabets must be equal as ordered sets with the same epsilon and the
    interface domains must coincide.  Raises :class:`TooLarge` when the
    automata exceed ``max_states`` and colour refinement leaves a choice.
    """
    if p.left != q.left or p.right != q.right:
        return None
    if set(p.top.domain) != set(q.top.domain) or set(p.bottom.domain) != set(q.bottom.domain):
        return None
    if len(p.states) != len(q.states) or len(p.table) != len(q.table):
        return None
    if sorted(p.table.values()) != sorted(q.table.values()):
        return None

    col_p, col_q = _refine((p, q), (_initial_colours(p), _initial_colours(q)))

    def search(col_p, col_q):
        cp, cq = _classes(col_p), _classes(col_q)
        if sorted((c, len(v)) for c, v in cp.items()) != sorted((c, len(v)) for c, v in cq.items()):
            return None
        open_cls = sorted((len(v), c) for c, v in cp.items() if len(v) > 1)
        if not open_cls:
            f = {cp[c][0]: cq[c][0] for c in cp}
            return f if _check(p, q, f) else None
        if len(p.states) > max_states:
            raise TooLarge(
                f"{len(p.states)} states exceed the isomorphism search bound {max_states}"
            )
        _, c = open_cls[0]
        s = cp[c][0]
        fresh = max(max(col_p.values()), max(col_q.values())) + 1
        for t in cq[c]:
            np_, nq = dict(col_p), dict(col_q)
            np_[s] = fresh
            nq[t] = fresh
            np_, nq = _refine((p, q), (np_, nq))
            f = search(np_, nq)
            if f is not None:
                return f
        return None

    if not p.states:
        return {} if _check(p, q, {}) else None
    return search(col_p, col_q)


def is_isomorphic(p: WeightedAutomaton, q: WeightedAutomaton, max_states: int = DEFAULT_MAX_STATES) -> bool:
    return find_isomorphism(p, q, max_states) is not None
