"""Sequential and parallel operations, wire constants and derived operations."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Alphabet, InterfaceMap, WeightedAutomaton, coproduct, relabel
from .errors import ArityMismatch, InterfaceMismatch
from .names import EPS, UNIT, Tag, pair_names, sort_names
from .unionfind import UnionFind

# --- sequential operations ---------------------------------------------------


def boxplus_sum(p: WeightedAutomaton, q: WeightedAutomaton) -> WeightedAutomaton:
    """Disjoint sum: states, alphabets and interfaces side by side, no cross weights."""
    states, sl, sr = coproduct(p.states, q.states)
    left, al, ar = p.left.sum_with_injections(q.left)
    right, bl, br = p.right.sum_with_injections(q.right)
    top, xl, xr = coproduct(p.top.domain, q.top.domain)
    bottom, yl, yr = coproduct(p.bottom.domain, q.bottom.domain)
    table = {}
    for aut, fs, fa, fb in ((p, sl, al, bl), (q, sr, ar, br)):
        for s, a, b, t, w in aut.transitions():
            table[fs(s), fa(a), fb(b), fs(t)] = w
    top_map = {}
    bottom_map = {}
    for aut, fs, fx, fy in ((p, sl, xl, yl), (q, sr, xr, yr)):
        for x, s in aut.top.items():
            top_map[fx(x)] = fs(s)
        for y, s in aut.bottom.items():
            bottom_map[fy(y)] = fs(s)
    return WeightedAutomaton(
        states, left, right, InterfaceMap.from_dict(top_map), InterfaceMap.from_dict(bottom_map), table
    )


def _quotient(aut: WeightedAutomaton, pairs: Iterable, top: dict, bottom: dict) -> WeightedAutomaton:
    """Glue states of ``aut`` along ``pairs``; weights between classes are summed."""
    uf = UnionFind(aut.states)
    for s, t in pairs:
        uf.union(s, t)
    cls = uf.classes()
    table = defaultdict(Fraction)
    for s, a, b, t, w in aut.transitions():
        table[cls[s], a, b, cls[t]] += w
    return WeightedAutomaton(
        tuple(set(cls.values())),
        aut.left,
        aut.right,
        InterfaceMap.from_dict({x: cls[s] for x, s in top.items()}),
        InterfaceMap.from_dict({y: cls[s] for y, s in bottom.items()}),
        dict(table),
    )


def seq_compose(p: WeightedAutomaton, q: WeightedAutomaton) -> WeightedAutomaton:
    """Glue ``p``'s bottom interface to ``q``'s top interface."""
    if set(p.bottom.domain) != set(q.top.domain):
        raise InterfaceMismatch(
            f"bottom interface {list(p.bottom.domain)!r} does not match top interface "
            f"{list(q.top.domain)!r}"
        )
    _, sl, sr = coproduct(p.states, q.states)
    sl = sl or (lambda s: s)
    sr = sr or (lambda s: s)
    summed = boxplus_sum(p, q)
    qtop = q.top.as_dict()
    pairs = [(sl(s), sr(qtop[y])) for y, s in p.bottom.items()]
    top = {x: sl(s) for x, s in p.top.items()}
    bottom = {z: sr(s) for z, s in q.bottom.items()}
    glued = _quotient(summed.replace(top=InterfaceMap(), bottom=InterfaceMap()), pairs, top, bottom)
    return glued


@dataclass(frozen=True)
class SeqRelation:
    """Relation on the disjoint union ``top + bottom``.

    Pair endpoints are ``Tag("L", x)`` for a top point ``x`` and
    ``Tag("R", y)`` for a bottom point ``y``; pairs may join two points on
    the same side.
    """

    top: tuple
    bottom: tuple
    pairs: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(self.top))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        object.__setattr__(self, "pairs", frozenset(tuple(p) for p in self.pairs))
        carrier = self.carrier()
        for pair in self.pairs:
            for e in pair:
                if e not in carrier:
                    raise InterfaceMismatch(f"relation endpoint {e!r} not in carrier")

    def carrier(self) -> set:
        return {Tag("L", x) for x in self.top} | {Tag("R", y) for y in self.bottom}

    @classmethod
    def graph(cls, top: Sequence, bottom: Sequence, f) -> "SeqRelation":
        """Graph of a function from the top set to the bottom set."""
        return cls(top, bottom, frozenset((Tag("L", x), Tag("R", f(x))) for x in top))

    @classmethod
    def cograph(cls, top: Sequence, bottom: Sequence, g) -> "SeqRelation":
        """Opposite of the graph of ``g`` from the bottom set to the top set."""
        return cls(top, bottom, frozenset((Tag("L", g(y)), Tag("R", y)) for y in bottom))


def seq_constant(rel: SeqRelation) -> WeightedAutomaton:
    points = sort_names(rel.carrier())
    uf = UnionFind(points)
    for s, t in rel.pairs:
        uf.union(s, t)
    cls = uf.classes()
    return WeightedAutomaton(
        tuple(set(cls.values())),
        Alphabet.empty(),
        Alphabet.empty(),
        InterfaceMap.from_dict({x: cls[Tag("L", x)] for x in rel.top}),
        InterfaceMap.from_dict({y: cls[Tag("R", y)] for y in rel.bottom}),
        {},
    )


def _points(param) -> tuple:
    if isinstance(param, Alphabet):
        return param.labels
    return tuple(param)


SEQ_WIRES = ("id", "codiag", "codiag_op", "initial", "initial_op", "twist", "delta", "delta_inv")
_SEQ_ARITY = {"id": 1, "codiag": 1, "codiag_op": 1, "initial": 1, "initial_op": 1,
              "twist": 2, "delta": 3, "delta_inv": 3}


def seq_wire_relation(kind: str, *params) -> SeqRelation:
    if kind not in _SEQ_ARITY:
        raise ArityMismatch(f"unknown sequential wire {kind!r}")
    if len(params) != _SEQ_ARITY[kind]:
        raise ArityMismatch(f"{kind} takes {_SEQ_ARITY[kind]} interface set(s), got {len(params)}")
    sets = [_points(p) for p in params]
    if kind == "id":
        (xs,) = sets
        return SeqRelation.graph(xs, xs, lambda x: x)
    if kind in ("codiag", "codiag_op"):
        (xs,) = sets
        doubled, inl, inr = coproduct(xs, xs)
        fold = {}
        if inl is not None and inr is not None:
            for x in xs:
                fold[inl(x)] = x
                fold[inr(x)] = x
        if kind == "codiag":
            return SeqRelation.graph(doubled, xs, fold.__getitem__)
        return SeqRelation.cograph(xs, doubled, fold.__getitem__)
    if kind == "initial":
        (xs,) = sets
        return SeqRelation((), xs)
    if kind == "initial_op":
        (xs,) = sets
        return SeqRelation(xs, ())
    if kind == "twist":
        xs, ys = sets
        top = pair_names(xs, ys)
        bottom = pair_names(ys, xs)
        return SeqRelation(
            tuple(top.values()),
            tuple(bottom.values()),
            frozenset((Tag("L", top[x, y]), Tag("R", bottom[y, x])) for x in xs for y in ys),
        )
    # distributive law X*Y + X*Z <-> X*(Y+Z)
    xs, ys, zs = sets
    xy, xz = pair_names(xs, ys), pair_names(xs, zs)
    split, sl, sr = coproduct(tuple(xy.values()), tuple(xz.values()))
    yz, yl, yr = coproduct(ys, zs)
    joined = pair_names(xs, yz)
    pairs = []
    for x in xs:
        for y in ys:
            pairs.append((sl(xy[x, y]), joined[x, yl(y)]))
        for z in zs:
            pairs.append((sr(xz[x, z]), joined[x, yr(z)]))
    if kind == "delta":
        return SeqRelation(split, tuple(joined.values()),
                           frozenset((Tag("L", a), Tag("R", b)) for a, b in pairs))
    return SeqRelation(tuple(joined.values()), split,
                       frozenset((Tag("L", b), Tag("R", a)) for a, b in pairs))


def seq_wire(kind: str, *params) -> WeightedAutomaton:
    return seq_constant(seq_wire_relation(kind, *params))


# --- parallel operations -----------------------------------------------------


def _product_interfaces(p, q, sn):
    tops = pair_names(p.top.domain, q.top.domain)
    bottoms = pair_names(p.bottom.domain, q.bottom.domain)
    top = {tops[x, z]: sn[s, t] for x, s in p.top.items() for z, t in q.top.items()}
    bottom = {bottoms[y, w]: sn[s, t] for y, s in p.bottom.items() for w, t in q.bottom.items()}
    return InterfaceMap.from_dict(top), InterfaceMap.from_dict(bottom)


def parallel_product(p: WeightedAutomaton, q: WeightedAutomaton) -> WeightedAutomaton:
    """Independent parallel composite: Kronecker product of the label-indexed matrices."""
    sn = pair_names(p.states, q.states)
    table = {}
    for s, a, b, t, w in p.transitions():
        for s2, c, d, t2, w2 in q.transitions():
            table[sn[s, s2], (a, c), (b, d), sn[t, t2]] = w * w2
    top, bottom = _product_interfaces(p, q, sn)
    return WeightedAutomaton(
        tuple(sn.values()), p.left.product(q.left), p.right.product(q.right), top, bottom, table
    )


def communicating_parallel(p: WeightedAutomaton, q: WeightedAutomaton) -> WeightedAutomaton:
    """Synchronise ``p``'s right signals with ``q``'s left signals, summing over them."""
    if p.right != q.left:
        raise InterfaceMismatch(
            f"right alphabet {p.right.labels!r} does not match left alphabet {q.left.labels!r}"
        )
    sn = pair_names(p.states, q.states)
    by_left = defaultdict(list)
    for s2, b, c, t2, w2 in q.transitions():
        by_left[b].append((s2, c, t2, w2))
    table = defaultdict(Fraction)
    for s, a, b, t, w in p.transitions():
        for s2, c, t2, w2 in by_left.get(b, ()):
            table[sn[s, s2], a, c, sn[t, t2]] += w * w2
    top, bottom = _product_interfaces(p, q, sn)
    return WeightedAutomaton(tuple(sn.values()), p.left, q.right, top, bottom, dict(table))


def par_constant(left: Alphabet, right: Alphabet, pairs: Iterable) -> WeightedAutomaton:
    """One-state automaton with weight 1 on every related label pair."""
    table = {}
    for a, b in pairs:
        table[UNIT, a, b, UNIT] = 1
    return WeightedAutomaton(
        (UNIT,), left, right, InterfaceMap((UNIT,), (UNIT,)), InterfaceMap((UNIT,), (UNIT,)), table
    )


PAR_WIRES = ("id", "diag", "diag_op", "proj", "proj_op", "twist", "codiag", "codiag_op")
_PAR_ARITY = {"id": 1, "diag": 1, "diag_op": 1, "proj": 1, "proj_op": 1, "twist": 2,
              "codiag": 1, "codiag_op": 1}


def par_wire(kind: str, *params: Alphabet) -> WeightedAutomaton:
    if kind not in _PAR_ARITY:
        raise ArityMismatch(f"unknown parallel wire {kind!r}")
    if len(params) != _PAR_ARITY[kind]:
        raise ArityMismatch(f"{kind} takes {_PAR_ARITY[kind]} alphabet(s), got {len(params)}")
    if kind == "twist":
        a_, b_ = params
        return par_constant(
            a_.product(b_), b_.product(a_), [((a, b), (b, a)) for a in a_ for b in b_]
        )
    (alpha,) = params
    if kind == "id":
        return par_constant(alpha, alpha, [(a, a) for a in alpha])
    if kind == "diag":
        return par_constant(alpha, alpha.product(alpha), [(a, (a, a)) for a in alpha])
    if kind == "diag_op":
        return par_constant(alpha.product(alpha), alpha, [((a, a), a) for a in alpha])
    if kind == "proj":
        return par_constant(alpha, Alphabet.unit(), [(a, EPS) for a in alpha])
    if kind == "proj_op":
        return par_constant(Alphabet.unit(), alpha, [(EPS, a) for a in alpha])
    doubled, inl, inr = alpha.sum_with_injections(alpha)
    folds = []
    if inl is not None and inr is not None:
        folds = [(inl(a), a) for a in alpha] + [(inr(a), a) for a in alpha]
    if kind == "codiag":
        return par_constant(doubled, alpha, folds)
    return par_constant(alpha, doubled, [(a, b) for b, a in folds])


# --- derived operations ------------------------------------------------------


def _require_same_alphabets(p, q, what):
    if p.left != q.left or p.right != q.right:
        raise InterfaceMismatch(f"{what} needs equal parallel interfaces on both operands")


def local_sum(p: WeightedAutomaton, q: WeightedAutomaton) -> WeightedAutomaton:
    """Sum sharing the parallel interfaces: codiag_op || (p (+) q) || codiag."""
    _require_same_alphabets(p, q, "local sum")
    return communicating_parallel(
        communicating_parallel(par_wire("codiag_op", p.left), boxplus_sum(p, q)),
        par_wire("codiag", p.right),
    )


def local_seq(p: WeightedAutomaton, q: WeightedAutomaton) -> WeightedAutomaton:
    """Sequential composite sharing the parallel interfaces."""
    _require_same_alphabets(p, q, "local sequential composition")
    return communicating_parallel(
        communicating_parallel(par_wire("codiag_op", p.left), seq_compose(p, q)),
        par_wire("codiag", p.right),
    )


def _feedback_split(aut: WeightedAutomaton, zone: Iterable):
    zone = tuple(zone)
    missing = [z for z in zone if z not in aut.top.as_dict() or z not in aut.bottom.as_dict()]
    if missing:
        raise InterfaceMismatch(
            f"feedback points {missing!r} are not on both the top and bottom interfaces"
        )
    zs = set(zone)
    xs = tuple(x for x in aut.top.domain if x not in zs)
    ys = tuple(y for y in aut.bottom.domain if y not in zs)
    return xs, ys, zone


def sfb(aut: WeightedAutomaton, zone: Iterable) -> WeightedAutomaton:
    """Sequential feedback: identify ``bottom(z)`` with ``top(z)`` for each z in ``zone``."""
    xs, ys, zone = _feedback_split(aut, zone)
    top, bottom = aut.top.as_dict(), aut.bottom.as_dict()
    return _quotient(
        aut,
        [(bottom[z], top[z]) for z in zone],
        {x: top[x] for x in xs},
        {y: bottom[y] for y in ys},
    )


def sfb_by_wires(aut: WeightedAutomaton, zone: Iterable) -> WeightedAutomaton:
    """Sequential feedback evaluated through its five-factor wire expression.

    The wire factors are built directly on the interface sets of their
    neighbours, which absorbs the associativity of ``+`` on interface sets.
    """
    xs, ys, zone = _feedback_split(aut, zone)
    middle = boxplus_sum(aut, seq_wire("id", zone))
    _, inl, inr = coproduct(aut.top.domain, zone)
    inl = inl or (lambda x: x)
    _, jnl, jnr = coproduct(aut.bottom.domain, zone)
    jnl = jnl or (lambda y: y)
    L, R = (lambda v: Tag("L", v)), (lambda v: Tag("R", v))

    f1 = seq_constant(SeqRelation(xs, xs + zone, [(L(x), R(x)) for x in xs]))
    pairs2 = [(L(x), R(inl(x))) for x in xs]
    for z in zone:
        pairs2 += [(L(z), R(inl(z))), (L(z), R(inr(z)))]
    f2 = seq_constant(SeqRelation(xs + zone, middle.top.domain, pairs2))
    pairs4 = [(L(jnl(y)), R(y)) for y in ys]
    for z in zone:
        pairs4 += [(L(jnl(z)), R(z)), (L(jnr(z)), R(z))]
    f4 = seq_constant(SeqRelation(middle.bottom.domain, ys + zone, pairs4))
    f5 = seq_constant(SeqRelation(ys + zone, ys, [(L(y), R(y)) for y in ys]))
    out = f1
    for factor in (f2, middle, f4, f5):
        out = seq_compose(out, factor)
    return out


def _factor(alpha: Alphabet, channel: Alphabet, side: str):
    """Split ``alpha = outer * channel``; ``alpha == channel`` means a unit outer factor."""
    if alpha == channel:
        return Alphabet.unit(), (lambda lab: (EPS, lab))
    firsts = []
    for lab in alpha:
        if not (isinstance(lab, tuple) and len(lab) == 2):
            raise InterfaceMismatch(f"{side} alphabet is not a product with the feedback channel")
        if lab[0] not in firsts:
            firsts.append(lab[0])
    eps = alpha.epsilon[0] if isinstance(alpha.epsilon, tuple) else None
    outer = Alphabet(tuple(firsts), eps)
    if outer.product(channel) != alpha:
        raise InterfaceMismatch(
            f"{side} alphabet does not factor as (outer x channel) for the given channel"
        )
    return outer, (lambda lab: lab)


def pfb(aut: WeightedAutomaton, channel: Alphabet) -> WeightedAutomaton:
    """Parallel feedback: sum over channel labels fed back from right to left."""
    outer_left, split_left = _factor(aut.left, channel, "left")
    outer_right, split_right = _factor(aut.right, channel, "right")
    table = defaultdict(Fraction)
    for s, a, b, t, w in aut.transitions():
        a0, c = split_left(a)
        b0, d = split_right(b)
        if c == d:
            table[s, a0, b0, t] += w
    return aut.replace(left=outer_left, right=outer_right, table=dict(table))


def pfb_by_wires(aut: WeightedAutomaton, channel: Alphabet) -> WeightedAutomaton:
    """Parallel feedback evaluated through its five-factor wire expression."""
    outer_left, split_left = _factor(aut.left, channel, "left")
    outer_right, split_right = _factor(aut.right, channel, "right")
    unit_left, unit_right = aut.left == channel, aut.right == channel
    if unit_left:
        w1 = par_constant(Alphabet.unit(), channel, [(EPS, c) for c in channel])
    else:
        w1 = par_constant(
            outer_left.product(Alphabet.unit()),
            aut.left,
            [((a, EPS), (a, c)) for a in outer_left for c in channel],
        )
    w2 = par_constant(
        aut.left, aut.left.product(channel), [(lab, (lab, split_left(lab)[1])) for lab in aut.left]
    )
    w3 = parallel_product(aut, par_wire("id", channel))
    w4 = par_constant(
        aut.right.product(channel), aut.right, [((lab, split_right(lab)[1]), lab) for lab in aut.right]
    )
    if unit_right:
        w5 = par_constant(channel, Alphabet.unit(), [(c, EPS) for c in channel])
    else:
        w5 = par_constant(
            aut.right,
            outer_right.product(Alphabet.unit()),
            [((b, c), (b, EPS)) for b in outer_right for c in channel],
        )
    out = w1
    for factor in (w2, w3, w4, w5):
        out = communicating_parallel(out, factor)
    strip = lambda lab: lab[0]  # noqa: E731
    return relabel(
        out,
        left=None if unit_left else strip,
        right=None if unit_right else strip,
        left_alphabet=outer_left,
        right_alphabet=outer_right,
    )
