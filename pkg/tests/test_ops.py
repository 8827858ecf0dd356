import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovwires import (
    Alphabet,
    InterfaceMap,
    SeqRelation,
    automaton,
    boxplus_sum,
    communicating_parallel,
    is_isomorphic,
    is_markov,
    is_positive,
    local_seq,
    local_sum,
    normalize,
    par_constant,
    par_wire,
    parallel_product,
    pfb,
    pfb_by_wires,
    relabel,
    seq_compose,
    seq_constant,
    seq_wire,
    sfb,
    sfb_by_wires,
    structurally_equal,
)
from markovwires.core import coproduct
from markovwires.errors import ArityMismatch, InterfaceMismatch
from markovwires.names import Tag
from markovwires.random_models import random_alphabet, random_automaton

E = "eps"
L, R = (lambda x: Tag("L", x)), (lambda x: Tag("R", x))


def sets(max_size=4):
    return [tuple(f"p{i}" for i in range(n)) for n in range(max_size + 1)]


def alphabets(max_size=4):
    return [Alphabet.of(E, *(f"s{i}" for i in range(1, n))) for n in range(1, max_size + 1)]


def with_interfaces(rng, top, bottom, **kw):
    q = random_automaton(rng, **kw)
    return q.replace(
        top=InterfaceMap.from_dict({x: rng.choice(q.states) for x in top}),
        bottom=InterfaceMap.from_dict({y: rng.choice(q.states) for y in bottom}),
    )


def single_transition(a, src="s", tgt="t", w=1, top=None, bottom=None):
    one = Alphabet.of(a)
    return automaton([src, tgt], one, one, [(src, a, a, tgt, w)], top or {}, bottom or {})


# --- sum and sequential composition ----------------------------------------------------


def test_boxplus_cardinalities(phil, fork):
    s = boxplus_sum(phil, fork)
    assert len(s.states) == 7
    assert len(s.left) == 6 and all(isinstance(a, Tag) for a in s.left)


def test_boxplus_with_empty_automaton_is_unit(example):
    empty = automaton([], example.left, example.right)
    s = boxplus_sum(example, empty)
    untag = lambda x: x.inner  # noqa: E731
    # the empty state set and interfaces leave names untouched; labels are still tagged
    back = relabel(s, left=untag, right=untag,
                   left_alphabet=example.left, right_alphabet=example.right)
    assert structurally_equal(back, example)


def test_boxplus_of_three_leaves():
    a = Alphabet.of("a")
    leaves = [automaton(["0", "1"], a, a, [("0", "a", "a", "1", w)]) for w in (2, 3, 1)]
    s = boxplus_sum(boxplus_sum(leaves[0], leaves[1]), leaves[2])
    assert len(s.states) == 6
    assert sorted(s.table.values()) == [1, 2, 3]


def test_seq_compose_identity(example):
    ident = seq_wire("id", example.bottom.domain)
    glued = seq_compose(example, ident)
    assert is_isomorphic(glued.replace(left=example.left, right=example.right), example)


def test_seq_compose_interface_mismatch(example):
    with pytest.raises(InterfaceMismatch):
        seq_compose(example, seq_wire("id", ["nope"]))


def test_seq_compose_glues_chain():
    p = single_transition("a", "1", "2", 2, bottom={"y": "2"})
    q = single_transition("a", "3", "4", 5, top={"y": "3"})
    c = seq_compose(p, q)
    assert len(c.states) == 3
    middle = c.bottom  # empty
    assert len(middle) == 0
    ins = [w for (s, _a, _b, t), w in c.table.items() if t != s]
    assert sorted(ins) == [2, 5]
    mids = {t for (s, *_r, t) in c.table} & {s for (s, *_r) in c.table}
    assert len(mids) == 1


def test_seq_constant_examples():
    xs = ("x1", "x2")
    ident = seq_constant(SeqRelation.graph(xs, xs, lambda x: x))
    assert len(ident.states) == 2
    assert [ident.top(x) for x in xs] == [ident.bottom(x) for x in xs]
    fold = seq_wire("codiag", ("a", "b"))
    assert len(fold.states) == 2
    assert fold.top(L("a")) == fold.top(R("a")) == fold.bottom("a")
    nothing = seq_constant(SeqRelation(("x",), ("y1", "y2"), ()))
    assert len(nothing.states) == 3
    assert not is_positive(nothing)


def test_seq_wire_shapes():
    tw = seq_wire("twist", ("x1", "x2"), ("y1", "y2", "y3"))
    assert len(tw.states) == 6
    assert tw.top(("x1", "y3")) == tw.bottom(("y3", "x1"))
    init = seq_wire("initial", ("a", "b", "c"))
    assert len(init.states) == 3 and len(init.top) == 0
    delta = seq_wire("delta", ("x1", "x2"), ("y",), ("z",))
    assert len(delta.states) == 4
    with pytest.raises(ArityMismatch):
        seq_wire("delta", ("x",))
    with pytest.raises(ArityMismatch):
        seq_wire("bogus", ("x",))


# --- parallel operations ---------------------------------------------------------------


def test_parallel_product(phil, fork):
    pf = parallel_product(phil, fork)
    assert len(pf.states) == 12
    assert pf.table[("1", "1"), ("t", "t"), (E, E), ("2", "2")] == F(1, 6)
    assert pf.left.epsilon == (E, E)


def test_communicating_parallel_entry(phil, fork):
    pf = communicating_parallel(phil, fork)
    assert pf.table[("2", "1"), E, E, ("3", "2")] == F(1, 6)


def test_communicating_parallel_mismatch(phil, example):
    with pytest.raises(InterfaceMismatch):
        communicating_parallel(phil, example)


def test_par_constant_examples():
    a = Alphabet.of(E, "a")
    ident = par_wire("id", a)
    assert ident.table == {((), E, E, ()): 1, ((), "a", "a", ()): 1}
    assert is_positive(ident)
    diag = par_wire("diag", a)
    assert set(diag.table) == {((), x, (x, x), ()) for x in a}
    empty = par_constant(a, a, [])
    assert not empty.table and not is_positive(empty)


def test_par_wire_examples():
    a = Alphabet.of(E, "a", "b")
    assert set(par_wire("proj", a).table) == {((), x, E, ()) for x in a}
    co = par_wire("codiag", a)
    assert set(co.table) == {((), side(x), x, ()) for x in a for side in (L, R)}
    with pytest.raises(ArityMismatch):
        par_wire("twist", a)


# --- wire laws on all small sets and alphabets ----------------------------------------------


@pytest.mark.parametrize("xs", sets())
def test_sequential_separable_law(xs):
    split = seq_wire("codiag_op", xs)
    merge = seq_wire("codiag", xs)
    assert is_isomorphic(seq_compose(split, merge), seq_wire("id", xs))


@pytest.mark.parametrize("xs,ys", list(itertools.product(sets(3), repeat=2)))
def test_sequential_twist_involution(xs, ys):
    there = seq_wire("twist", xs, ys)
    back = seq_wire("twist", ys, xs)
    assert is_isomorphic(seq_compose(there, back), seq_wire("id", there.top.domain))


@pytest.mark.parametrize("a", alphabets())
def test_parallel_separable_law(a):
    assert is_isomorphic(communicating_parallel(par_wire("diag", a), par_wire("diag_op", a)), par_wire("id", a))


@pytest.mark.parametrize("a,b", list(itertools.product(alphabets(3), repeat=2)))
def test_parallel_twist_involution(a, b):
    both = communicating_parallel(par_wire("twist", a, b), par_wire("twist", b, a))
    assert is_isomorphic(both, par_wire("id", a.product(b)))


@pytest.mark.parametrize("seed", range(20))
def test_identity_laws(seed):
    rng = random.Random(seed)
    q = with_interfaces(rng, ("x1", "x2")[: rng.randint(0, 2)], ("y1", "y2")[: rng.randint(0, 2)])
    left = seq_compose(seq_wire("id", q.top.domain), q)
    right = seq_compose(q, seq_wire("id", q.bottom.domain))
    for glued in (left, right):
        assert is_isomorphic(glued.replace(left=q.left, right=q.right), q)
    assert is_isomorphic(communicating_parallel(par_wire("id", q.left), q), q)
    assert is_isomorphic(communicating_parallel(q, par_wire("id", q.right)), q)


# --- associativity ------------------------------------------------------------------------------


def _reassoc(x):
    (a, b), c = x
    return (a, (b, c))


@pytest.mark.parametrize("seed", range(15))
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c, d = (random_alphabet(rng, 2, p) for p in "abcd")
    p = random_automaton(rng, a, b, max_states=3, max_points=2)
    q = random_automaton(rng, b, c, max_states=3, max_points=2)
    r = random_automaton(rng, c, d, max_states=3, max_points=2)

    assert is_isomorphic(
        communicating_parallel(communicating_parallel(p, q), r),
        communicating_parallel(p, communicating_parallel(q, r)),
    )
    lhs = parallel_product(parallel_product(p, q), r)
    rhs = parallel_product(p, parallel_product(q, r))
    assert set(lhs.top.domain) == set(rhs.top.domain)
    moved = relabel(lhs, left=_reassoc, right=_reassoc, left_alphabet=rhs.left, right_alphabet=rhs.right)
    assert is_isomorphic(moved, rhs)

    s1 = boxplus_sum(boxplus_sum(p, q), r)
    s2 = boxplus_sum(p, boxplus_sum(q, r))
    assert is_isomorphic(_retag(s1, s2, (p, q, r), points=True), s2)

    ys, zs = ("m1", "m2")[: rng.randint(0, 2)], ("n1",)
    p2 = with_interfaces(rng, ("x",), ys, max_states=3)
    q2 = with_interfaces(rng, ys, zs, max_states=3)
    r2 = with_interfaces(rng, zs, ("w",), max_states=3)
    one = seq_compose(seq_compose(p2, q2), r2)
    two = seq_compose(p2, seq_compose(q2, r2))
    assert is_isomorphic(_retag(one, two, (p2, q2, r2)), two)


def _nested_names(parts, right_nested):
    """{(i, element): name} inside ((A+B)+C) or (A+(B+C)), honouring the empty-summand rule."""
    ident = lambda x: x  # noqa: E731

    def inj(xs, ys):
        _, inl, inr = coproduct(xs, ys)
        return inl or ident, inr or ident

    a, b, c = parts
    if right_nested:
        bl, br = inj(b, c)
        inner = tuple(bl(x) for x in b) + tuple(br(x) for x in c)
        ol, orr = inj(a, inner)
        return {**{(0, x): ol(x) for x in a}, **{(1, x): orr(bl(x)) for x in b},
                **{(2, x): orr(br(x)) for x in c}}
    al, ar = inj(a, b)
    inner = tuple(al(x) for x in a) + tuple(ar(x) for x in b)
    ol, orr = inj(inner, c)
    return {**{(0, x): ol(al(x)) for x in a}, **{(1, x): ol(ar(x)) for x in b},
            **{(2, x): orr(x) for x in c}}


def _reassoc_map(parts):
    lhs, rhs = _nested_names(parts, False), _nested_names(parts, True)
    table = {lhs[k]: rhs[k] for k in lhs}
    return table.__getitem__


def _retag(lhs, rhs, parts, points=False):
    fl = _reassoc_map([x.left.labels for x in parts])
    fr = _reassoc_map([x.right.labels for x in parts])
    top = _reassoc_map([x.top.domain for x in parts]) if points else None
    bottom = _reassoc_map([x.bottom.domain for x in parts]) if points else None
    return relabel(lhs, left=fl, right=fr, left_alphabet=rhs.left, right_alphabet=rhs.right,
                   top=top, bottom=bottom)


# --- local operations ----------------------------------------------------------------------------


def test_local_sum_keeps_single_alphabet():
    a = Alphabet.of("a")
    leaves = [automaton(["0", "1"], a, a, [("0", "a", "a", "1", w)], {"s": "0"}, {"t": "1"}) for w in (2, 3, 1)]
    s = local_sum(local_sum(leaves[0], leaves[1]), leaves[2])
    assert len(s.states) == 6
    assert s.left == a and s.right == a
    assert sorted(s.table.values()) == [1, 2, 3]
    assert len(s.top) == 3


def test_local_sum_with_empty(example):
    empty = automaton([], example.left, example.right)
    assert is_isomorphic(local_sum(example, empty), example)


@pytest.mark.parametrize("seed", range(10))
def test_local_sum_weights_are_union(seed):
    rng = random.Random(seed)
    a, b = random_alphabet(rng), random_alphabet(rng)
    p, q = random_automaton(rng, a, b), random_automaton(rng, a, b)
    s = local_sum(p, q)
    assert sorted(s.table.values()) == sorted(list(p.table.values()) + list(q.table.values()))


def test_local_sum_needs_equal_alphabets(phil, example):
    with pytest.raises(InterfaceMismatch):
        local_sum(phil, example)


def test_local_seq_identity(example):
    glued = local_seq(example, seq_wire("id", example.bottom.domain).replace(left=example.left, right=example.right))
    assert is_isomorphic(glued, example)


def test_party_chain(lib):
    child, right = lib("Child"), lib("R")
    cr = local_seq(child, right)
    assert len(cr.states) == 5
    full = local_seq(local_seq(cr, lib("EmptySeat")), lib("L"))
    # the far end of L stays apart from the child until the feedback closes the loop
    assert len(full.states) == 6
    assert full.top.domain == ("p",) and full.bottom.domain == ("p",)


# --- feedback ------------------------------------------------------------------------------------


def test_seat_automaton(lib):
    s = lib("S")
    assert s.states == ("1", "2", "3", "4", "5")
    ee = (E, E)
    assert s.table["1", ee, ("x", E), "5"] == 1
    assert s.table["5", ("x", E), ee, "1"] == 1
    assert s.table["5", ee, ee, "5"] == 1
    assert len(s.table) == 11
    assert is_positive(s)


def test_sfb_empty_zone(example):
    assert structurally_equal(sfb(example, ()), example)


def test_sfb_already_glued():
    a = Alphabet.of("a")
    q = automaton(["1", "2"], a, a, [("1", "a", "a", "2", 1)], {"z": "1", "x": "2"}, {"z": "1"})
    out = sfb(q, ["z"])
    assert structurally_equal(out, q.replace(top=InterfaceMap.from_dict({"x": "2"}), bottom=InterfaceMap()))


def test_sfb_needs_common_points(example):
    with pytest.raises(InterfaceMismatch):
        sfb(example, ["y"])


@pytest.mark.parametrize("seed", range(40))
def test_sfb_agrees_with_wire_formula(seed):
    rng = random.Random(seed)
    zone = ("z1", "z2")[: rng.randint(1, 2)]
    xs, ys = ("x1",)[: rng.randint(0, 1)], ("y1", "y2")[: rng.randint(0, 2)]
    q = with_interfaces(rng, xs + zone, ys + zone)
    direct = sfb(q, zone)
    wired = sfb_by_wires(q, zone)
    assert is_isomorphic(wired.replace(left=direct.left, right=direct.right), direct)


def test_pfb_singleton_channel():
    rng = random.Random(7)
    a, b, c = random_alphabet(rng), random_alphabet(rng, prefix="b"), Alphabet.unit()
    q = random_automaton(rng, a.product(c), b.product(c))
    out = pfb(q, c)
    back = relabel(q, left=lambda x: x[0], right=lambda y: y[0], left_alphabet=a, right_alphabet=b)
    assert structurally_equal(out, back)


@pytest.mark.parametrize("seed", range(40))
def test_pfb_agrees_with_sum_and_wire_formula(seed):
    rng = random.Random(seed)
    a, b, c = random_alphabet(rng, 2, "a"), random_alphabet(rng, 2, "b"), random_alphabet(rng, 3, "c")
    whole = seed % 4 == 0  # no outer factor at all
    left = c if whole else a.product(c)
    right = c if whole else b.product(c)
    q = random_automaton(rng, left, right, positive=False, extra=4)
    out = pfb(q, c)
    # independent oracle: sum the diagonal channel labels
    oracle = {}
    for s, x, y, t, w in q.transitions():
        (a0, c0), (b0, d0) = ((E, x), (E, y)) if whole else (x, y)
        if c0 == d0:
            oracle[s, a0, b0, t] = oracle.get((s, a0, b0, t), 0) + w
    assert out.table == oracle
    assert structurally_equal(pfb_by_wires(q, c), out)


def test_pfb_rejects_unfactorable(example):
    with pytest.raises(InterfaceMismatch):
        pfb(example, Alphabet.of("zz"))


def test_dining_closed_and_markov(lib):
    df = lib("DF2")
    assert df.left == Alphabet.unit() and df.right == Alphabet.unit()
    assert len(df.states) == 144 and is_markov(df)


# --- normalization is not compositional for sequential composition -------------------------------


def witness():
    a = Alphabet.of(E, "a")
    p = automaton(["s"], a, a, [("s", E, E, "s", 1), ("s", "a", "a", "s", 1)], bottom={"y": "s"})
    q = automaton(["r"], a, a, [("r", E, E, "r", 1)], top={"y": "r"})
    return p, q


def test_normalization_not_compositional():
    p, q = witness()
    whole = normalize(seq_compose(p, q))
    parts = normalize(seq_compose(normalize(p), normalize(q)))
    assert not structurally_equal(whole, parts)
    assert sorted(whole.table.values()) == [F(1, 3)] * 3
    assert sorted(parts.table.values()) == [F(1, 4), F(1, 4), F(1, 2)]


# --- lemmas -------------------------------------------------------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_normalization_lemmas(r):
    a, b, c = (random_alphabet(r, 3, p) for p in "abc")
    q, s = random_automaton(r, a, b), random_automaton(r, b, c)
    assert structurally_equal(normalize(parallel_product(q, s)), parallel_product(normalize(q), normalize(s)))
    assert structurally_equal(
        normalize(communicating_parallel(normalize(q), normalize(s))), normalize(communicating_parallel(q, s))
    )
    assert is_markov(parallel_product(normalize(q), normalize(s)))
