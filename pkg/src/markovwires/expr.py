"""Expression trees over automata and their evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, ClassVar

from . import ops
from .core import Alphabet, WeightedAutomaton, k_step_automaton, normalize, relabel
from .errors import AutomatonError

# --- alphabet expressions ----------------------------------------------------


@dataclass(frozen=True)
class AlphaRef:
    name: str


@dataclass(frozen=True)
class AlphaUnit:
    pass


@dataclass(frozen=True)
class AlphaSet:
    """Inline set of symbols; ``eps`` marks the epsilon."""

    symbols: tuple


@dataclass(frozen=True)
class AlphaProduct:
    left: object
    right: object


@dataclass(frozen=True)
class AlphaSum:
    left: object
    right: object


def eval_alphabet(node, alphabets: dict) -> Alphabet:
    if isinstance(node, Alphabet):
        return node
    if isinstance(node, AlphaRef):
        if node.name not in alphabets:
            raise UnknownReference(f"unknown alphabet {node.name!r}")
        return alphabets[node.name]
    if isinstance(node, AlphaUnit):
        return Alphabet.unit()
    if isinstance(node, AlphaSet):
        return Alphabet.of(*node.symbols)
    if isinstance(node, AlphaProduct):
        return eval_alphabet(node.left, alphabets).product(eval_alphabet(node.right, alphabets))
    if isinstance(node, AlphaSum):
        return eval_alphabet(node.left, alphabets).sum(eval_alphabet(node.right, alphabets))
    raise TypeError(f"not an alphabet expression: {node!r}")


# --- automaton expressions ---------------------------------------------------


class UnknownReference(AutomatonError):
    pass


class EvaluationError(AutomatonError):
    """An operation failed while evaluating the sub-expression at ``path``."""

    def __init__(self, path: str, cause: Exception):
        super().__init__(f"{path}: {type(cause).__name__}: {cause}")
        self.path = path
        self.cause = cause


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Literal:
    """An automaton value embedded in an expression, printed by name."""

    name: str
    automaton: WeightedAutomaton = field(compare=False)


@dataclass(frozen=True)
class Binary:
    left: object
    right: object
    op: ClassVar[str] = ""
    func: ClassVar[Callable] = None


@dataclass(frozen=True)
class BoxplusSum(Binary):
    op: ClassVar[str] = "oplus"
    func: ClassVar[Callable] = staticmethod(ops.boxplus_sum)


@dataclass(frozen=True)
class SeqCompose(Binary):
    op: ClassVar[str] = ";;"
    func: ClassVar[Callable] = staticmethod(ops.seq_compose)


@dataclass(frozen=True)
class LocalSum(Binary):
    op: ClassVar[str] = "+"
    func: ClassVar[Callable] = staticmethod(ops.local_sum)


@dataclass(frozen=True)
class LocalSeq(Binary):
    op: ClassVar[str] = "."
    func: ClassVar[Callable] = staticmethod(ops.local_seq)


@dataclass(frozen=True)
class ParallelProduct(Binary):
    op: ClassVar[str] = "x"
    func: ClassVar[Callable] = staticmethod(ops.parallel_product)


@dataclass(frozen=True)
class CommunicatingParallel(Binary):
    op: ClassVar[str] = "||"
    func: ClassVar[Callable] = staticmethod(ops.communicating_parallel)


BINARY_OPS = {cls.op: cls for cls in (BoxplusSum, SeqCompose, LocalSum, LocalSeq,
                                      ParallelProduct, CommunicatingParallel)}


@dataclass(frozen=True)
class Normalize:
    expr: object


@dataclass(frozen=True)
class Power:
    k: int
    expr: object


@dataclass(frozen=True)
class Sfb:
    points: tuple
    expr: object


@dataclass(frozen=True)
class Pfb:
    channel: object
    expr: object


@dataclass(frozen=True)
class SeqWire:
    kind: str
    params: tuple


@dataclass(frozen=True)
class ParWire:
    kind: str
    params: tuple


@dataclass(frozen=True)
class SeqConstant:
    """``top`` and ``bottom`` are point tuples; pairs join ``L:x`` (top) / ``R:y`` (bottom)."""

    top: tuple
    bottom: tuple
    pairs: tuple


@dataclass(frozen=True)
class ParConstant:
    left: object
    right: object
    pairs: tuple


@dataclass(frozen=True)
class Rename:
    """Rename states; ``mapping`` is a tuple of ``(old, new)`` names."""

    mapping: tuple
    expr: object


def _seq_points(node, alphabets) -> tuple:
    if isinstance(node, tuple):
        return node
    return eval_alphabet(node, alphabets).labels


def evaluate(
    node,
    automata: Callable[[str], WeightedAutomaton] | dict | None = None,
    alphabets: dict | None = None,
    path: str = "",
) -> WeightedAutomaton:
    """Evaluate an expression bottom-up.

    ``automata`` resolves names (a dict or a callable); ``alphabets`` maps
    alphabet names to :class:`Alphabet`.  Operation errors are re-raised as
    :class:`EvaluationError` carrying the path of the failing node.
    """
    alphabets = alphabets or {}
    if automata is None:
        automata = {}
    if isinstance(automata, dict):
        table = automata

        def lookup(name):
            if name not in table:
                raise UnknownReference(f"unknown automaton {name!r}")
            return table[name]
    else:
        lookup = automata

    def go(n, where):
        try:
            return step(n, where)
        except EvaluationError:
            raise
        except AutomatonError as err:
            raise EvaluationError(where or "<root>", err) from err

    def step(n, where):
        if isinstance(n, Ref):
            return lookup(n.name)
        if isinstance(n, Literal):
            return n.automaton
        if isinstance(n, Binary):
            lhs = go(n.left, f"{where}/{n.op}[0]")
            rhs = go(n.right, f"{where}/{n.op}[1]")
            return n.func(lhs, rhs)
        if isinstance(n, Normalize):
            return normalize(go(n.expr, f"{where}/norm"))
        if isinstance(n, Power):
            return k_step_automaton(go(n.expr, f"{where}/pow"), n.k)
        if isinstance(n, Sfb):
            return ops.sfb(go(n.expr, f"{where}/sfb"), n.points)
        if isinstance(n, Pfb):
            return ops.pfb(go(n.expr, f"{where}/pfb"), eval_alphabet(n.channel, alphabets))
        if isinstance(n, SeqWire):
            return ops.seq_wire(n.kind, *(_seq_points(p, alphabets) for p in n.params))
        if isinstance(n, ParWire):
            return ops.par_wire(n.kind, *(eval_alphabet(p, alphabets) for p in n.params))
        if isinstance(n, SeqConstant):
            return ops.seq_constant(ops.SeqRelation(n.top, n.bottom, n.pairs))
        if isinstance(n, ParConstant):
            return ops.par_constant(
                eval_alphabet(n.left, alphabets), eval_alphabet(n.right, alphabets), n.pairs
            )
        if isinstance(n, Rename):
            aut = go(n.expr, f"{where}/rename")
            mapping = dict(n.mapping)
            unknown = set(mapping) - set(aut.states)
            if unknown:
                raise UnknownReference(f"rename of unknown states {sorted(map(str, unknown))}")
            return relabel(aut, states=lambda q: mapping.get(q, q))
        raise TypeError(f"not an expression node: {n!r}")

    return go(node, path)


def iter_literals(node):
    if isinstance(node, Literal):
        yield node
    elif isinstance(node, Binary):
        yield from iter_literals(node.left)
        yield from iter_literals(node.right)
    elif hasattr(node, "expr"):
        yield from iter_literals(node.expr)

