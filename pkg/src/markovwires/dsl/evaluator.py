"""Evaluate declarations of a parsed model file to automata."""

from __future__ import annotations

from .. import expr as ex
from ..core import Alphabet, WeightedAutomaton, automaton
from .parser import AlphabetDecl, AutomatonDecl, ModelFile, UnknownReference


class Environment:
    """Memoising evaluator for one model file."""

    def __init__(self, model: ModelFile):
        self.model = model
        self.alphabets: dict[str, Alphabet] = {}
        for decl in model.decls:
            if isinstance(decl, AlphabetDecl):
                self.alphabets[decl.name] = Alphabet.of(*decl.symbols)
        self._decls = {d.name: d for d in model.decls if not isinstance(d, AlphabetDecl)}
        self._cache: dict[str, WeightedAutomaton] = {}

    def alphabet(self, node) -> Alphabet:
        return ex.eval_alphabet(node, self.alphabets)

    def __call__(self, name: str) -> WeightedAutomaton:
        if name in self._cache:
            return self._cache[name]
        decl = self._decls.get(name)
        if decl is None:
            raise UnknownReference(f"no automaton or let named {name!r}")
        if isinstance(decl, AutomatonDecl):
            aut = automaton(
                decl.states,
                self.alphabet(decl.left),
                self.alphabet(decl.right),
                [(t.source, t.left, t.right, t.target, t.weight) for t in decl.transitions],
                top=dict(decl.top),
                bottom=dict(decl.bottom),
            )
        else:
            aut = ex.evaluate(decl.expr, self, self.alphabets, path=name)
        self._cache[name] = aut
        return aut


def evaluate_name(model: ModelFile, name: str) -> WeightedAutomaton:
    return Environment(model)(name)
