"""Canonical text rendering of model files."""

from __future__ import annotations

from fractions import Fraction

from .. import expr as ex
from ..names import render
from .parser import AlphabetDecl, AutomatonDecl, ModelFile


def weight_text(w: Fraction) -> str:
    w = Fraction(w)
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def alpha_text(node) -> str:
    if isinstance(node, ex.AlphaRef):
        return node.name
    if isinstance(node, ex.AlphaUnit):
        return "unit"
    if isinstance(node, ex.AlphaSet):
        return "{" + ", ".join(node.symbols) + "}"
    op = " * " if isinstance(node, ex.AlphaProduct) else " + "
    same = type(node)
    lhs = alpha_text(node.left)
    if isinstance(node.left, (ex.AlphaProduct, ex.AlphaSum)) and not isinstance(node.left, same):
        lhs = f"({lhs})"
    rhs = alpha_text(node.right)
    if isinstance(node.right, (ex.AlphaProduct, ex.AlphaSum)):
        rhs = f"({rhs})"
    return lhs + op + rhs


def _set(items) -> str:
    return "{" + ", ".join(render(x) for x in items) + "}"


def expr_text(node) -> str:
    if isinstance(node, ex.Ref):
        return node.name
    if isinstance(node, ex.Literal):
        return node.name
    if isinstance(node, ex.Binary):
        lhs = expr_text(node.left)
        if isinstance(node.left, ex.Binary) and type(node.left) is not type(node):
            lhs = f"({lhs})"
        rhs = expr_text(node.right)
        if isinstance(node.right, ex.Binary):
            rhs = f"({rhs})"
        return f"{lhs} {node.op} {rhs}"
    if isinstance(node, ex.Normalize):
        return f"norm({expr_text(node.expr)})"
    if isinstance(node, ex.Power):
        return f"pow[{node.k}]({expr_text(node.expr)})"
    if isinstance(node, ex.Sfb):
        return f"sfb[{_set(node.points)}]({expr_text(node.expr)})"
    if isinstance(node, ex.Pfb):
        return f"pfb[{alpha_text(node.channel)}]({expr_text(node.expr)})"
    if isinstance(node, (ex.SeqWire, ex.ParWire)):
        word = "seqwire" if isinstance(node, ex.SeqWire) else "parwire"
        return f"{word}[{node.kind}; " + ", ".join(alpha_text(p) for p in node.params) + "]"
    if isinstance(node, ex.SeqConstant):
        pairs = ", ".join(f"{render(a)} = {render(b)}" for a, b in node.pairs)
        return f"seqconst[{_set(node.top)}; {_set(node.bottom)}; {pairs}]"
    if isinstance(node, ex.ParConstant):
        pairs = ", ".join(f"{render(a)}/{render(b)}" for a, b in node.pairs)
        return f"parconst[{alpha_text(node.left)}; {alpha_text(node.right)}; {pairs}]"
    if isinstance(node, ex.Rename):
        pairs = ", ".join(f"{render(a)} -> {render(b)}" for a, b in node.mapping)
        return f"rename[{pairs}]({expr_text(node.expr)})"
    raise TypeError(f"cannot print {node!r}")


def _automaton_text(d: AutomatonDecl) -> str:
    lines = [f"automaton {d.name} {{"]
    lines.append(f"  left {alpha_text(d.left)};")
    lines.append(f"  right {alpha_text(d.right)};")
    for which, pairs in (("top", d.top), ("bottom", d.bottom)):
        lines.append(f"  {which} {_set(p for p, _ in pairs)} -> {_set(q for _, q in pairs)};")
    lines.append("  states" + "".join(" " + s for s in d.states) + ";")
    for t in d.transitions:
        lines.append(
            f"  {t.source} -[{render(t.left)}/{render(t.right)}]-> {t.target} : {weight_text(t.weight)};"
        )
    lines.append("}")
    return "\n".join(lines)


def pretty_print(model: ModelFile) -> str:
    blocks = []
    for d in model.decls:
        if isinstance(d, AlphabetDecl):
            blocks.append(f"alphabet {d.name} = {{{', '.join(d.symbols)}}}")
        elif isinstance(d, AutomatonDecl):
            blocks.append(_automaton_text(d))
        else:
            blocks.append(f"let {d.name} = {expr_text(d.expr)}")
    return "\n\n".join(blocks) + ("\n" if blocks else "")
