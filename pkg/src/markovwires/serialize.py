"""JSON and Graphviz renderings of automata and analysis reports."""

from __future__ import annotations

import json
from decimal import Decimal, localcontext
from fractions import Fraction

from .analysis import AnalysisReport
from .core import Alphabet, InterfaceMap, WeightedAutomaton
from .errors import InvalidAutomaton
from .names import parse_name, render


def weight_text(w) -> str:
    w = Fraction(w)
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def parse_weight(text: str) -> Fraction:
    if not isinstance(text, str) or "." in text:
        raise InvalidAutomaton(f"weight must be an integer or p/q string, got {text!r}")
    return Fraction(text)


def decimal_text(value, digits: int = 10) -> str:
    """``value`` rounded to ``digits`` significant digits (exactly, for fractions)."""
    with localcontext() as ctx:
        ctx.prec = digits
        if isinstance(value, Fraction):
            d = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            d = +Decimal(value)
    return format(d.normalize() if d == d.to_integral_value() else d, "f")


def _alphabet_json(a: Alphabet) -> dict:
    out = {"labels": [render(x) for x in a]}
    if a.epsilon is not None:
        out["epsilon"] = render(a.epsilon)
    return out


def _interface_json(m: InterfaceMap) -> dict:
    return {"domain": [render(x) for x in m.domain], "map": {render(x): render(q) for x, q in m.items()}}


def automaton_to_dict(aut: WeightedAutomaton) -> dict:
    return {
        "states": [render(q) for q in aut.states],
        "left": _alphabet_json(aut.left),
        "right": _alphabet_json(aut.right),
        "top": _interface_json(aut.top),
        "bottom": _interface_json(aut.bottom),
        "transitions": [
            {"from": render(s), "left": render(a), "right": render(b), "to": render(t), "weight": weight_text(w)}
            for s, a, b, t, w in aut.transitions()
        ],
    }


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def automaton_to_json(aut: WeightedAutomaton) -> str:
    return dumps(automaton_to_dict(aut))


def _alphabet_from(d: dict) -> Alphabet:
    eps = d.get("epsilon")
    return Alphabet(tuple(parse_name(x) for x in d["labels"]), None if eps is None else parse_name(eps))


def _interface_from(d: dict) -> InterfaceMap:
    return InterfaceMap.from_dict({parse_name(x): parse_name(d["map"][x]) for x in d["domain"]})


def automaton_from_dict(d: dict) -> WeightedAutomaton:
    try:
        table = {}
        for rec in d["transitions"]:
            key = tuple(parse_name(rec[f]) for f in ("from", "left", "right", "to"))
            if key in table:
                raise InvalidAutomaton(f"duplicate transition {key!r}")
            table[key] = parse_weight(rec["weight"])
        return WeightedAutomaton(
            tuple(parse_name(q) for q in d["states"]),
            _alphabet_from(d["left"]),
            _alphabet_from(d["right"]),
            _interface_from(d["top"]),
            _interface_from(d["bottom"]),
            table,
        )
    except (KeyError, TypeError) as err:
        raise InvalidAutomaton(f"malformed automaton document: {err}") from None


def automaton_from_json(text: str) -> WeightedAutomaton:
    return automaton_from_dict(json.loads(text))


def _probability_json(value) -> dict:
    if isinstance(value, Fraction):
        return {"probability": weight_text(value), "decimal": decimal_text(value)}
    return {"probability": repr(float(value)), "decimal": decimal_text(value)}


def report_to_dict(report: AnalysisReport) -> dict:
    out = {
        "initial": render(report.initial),
        "reachable_count": len(report.reachable),
        "reachable": [render(q) for q in report.reachable],
        "transition_count": report.transition_count,
        "deadlocks": [render(q) for q in report.deadlocks],
    }
    if report.pf_verdict is not None:
        v = report.pf_verdict
        out["pf_verdict"] = {
            "unique_reachable_deadlock": v.unique_reachable_deadlock,
            "all_return_to_initial": v.all_return_to_initial,
            "all_have_self_loop": v.all_have_self_loop,
            "overall": v.overall,
            "conclusion": "implied" if v.overall else "not established",
        }
    out["series"] = [{"k": k, **_probability_json(p)} for k, p in report.series]
    return out


def report_to_json(report: AnalysisReport) -> str:
    return dumps(report_to_dict(report))


# --- graphviz ----------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(aut: WeightedAutomaton, name: str = "automaton") -> str:
    """One digraph; interface points become dashed satellite nodes."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for q in aut.states:
        lines.append(f"  {_quote(render(q))};")
    for s, a, b, t, w in aut.transitions():
        label = f"{render(a)}/{render(b)};{weight_text(w)}"
        lines.append(f"  {_quote(render(s))} -> {_quote(render(t))} [label={_quote(label)}];")
    for which, m in (("top", aut.top), ("bottom", aut.bottom)):
        for x, q in m.items():
            node = _quote(f"{which}:{render(x)}")
            lines.append(f"  {node} [shape=box, style=dashed, label={_quote(f'{which} {render(x)}')}];")
            if which == "top":
                lines.append(f"  {node} -> {_quote(render(q))} [style=dashed, arrowhead=none];")
            else:
                lines.append(f"  {_quote(render(q))} -> {node} [style=dashed, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
