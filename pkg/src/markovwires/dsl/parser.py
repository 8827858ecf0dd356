"""Recursive-descent parser for ``.mka`` model files.

Grammar (whitespace-insensitive, ``#`` starts a line comment)::

    file      := decl*
    decl      := "alphabet" NAME "=" "{" [NAME ("," NAME)*] "}"
               | "automaton" NAME "{" header trans* "}"
               | "let" NAME "=" expr
    header    := "left" alpha ";" "right" alpha ";"
                 "top" set "->" set ";" "bottom" set "->" set ";"
                 "states" NAME* ";"
    alpha     := alphatom (("*" | "+") alphatom)*      # one operator per chain
    alphatom  := NAME | "unit" | "{" [NAME ("," NAME)*] "}" | "(" alpha ")"
    trans     := NAME "-[" label "/" label "]->" NAME ":" weight ";"
    label     := NAME | "(" label ("," label)* ")" | ("L" | "R") ":" label
    weight    := INT | INT "/" INT
    expr      := atom (binop atom)*                    # one binop kind per chain
    binop     := "oplus" | ";;" | "+" | "." | "x" | "||"
    atom      := NAME | "(" expr ")" | "norm" "(" expr ")"
               | "pow" "[" INT "]" "(" expr ")"
               | "sfb" "[" set "]" "(" expr ")" | "pfb" "[" alpha "]" "(" expr ")"
               | "seqwire" "[" KIND ";" alpha ("," alpha)* "]"
               | "parwire" "[" KIND ";" alpha ("," alpha)* "]"
               | "seqconst" "[" set ";" set ";" [end "=" end ("," end "=" end)*] "]"
               | "parconst" "[" alpha ";" alpha ";" [label "/" label ("," ...)*] "]"
               | "rename" "[" label "->" label ("," label "->" label)* "]" "(" expr ")"

In ``top {x, y} -> {1, 3}`` the second set lists the images of the first,
position by position.  ``seqconst`` endpoints are ``L:x`` for top points and
``R:y`` for bottom points.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .. import expr as ex
from ..core import Alphabet
from ..errors import AutomatonError
from ..names import Tag

KEYWORDS = {
    "alphabet", "automaton", "let", "left", "right", "top", "bottom", "states", "unit",
    "norm", "pow", "sfb", "pfb", "seqwire", "parwire", "seqconst", "parconst", "rename",
    "oplus", "x",
}


class DslError(AutomatonError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.col = col


class DslSyntaxError(DslError):
    pass


class DuplicateName(DslError):
    pass


class UnknownReference(DslError, ex.UnknownReference):
    pass


class InvalidWeight(DslError):
    pass


class AmbiguousExpression(DslError):
    pass


# --- declarations ------------------------------------------------------------


@dataclass(frozen=True)
class AlphabetDecl:
    name: str
    symbols: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TransitionDecl:
    source: str
    left: object
    right: object
    target: str
    weight: Fraction


@dataclass(frozen=True)
class AutomatonDecl:
    name: str
    left: object
    right: object
    top: tuple  # ((point, state), ...)
    bottom: tuple
    states: tuple
    transitions: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class LetDecl:
    name: str
    expr: object
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ModelFile:
    decls: tuple = ()

    @property
    def alphabets(self) -> dict:
        return {d.name: d for d in self.decls if isinstance(d, AlphabetDecl)}

    @property
    def automata(self) -> dict:
        return {d.name: d for d in self.decls if isinstance(d, AutomatonDecl)}

    @property
    def lets(self) -> dict:
        return {d.name: d for d in self.decls if isinstance(d, LetDecl)}

    def names(self) -> list:
        return [d.name for d in self.decls if not isinstance(d, AlphabetDecl)]

    def __add__(self, other: "ModelFile") -> "ModelFile":
        return ModelFile(self.decls + other.decls)


# --- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<punct>\]->|-\[|->|;;|\|\||[{}()\[\],;/:=*+.~])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str  # name | int | punct | eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# --- parser ------------------------------------------------------------------


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "name") and self.tok.text == text

    def error(self, message: str, tok: Token | None = None, cls=DslSyntaxError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.col)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of file"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def name(self, what: str = "name", allow_keyword: bool = False) -> str:
        tok = self.tok
        if tok.kind == "int" or (tok.kind == "name" and (allow_keyword or tok.text not in KEYWORDS)):
            self.advance()
            return tok.text
        found = tok.text or "end of file"
        raise self.error(f"expected {what}, found {found!r}")

    def comma_list(self, item, close: str) -> list:
        items = []
        if self.at(close):
            return items
        items.append(item())
        while self.at(","):
            self.advance()
            items.append(item())
        return items

    # file
    def parse_file(self) -> ModelFile:
        decls = []
        while self.tok.kind != "eof":
            if self.at("alphabet"):
                decls.append(self.alphabet_decl())
            elif self.at("automaton"):
                decls.append(self.automaton_decl())
            elif self.at("let"):
                decls.append(self.let_decl())
            else:
                raise self.error(f"expected a declaration, found {self.tok.text!r}")
        return ModelFile(tuple(decls))

    def alphabet_decl(self) -> AlphabetDecl:
        start = self.expect("alphabet")
        name = self.name("alphabet name")
        self.expect("=")
        self.expect("{")
        symbols = self.comma_list(lambda: self.name("label", allow_keyword=True), "}")
        self.expect("}")
        return AlphabetDecl(name, tuple(symbols), (start.line, start.col))

    def point_set(self) -> tuple:
        self.expect("{")
        items = self.comma_list(lambda: self.name("interface point", allow_keyword=True), "}")
        self.expect("}")
        return tuple(items)

    def interface(self, which: str) -> tuple:
        self.expect(which)
        points_tok = self.tok
        points = self.point_set()
        self.expect("->")
        images = self.point_set()
        self.expect(";")
        if len(points) != len(images):
            raise self.error(
                f"{which} interface lists {len(points)} points but {len(images)} images", points_tok
            )
        return tuple(zip(points, images))

    def automaton_decl(self) -> AutomatonDecl:
        start = self.expect("automaton")
        name = self.name("automaton name")
        self.expect("{")
        self.expect("left")
        left = self.alpha()
        self.expect(";")
        self.expect("right")
        right = self.alpha()
        self.expect(";")
        top = self.interface("top")
        bottom = self.interface("bottom")
        self.expect("states")
        states = []
        while not self.at(";"):
            states.append(self.name("state name", allow_keyword=True))
        self.expect(";")
        transitions = []
        while not self.at("}"):
            transitions.append(self.transition())
        self.expect("}")
        return AutomatonDecl(name, left, right, top, bottom, tuple(states), tuple(transitions),
                             (start.line, start.col))

    def transition(self) -> TransitionDecl:
        src = self.name("source state", allow_keyword=True)
        self.expect("-[")
        a = self.label()
        self.expect("/")
        b = self.label()
        self.expect("]->")
        tgt = self.name("target state", allow_keyword=True)
        self.expect(":")
        w = self.weight()
        self.expect(";")
        return TransitionDecl(src, a, b, tgt, w)

    def weight(self) -> Fraction:
        tok = self.tok
        if tok.kind != "int":
            raise self.error(f"expected a weight, found {tok.text!r}", cls=InvalidWeight)
        num = int(self.advance().text)
        den = 1
        if self.at("."):
            raise self.error("decimal weights are not allowed; write p/q", tok, InvalidWeight)
        if self.at("/"):
            self.advance()
            if self.tok.kind != "int":
                raise self.error("expected a denominator", cls=InvalidWeight)
            den = int(self.advance().text)
        if den == 0 or num == 0:
            raise self.error(f"weight must be positive, got {num}/{den}", tok, InvalidWeight)
        return Fraction(num, den)

    def label(self):
        if self.at("("):
            self.advance()
            items = [self.label()]
            while self.at(","):
                self.advance()
                items.append(self.label())
            self.expect(")")
            return tuple(items)
        if self.tok.kind == "name" and self.tok.text in ("L", "R") and self.peek().text == ":":
            side = self.advance().text
            self.advance()
            return Tag(side, self.label())
        return self.name("label", allow_keyword=True)

    # alphabet expressions
    def alpha(self):
        first_tok = self.tok
        node = self.alpha_atom()
        op = None
        while self.at("*") or self.at("+"):
            tok = self.advance()
            if op is not None and tok.text != op:
                raise self.error("mixing '*' and '+' needs parentheses", tok, AmbiguousExpression)
            op = tok.text
            rhs = self.alpha_atom()
            node = ex.AlphaProduct(node, rhs) if op == "*" else ex.AlphaSum(node, rhs)
        del first_tok
        return node

    def alpha_atom(self):
        if self.at("("):
            self.advance()
            node = self.alpha()
            self.expect(")")
            return node
        if self.at("unit"):
            self.advance()
            return ex.AlphaUnit()
        if self.at("{"):
            self.advance()
            symbols = self.comma_list(lambda: self.name("label", allow_keyword=True), "}")
            self.expect("}")
            return ex.AlphaSet(tuple(symbols))
        return ex.AlphaRef(self.name("alphabet name"))

    # automaton expressions
    def let_decl(self) -> LetDecl:
        start = self.expect("let")
        name = self.name("name")
        self.expect("=")
        return LetDecl(name, self.expr(), (start.line, start.col))

    BINOPS = ("oplus", ";;", "+", ".", "x", "||")

    def at_binop(self) -> bool:
        return any(self.at(op) for op in self.BINOPS)

    def expr(self):
        node = self.atom()
        op = None
        while self.at_binop():
            tok = self.advance()
            if op is not None and tok.text != op:
                raise self.error(
                    f"mixing {op!r} and {tok.text!r} without parentheses is ambiguous",
                    tok,
                    AmbiguousExpression,
                )
            op = tok.text
            node = ex.BINARY_OPS[op](node, self.atom())
        return node

    def atom(self):
        tok = self.tok
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if self.at("norm"):
            self.advance()
            return ex.Normalize(self.parenthesised())
        if self.at("pow"):
            self.advance()
            self.expect("[")
            if self.tok.kind != "int":
                raise self.error("expected a step count")
            k = int(self.advance().text)
            self.expect("]")
            return ex.Power(k, self.parenthesised())
        if self.at("sfb"):
            self.advance()
            self.expect("[")
            points = self.point_set()
            self.expect("]")
            return ex.Sfb(points, self.parenthesised())
        if self.at("pfb"):
            self.advance()
            self.expect("[")
            channel = self.alpha()
            self.expect("]")
            return ex.Pfb(channel, self.parenthesised())
        if self.at("seqwire") or self.at("parwire"):
            which = self.advance().text
            self.expect("[")
            kind = self.name("wire kind", allow_keyword=True)
            self.expect(";")
            params = [self.alpha()]
            while self.at(","):
                self.advance()
                params.append(self.alpha())
            self.expect("]")
            cls = ex.SeqWire if which == "seqwire" else ex.ParWire
            return cls(kind, tuple(params))
        if self.at("seqconst"):
            self.advance()
            self.expect("[")
            top = self.point_set()
            self.expect(";")
            bottom = self.point_set()
            self.expect(";")

            def end_pair():
                a = self.label()
                self.expect("=")
                return (a, self.label())

            pairs = self.comma_list(end_pair, "]")
            self.expect("]")
            return ex.SeqConstant(top, bottom, tuple(pairs))
        if self.at("parconst"):
            self.advance()
            self.expect("[")
            left = self.alpha()
            self.expect(";")
            right = self.alpha()
            self.expect(";")

            def label_pair():
                a = self.label()
                self.expect("/")
                return (a, self.label())

            pairs = self.comma_list(label_pair, "]")
            self.expect("]")
            return ex.ParConstant(left, right, tuple(pairs))
        if self.at("rename"):
            self.advance()
            self.expect("[")

            def mapping():
                old = self.label()
                self.expect("->")
                return (old, self.label())

            pairs = self.comma_list(mapping, "]")
            self.expect("]")
            return ex.Rename(tuple(pairs), self.parenthesised())
        if tok.kind in ("name", "int") and tok.text not in KEYWORDS:
            self.advance()
            return ex.Ref(tok.text)
        raise self.error(f"expected an expression, found {tok.text or 'end of file'!r}")

    def parenthesised(self):
        self.expect("(")
        node = self.expr()
        self.expect(")")
        return node


def parse(text: str) -> ModelFile:
    """Parse and check a model file; raise a :class:`DslError` on the first problem."""
    model = Parser(text).parse_file()
    check(model)
    return model


# --- static checks -----------------------------------------------------------


def _alpha_refs(node):
    if isinstance(node, ex.AlphaRef):
        yield node.name
    elif isinstance(node, (ex.AlphaProduct, ex.AlphaSum)):
        yield from _alpha_refs(node.left)
        yield from _alpha_refs(node.right)


def _expr_refs(node):
    """Yield ('automaton' | 'alphabet', name) references in an expression."""
    if isinstance(node, ex.Ref):
        yield "automaton", node.name
    elif isinstance(node, ex.Binary):
        yield from _expr_refs(node.left)
        yield from _expr_refs(node.right)
    elif isinstance(node, (ex.SeqWire, ex.ParWire)):
        for p in node.params:
            for n in _alpha_refs(p):
                yield "alphabet", n
    elif isinstance(node, ex.ParConstant):
        for p in (node.left, node.right):
            for n in _alpha_refs(p):
                yield "alphabet", n
    if isinstance(node, ex.Pfb):
        for n in _alpha_refs(node.channel):
            yield "alphabet", n
    if hasattr(node, "expr"):
        yield from _expr_refs(node.expr)


def check(model: ModelFile) -> None:
    alphabets: dict = {}
    automata: set = set()
    for decl in model.decls:
        line, col = decl.pos
        if isinstance(decl, AlphabetDecl):
            if decl.name in alphabets:
                raise DuplicateName(f"alphabet {decl.name!r} declared twice", line, col)
            try:
                alphabets[decl.name] = Alphabet.of(*decl.symbols)
            except AutomatonError as err:
                raise DslSyntaxError(str(err), line, col) from None
            continue
        if decl.name in automata:
            raise DuplicateName(f"{decl.name!r} declared twice", line, col)
        if isinstance(decl, AutomatonDecl):
            _check_automaton(decl, alphabets)
        else:
            for kind, name in _expr_refs(decl.expr):
                pool = alphabets if kind == "alphabet" else automata
                if name not in pool:
                    raise UnknownReference(f"{decl.name}: unknown {kind} {name!r}", line, col)
        automata.add(decl.name)


def _check_automaton(decl: AutomatonDecl, alphabets: dict) -> None:
    line, col = decl.pos
    for node in (decl.left, decl.right):
        for name in _alpha_refs(node):
            if name not in alphabets:
                raise UnknownReference(f"{decl.name}: unknown alphabet {name!r}", line, col)
    left = ex.eval_alphabet(decl.left, alphabets)
    right = ex.eval_alphabet(decl.right, alphabets)
    states = set(decl.states)
    if len(states) != len(decl.states):
        raise DuplicateName(f"{decl.name}: duplicate state names", line, col)
    for which, pairs in (("top", decl.top), ("bottom", decl.bottom)):
        points = [p for p, _ in pairs]
        if len(set(points)) != len(points):
            raise DuplicateName(f"{decl.name}: duplicate {which} interface points", line, col)
        for p, q in pairs:
            if q not in states:
                raise UnknownReference(f"{decl.name}: {which} point {p!r} maps to unknown state {q!r}",
                                       line, col)
    seen = set()
    for t in decl.transitions:
        for q in (t.source, t.target):
            if q not in states:
                raise UnknownReference(f"{decl.name}: unknown state {q!r}", line, col)
        if t.left not in left:
            raise UnknownReference(f"{decl.name}: label {t.left!r} not in left alphabet", line, col)
        if t.right not in right:
            raise UnknownReference(f"{decl.name}: label {t.right!r} not in right alphabet", line, col)
        key = (t.source, t.left, t.right, t.target)
        if key in seen:
            raise DuplicateName(f"{decl.name}: transition {key!r} declared twice", line, col)
        seen.add(key)
