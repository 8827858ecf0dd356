"""Structured names shared by labels, states and interface points.

A name is one of

* an atom (``str``), e.g. ``"t"`` or ``"1"``;
* a tuple of names, used for product alphabets and product state spaces;
* a :class:`Tag`, marking the left or right summand of a disjoint union.

Names have a total order (:func:`name_key`) so that every derived state set,
alphabet and transition listing has a deterministic layout, and a textual
rendering (:func:`render`) that :func:`parse_name` reads back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Union

EPS = "eps"
UNIT = ()  # the single state / interface point of a parallel constant


@dataclass(frozen=True)
class Tag:
    """Injection of ``inner`` into the left (``"L"``) or right (``"R"``) summand."""

    side: str
    inner: Any

    def __post_init__(self):
        if self.side not in ("L", "R"):
            raise ValueError(f"tag side must be 'L' or 'R', got {self.side!r}")

    def __repr__(self):
        return f"Tag({self.side!r}, {self.inner!r})"


Name = Union[str, tuple, Tag]


def left(x: Hashable) -> Tag:
    return Tag("L", x)


def right(x: Hashable) -> Tag:
    return Tag("R", x)


def name_key(n) -> tuple:
    """Total structural order: atoms < tags < tuples; digit atoms numerically."""
    if isinstance(n, str):
        if n.isascii() and n.isdigit():
            return (0, 0, int(n), n)
        return (0, 1, 0, n)
    if isinstance(n, Tag):
        return (1, n.side, name_key(n.inner))
    if isinstance(n, tuple):
        return (2, tuple(name_key(x) for x in n))
    if isinstance(n, int) and not isinstance(n, bool):
        return (0, 0, n, "")
    raise TypeError(f"not a structured name: {n!r}")


def sort_names(names: Iterable) -> tuple:
    return tuple(sorted(names, key=name_key))


def render(n) -> str:
    if isinstance(n, str):
        return n
    if isinstance(n, Tag):
        return f"{n.side}:{render(n.inner)}"
    if isinstance(n, tuple):
        return "(" + ",".join(render(x) for x in n) + ")"
    if isinstance(n, int):
        return str(n)
    raise TypeError(f"not a structured name: {n!r}")


def flat(n) -> tuple:
    return n if isinstance(n, tuple) else (n,)


def pair_names(first: Iterable, second: Iterable) -> dict:
    """Names for the elements of a cartesian product.

    Component tuples are concatenated so that iterated products read as flat
    tuples ``(1,3,3,2)``, and single-point factors named ``()`` vanish.  When
    concatenation would identify two distinct pairs the plain pair ``(p, q)``
    is used instead.
    """
    first, second = list(first), list(second)
    names = {}
    for p in first:
        for q in second:
            n = flat(p) + flat(q)
            names[p, q] = n[0] if len(n) == 1 else n
    if len(set(names.values())) != len(names):
        names = {(p, q): (p, q) for p in first for q in second}
    return names


_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_*]+)|(.))")


def parse_name(text: str):
    """Inverse of :func:`render`."""
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append(m.group(1))
        elif m.group(2) is not None and not m.group(2).isspace():
            tokens.append(m.group(2))
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"truncated name: {text!r}")
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            items = []
            if tokens[pos] == ")":
                pos += 1
                return ()
            while True:
                items.append(parse())
                if tokens[pos] == ",":
                    pos += 1
                elif tokens[pos] == ")":
                    pos += 1
                    return tuple(items)
                else:
                    raise ValueError(f"bad name: {text!r}")
        if tok in ("L", "R") and pos + 1 < len(tokens) and tokens[pos + 1] == ":":
            pos += 2
            return Tag(tok, parse())
        pos += 1
        return tok

    try:
        result = parse()
    except IndexError:
        raise ValueError(f"truncated name: {text!r}") from None
    if pos != len(tokens):
        raise ValueError(f"trailing characters in name: {text!r}")
    return result
