"""Textual model language: parsing, printing, evaluation and the builtin library."""

from .builtins import (
    builtin_file,
    builtin_library,
    builtin_source,
    dining_initial,
    dining_source,
    load_source,
    sofia_initial,
    sofia_source,
)
from .evaluator import Environment, evaluate_name
from .parser import (
    AlphabetDecl,
    AmbiguousExpression,
    AutomatonDecl,
    DslError,
    DslSyntaxError,
    DuplicateName,
    InvalidWeight,
    LetDecl,
    ModelFile,
    TransitionDecl,
    UnknownReference,
    parse,
)
from .printer import pretty_print

eval = evaluate_name  # noqa: A001  (mirrors the operation name)

__all__ = [
    "AlphabetDecl", "AmbiguousExpression", "AutomatonDecl", "DslError", "DslSyntaxError",
    "DuplicateName", "Environment", "InvalidWeight", "LetDecl", "ModelFile", "TransitionDecl",
    "UnknownReference", "builtin_file", "builtin_library", "builtin_source", "dining_initial",
    "dining_source", "eval", "evaluate_name", "load_source", "parse", "pretty_print",
    "sofia_initial", "sofia_source",
]
