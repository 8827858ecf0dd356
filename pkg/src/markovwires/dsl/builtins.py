"""The shipped model library and its ``builtin:`` addresses."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .parser import ModelFile, parse

BUILTIN_PREFIX = "builtin:"
DINING_SIZES = (2, 3)
SOFIA_SIZES = ((3, 2), (2, 1))


def _read(stem: str) -> str:
    return resources.files(__package__).joinpath("models", f"{stem}.mka").read_text()


def dining_source(n: int) -> str:
    """``let DFn``: n philosophers alternating with n forks, closed into a ring."""
    if n < 1:
        raise ValueError("need at least one philosopher")
    chain = " || ".join(["Phil || Fork"] * n)
    return f"let DF{n} = norm(pfb[A]({chain}))\n"


def sofia_source(seats: int, children: int) -> str:
    """``let Sofia<seats>_<children>``: seats alternating with forks, closed into a ring.

    The number of children only affects the initial state, see :func:`sofia_initial`.
    """
    if seats < 1 or not 0 <= children <= seats:
        raise ValueError("need 1 <= seats and 0 <= children <= seats")
    chain = " || ".join(["S || SeatFork"] * seats)
    return f"let Sofia{seats}_{children} = norm(pfb[SA * SB]({chain}))\n"


def sofia_initial(seats: int, children: int) -> tuple:
    """Empty seats first, then seated children; every fork on the table."""
    state = []
    for i in range(seats):
        state += ["5" if i < seats - children else "1", "1"]
    return tuple(state)


def dining_initial(n: int) -> tuple:
    return ("1",) * (2 * n)


@lru_cache(maxsize=None)
def _source(which: str) -> str:
    if which == "phil":
        return _read("phil")
    if which == "example":
        return _read("example")
    if which == "sofia":
        return _read("sofia") + "\n" + "".join(sofia_source(s, c) for s, c in SOFIA_SIZES)
    if which == "dining":
        return _read("phil") + "\n" + "".join(dining_source(n) for n in DINING_SIZES)
    if which == "all":
        return "\n".join(
            [_read("phil"), _read("example"), _read("sofia")]
            + [dining_source(n) for n in DINING_SIZES]
            + [sofia_source(s, c) for s, c in SOFIA_SIZES]
        )
    raise KeyError(which)


BUILTIN_FILES = ("phil", "example", "sofia", "dining", "all")


def builtin_source(which: str) -> str:
    try:
        return _source(which)
    except KeyError:
        raise ValueError(
            f"unknown builtin {which!r}; choose from {', '.join(BUILTIN_FILES)}"
        ) from None


@lru_cache(maxsize=None)
def builtin_file(which: str) -> ModelFile:
    return parse(builtin_source(which))


def builtin_library() -> ModelFile:
    return builtin_file("all")


def load_source(location: str) -> str:
    """Text of a ``builtin:NAME`` address or of a file path."""
    if location.startswith(BUILTIN_PREFIX):
        return builtin_source(location[len(BUILTIN_PREFIX):])
    with open(location, encoding="utf-8") as fh:
        return fh.read()
