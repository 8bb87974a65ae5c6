"""Words over named generators.

Grammar (whitespace ignored)::

    word   := factor*
    factor := atom ('^' '-'? digits)?
    atom   := name | '(' word ')'
    name   := [a-z] digits?        ('e' alone is the identity)

``""`` and ``"e"`` both denote the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping, TypeVar, Union

from sbsym.sbscore.exceptions import BadParameter

T = TypeVar("T")

_NAME = re.compile(r"[a-z][0-9]*")
_INT = re.compile(r"-?[0-9]+")


@dataclass(frozen=True)
class Power:
    base: "Node"
    exp: int


Node = Union[str, Power, tuple]  # generator name, power, or a sequence of nodes


def parse_word(text: str) -> tuple:
    s = re.sub(r"\s+", "", text)
    if s in ("", "e", "1"):
        return ()
    node, pos = _parse_seq(s, 0)
    if pos != len(s):
        raise BadParameter(f"unexpected {s[pos]!r} at {pos} in word {text!r}")
    return node


def _parse_seq(s: str, pos: int) -> tuple[tuple, int]:
    items: list[Node] = []
    while pos < len(s) and s[pos] != ")":
        atom, pos = _parse_atom(s, pos)
        if pos < len(s) and s[pos] == "^":
            m = _INT.match(s, pos + 1)
            if not m:
                raise BadParameter(f"bad exponent at {pos} in {s!r}")
            atom = Power(atom, int(m.group()))
            pos = m.end()
        items.append(atom)
    return tuple(items), pos


def _parse_atom(s: str, pos: int) -> tuple[Node, int]:
    if s[pos] == "(":
        inner, pos = _parse_seq(s, pos + 1)
        if pos >= len(s) or s[pos] != ")":
            raise BadParameter(f"unbalanced parenthesis in {s!r}")
        return inner, pos + 1
    m = _NAME.match(s, pos)
    if not m:
        raise BadParameter(f"unexpected {s[pos]!r} at {pos} in word {s!r}")
    name = m.group()
    return ("e" if name == "e" else name), m.end()


def evaluate(
    word: Union[str, tuple],
    symbols: Mapping[str, T],
    *,
    compose: Callable[[T, T], T],
    identity: T,
    inverse: Callable[[T], T],
) -> T:
    """Evaluate ``word`` left to right with the given group operations."""
    node = parse_word(word) if isinstance(word, str) else word

    def ev(n: Node) -> T:
        if isinstance(n, str):
            if n == "e":
                return identity
            try:
                return symbols[n]
            except KeyError:
                raise BadParameter(f"unknown generator {n!r}") from None
        if isinstance(n, Power):
            base = ev(n.base)
            if n.exp < 0:
                base = inverse(base)
            out = identity
            for _ in range(abs(n.exp)):
                out = compose(out, base)
            return out
        out = identity
        for item in n:
            out = compose(out, ev(item))
        return out

    return ev(node)


def evaluate_in_group(G, word: Union[str, tuple], symbols: Mapping[str, int]) -> int:
    """Evaluate ``word`` to an element index of the FiniteGroup ``G``."""
    return evaluate(
        word, symbols, compose=G.compose, identity=G.identity, inverse=G.inv
    )
