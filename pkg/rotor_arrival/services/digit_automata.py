"""
Deterministic automata over integer-interval alphabets.

Digit words are read left to right (c_0 first). Each state maps closed
integer intervals of symbols to a target state; a symbol covered by no
interval sends the automaton to an implicit dead state.

Languages, for words of length n + 2:

- L_a = [1,y]* . 0 . [0,x-1]* . 0    digit images of acyclic rotor configurations
- L_d = [0,y-1]* . 0 . [1,x]* . 0    stable decompositions of arcmonic values
- L_1 = [1,y]* . 0                   the prefix shape used by the emptiness check
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

Transition = tuple[int, int, str]


@dataclass(frozen=True)
class IntervalAutomaton:
    """DFA whose transitions are labelled by closed integer intervals."""

    name: str
    initial: str
    finals: frozenset[str]
    transitions: Mapping[str, tuple[Transition, ...]]

    def step(self, state: str, symbol: int) -> Optional[str]:
        for low, high, target in self.transitions[state]:
            if low <= symbol <= high:
                return target
        return None

    def run(self, word: Iterable[int]) -> Optional[str]:
        """Final state after reading ``word``, or None once the word falls off."""
        state: Optional[str] = self.initial
        for symbol in word:
            state = self.step(state, symbol)
            if state is None:
                return None
        return state

    def accepts(self, word: Iterable[int]) -> bool:
        return self.run(word) in self.finals

    @property
    def states(self) -> tuple[str, ...]:
        return tuple(self.transitions)


@lru_cache(maxsize=128)
def la_automaton(x: int, y: int) -> IntervalAutomaton:
    """
    Deterministic recognizer of L_a.

    A reads the [1,y] prefix, B is inside the [0,x-1] block after the first
    0, and C has just read a 0 that may be the last symbol.
    """
    return IntervalAutomaton(
        name="L_a",
        initial="A",
        finals=frozenset({"C"}),
        transitions={
            "A": ((1, y, "A"), (0, 0, "B")),
            "B": ((1, x - 1, "B"), (0, 0, "C")),
            "C": ((0, 0, "C"), (1, x - 1, "B")),
        },
    )


@lru_cache(maxsize=128)
def ld_automaton(x: int, y: int) -> IntervalAutomaton:
    """Minimal deterministic recognizer of L_d (states a, b, c; c accepting)."""
    return IntervalAutomaton(
        name="L_d",
        initial="a",
        finals=frozenset({"c"}),
        transitions={
            "a": ((1, y - 1, "a"), (0, 0, "b")),
            "b": ((1, x, "b"), (0, 0, "c"), (x + 1, y - 1, "a")),
            "c": ((0, 0, "c"), (1, x, "b"), (x + 1, y - 1, "a")),
        },
    )


@lru_cache(maxsize=128)
def l1_automaton(y: int) -> IntervalAutomaton:
    return IntervalAutomaton(
        name="L_1",
        initial="p",
        finals=frozenset({"q"}),
        transitions={
            "p": ((1, y, "p"), (0, 0, "q")),
            "q": (),
        },
    )


class DigitAutomataService:
    """Membership tests in L_a, L_d and L_1 for fixed (x, y)."""

    def __init__(self, x: int, y: int):
        self.x = x
        self.y = y

    def match_La(self, word: Iterable[int]) -> bool:  # noqa: N802
        return la_automaton(self.x, self.y).accepts(word)

    def match_Ld(self, word: Iterable[int]) -> bool:  # noqa: N802
        return ld_automaton(self.x, self.y).accepts(word)

    def match_L1(self, word: Iterable[int]) -> bool:  # noqa: N802
        return l1_automaton(self.y).accepts(word)
