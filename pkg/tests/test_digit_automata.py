"""Tests for the interval automata recognizing L_a, L_d and L_1."""

import itertools
import re

import pytest

from rotor_arrival.models.engel_machine import DigitWord, EngelMachine
from rotor_arrival.services.digit_automata import (
    DigitAutomataService,
    l1_automaton,
    la_automaton,
    ld_automaton,
)
from rotor_arrival.services.engel_service import EngelService

PAIRS = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5)]


def reference_match(language: str, word, x: int, y: int) -> bool:
    """Regex matcher over one character per digit, used as a brute-force reference."""
    text = "".join(chr(ord("A") + c) if c >= 0 else "?" for c in word)

    def interval(low: int, high: int) -> str:
        if low > high:
            return "(?!)"
        return "[" + chr(ord("A") + low) + "-" + chr(ord("A") + high) + "]"

    patterns = {
        "La": f"{interval(1, y)}*A{interval(0, x - 1)}*A",
        "Ld": f"{interval(0, y - 1)}*A{interval(1, x)}*A",
        "L1": f"{interval(1, y)}*A",
    }
    return re.fullmatch(patterns[language], text) is not None


@pytest.mark.unit
class TestExamples:
    """Accepted and rejected words for x = 2, y = 3."""

    @pytest.mark.parametrize(
        "word,expected",
        [
            ((0, 0), True),
            ((1, 1, 1, 0, 0), True),
            ((3, 0, 1, 0), True),
            ((1, 0, 1, 1, 0), True),
            ((1, 0, 2, 0), False),
            ((1, 1, 1, 1, 0), False),
            ((1, 1, 1, 0, 1), False),
        ],
    )
    def test_la(self, word, expected):
        assert DigitAutomataService(2, 3).match_La(word) is expected

    @pytest.mark.parametrize(
        "word,expected",
        [
            ((0, 1, 0, 2, 0), True),
            ((2, 0, 0, 0, 0), True),
            ((1, 2, 1, 0, 2), False),
            ((2, 1, 0, 2, -2), False),
            ((2, 0, 1, 0, 4), False),
            ((1, 1, 0), False),
        ],
    )
    def test_ld(self, word, expected):
        assert DigitAutomataService(2, 3).match_Ld(word) is expected

    def test_l1(self):
        service = DigitAutomataService(2, 3)

        assert service.match_L1((3, 1, 0))
        assert not service.match_L1((3, 0, 0))
        assert not service.match_L1(())

    def test_run_reports_dead_state(self):
        assert la_automaton(2, 3).run((1, 4)) is None
        assert la_automaton(2, 3).run((1, 0)) == "B"

    def test_automata_are_cached(self):
        assert ld_automaton(2, 3) is ld_automaton(2, 3)
        assert l1_automaton(3).states == ("p", "q")


@pytest.mark.unit
class TestAgainstReference:
    """The automata agree with a regex reference on every short word."""

    @pytest.mark.parametrize("x,y", PAIRS)
    def test_all_words_up_to_length_five(self, x, y):
        service = DigitAutomataService(x, y)
        for length in range(6):
            for word in itertools.product(range(-1, y + 2), repeat=length):
                assert service.match_La(word) == reference_match("La", word, x, y)
                assert service.match_Ld(word) == reference_match("Ld", word, x, y)
                assert service.match_L1(word) == reference_match("L1", word, x, y)


@pytest.mark.unit
class TestLanguageStructure:
    """Sizes and disjointness of the digit languages."""

    @pytest.mark.parametrize("x,y", PAIRS)
    def test_ld_count_equals_f(self, x, y):
        for n in range(4):
            machine = EngelMachine.for_parameters(n, x, y)
            service = DigitAutomataService(x, y)
            count = sum(
                service.match_Ld(digits + (0,))
                for digits in itertools.product(range(y), repeat=n + 1)
            )

            assert count == machine.F

    @pytest.mark.parametrize("x,y", PAIRS)
    def test_stabilized_l1_words_avoid_ld(self, x, y):
        """No word of L_1 stabilizes into L_d."""
        for n in range(4):
            engel = EngelService(EngelMachine.for_parameters(n, x, y))
            for digits in itertools.product(range(1, y + 1), repeat=n + 1):
                word = digits + (0,)
                assert engel.automata.match_L1(word)
                stable = engel.engel_stabilize_config(DigitWord.of(word))
                assert not engel.automata.match_Ld(stable)
