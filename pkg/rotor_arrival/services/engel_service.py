"""
================================================================================
FILE IDENTITY CARD
================================================================================
File Path:           rotor_arrival/services/engel_service.py
Purpose:             Rational-base digit machinery on the Engel machine
                     E^{x,y}_n: stable decompositions, the stabilization
                     transducer, the acyclic-configuration correspondence
                     and the membership test for arcmonic values

Dependencies:        structlog>=23.2.0

Related Files:       rotor_arrival/models/engel_machine.py (parameters, DigitWord)
                     rotor_arrival/services/digit_automata.py (L_a, L_d, L_1)
                     rotor_arrival/services/arrival_solver_service.py (consumer)

Notes:               - All arithmetic is exact on Python integers
                     - A word has n + 2 digits; the sink s is never stored
                     - Decompositions of negative values are supported and
                       end with a negative last digit
                     - DecompositionWork counts the big-integer work of one
                       call for the scale checks
================================================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import structlog

from rotor_arrival.core.config import get_settings
from rotor_arrival.core.exceptions import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    InvariantViolationError,
    NegativeInputError,
    NonIntegralValueError,
    NotAcyclicError,
    NotAnArcmonicValueError,
    NotInLaError,
    SymbolOutOfRangeError,
)
from rotor_arrival.models.engel_machine import DigitWord, EngelMachine
from rotor_arrival.models.multigraph import RotorConfig
from rotor_arrival.models.path_instance import PathInstance
from rotor_arrival.services.digit_automata import DigitAutomataService
from rotor_arrival.services.rotor_routing_service import RotorRoutingService

logger = structlog.get_logger()


@dataclass
class DecompositionWork:
    """Work done by one caller: stable decompositions and digit extractions."""

    decompositions: int = 0
    digit_steps: int = 0


class EngelService:
    """
    Digit decompositions for one Engel machine and its path instance.

    Example:
        >>> service = EngelService(EngelMachine.for_parameters(3, 2, 3))
        >>> str(service.stable_decompose(1))
        '(2,1,0,2,-2)'
    """

    def __init__(self, machine: EngelMachine, search_mode: Optional[str] = None):
        """
        Initialize Engel service.

        Args:
            machine: Engel machine parameters (0 < x < y coprime)
            search_mode: "bisection" or "linear" for :meth:`unique_k_mod_F`
                (defaults to settings.search_mode)
        """
        self.machine = machine
        self.search_mode = search_mode or get_settings().search_mode
        self.automata = DigitAutomataService(machine.x, machine.y)

    @classmethod
    def for_instance(cls, instance: PathInstance, search_mode: Optional[str] = None) -> EngelService:
        return cls(EngelMachine.for_parameters(instance.n, instance.x, instance.y), search_mode)

    @cached_property
    def path(self) -> PathInstance:
        """The path instance P^{x,y}_n sharing the machine's parameters."""
        return PathInstance.coprime(self.machine.n, self.machine.x, self.machine.y)

    # ------------------------------------------------------------------ values and decompositions

    def h_E(self, word: DigitWord) -> int:  # noqa: N802
        """
        Value of a word: sum of c_k d_k plus (c_{n+1} / x) y^{n+1}.

        Raises:
            DimensionMismatchError: word has not n + 2 digits
            NonIntegralValueError: c_{n+1} is not a multiple of x
        """
        self._check_length(word)
        m = self.machine
        if word.last % m.x != 0:
            raise NonIntegralValueError(word.last, m.x)
        return sum(c * dk for c, dk in zip(word, m.d)) + (word.last // m.x) * m.y_power

    def stable_decompose(self, v: int, work: Optional[DecompositionWork] = None) -> DigitWord:
        """
        The unique stable word c[v] with h_E(c[v]) = v.

        Digit k is fixed modulo y by the remaining value, since every later
        term is a multiple of y^{k+1}; the remainder after digit n lands on
        u_{n+1}.
        """
        m = self.machine
        digits: list[int] = []
        rest = v
        for k in range(m.n + 1):
            c = (rest * m.x_power_inverses[k]) % m.y
            digits.append(c)
            rest = (rest - c * m.x_powers[k]) // m.y
        digits.append(m.x * rest)
        if work is not None:
            work.decompositions += 1
            work.digit_steps += m.n + 1
        return DigitWord(tuple(digits))

    def bezout_decompose(self, v: int) -> DigitWord:
        """
        c[v] by the existence construction: put alpha*x*v on u_0 and
        beta*x*v on u_{n+1} with alpha x^{n+1} + beta y^{n+1} = 1, then
        stabilize. Used as a cross-check of :meth:`stable_decompose`.
        """
        m = self.machine
        x_power = m.x ** (m.n + 1)
        alpha = pow(x_power, -1, m.y_power)
        beta = (1 - alpha * x_power) // m.y_power
        digits = [0] * m.word_length
        digits[0] = alpha * m.x * v
        digits[-1] = beta * m.x * v
        return DigitWord(tuple(self._sweep(digits)))

    def engel_stabilize_config(self, word: DigitWord) -> DigitWord:
        """
        Chip-firing stabilization of a word on E^{x,y}_n.

        Firing u_k takes y chips from u_k, sends x to u_{k+1} and y - x to s.
        Vertices are fired in order u_0..u_n, each as often as legal; no
        vertex receives chips from a later one, so the sweep is maximal.

        Raises:
            NegativeInputError: some c_k < 0 for k in [0, n]
        """
        self._check_length(word)
        for k, c in enumerate(word.digits[:-1]):
            if c < 0:
                raise NegativeInputError(k, c)
        return DigitWord(tuple(self._sweep(list(word))))

    def _sweep(self, digits: list[int]) -> list[int]:
        m = self.machine
        for k in range(m.n + 1):
            q = digits[k] // m.y
            digits[k] -= q * m.y
            digits[k + 1] += q * m.x
        return digits

    def transducer_run(self, word: DigitWord) -> DigitWord:
        """
        Stabilize a word over [0, y] ending in 0 with the two-state transducer.

        State a carries nothing, state b carries x chips into the next digit.

        Raises:
            SymbolOutOfRangeError: a digit outside [0, y], or a last digit other than 0
        """
        self._check_length(word)
        m = self.machine
        if word.last != 0:
            raise SymbolOutOfRangeError(m.n + 1, word.last, 0, 0)
        output: list[int] = []
        state = "a"
        for position, symbol in enumerate(word):
            if not 0 <= symbol <= m.y:
                raise SymbolOutOfRangeError(position, symbol, 0, m.y)
            if state == "a":
                if symbol == m.y:
                    output.append(0)
                    state = "b"
                else:
                    output.append(symbol)
            elif symbol >= m.y - m.x:
                output.append(symbol - m.y + m.x)
            else:
                output.append(symbol + m.x)
                state = "a"
        return DigitWord(tuple(output))

    def membership_gR(self, v: int, work: Optional[DecompositionWork] = None) -> bool:  # noqa: N802
        """Whether some rotor configuration has arcmonic value v."""
        return self.automata.match_Ld(self.stable_decompose(v, work))

    # ------------------------------------------------------------------ acyclic configurations

    def psi(self, rotor: RotorConfig) -> DigitWord:
        """
        Digit word of an acyclic rotor configuration, with h_E(psi(rho)) = g(rho).

        An acyclic configuration on the path points left on u_1..u_{k-1} and
        right on u_k..u_n. Left arc a^i_j gives c_{i-1} = x + y - j, right arc
        a^i_j gives c_i = j, and c_{k-1} = c_{n+1} = 0.

        Raises:
            NotAcyclicError: G(rho) has a circuit
        """
        path = self.path
        circuit = RotorRoutingService(path.graph).find_circuit(rotor)
        if circuit is not None:
            raise NotAcyclicError(circuit)
        labels = path.labels_of(rotor)
        k = next((i for i, j in enumerate(labels, start=1) if path.is_right_arc(j)), path.n + 1)
        digits = [0] * self.machine.word_length
        for i in range(1, k):
            digits[i - 1] = path.degree - labels[i - 1]
        for i in range(k, path.n + 1):
            digits[i] = labels[i - 1]
        return DigitWord(tuple(digits))

    def psi_inv(self, word: DigitWord) -> RotorConfig:
        """
        Acyclic rotor configuration of a word in L_a.

        Raises:
            NotInLaError: the word does not match [1,y]* 0 [0,x-1]* 0
        """
        self._check_length(word)
        if not self.automata.match_La(word):
            raise NotInLaError(word.digits)
        path = self.path
        k = word.digits.index(0) + 1
        labels = [path.degree - word[i - 1] for i in range(1, k)]
        labels.extend(word[i] for i in range(k, path.n + 1))
        return path.rotor_from_labels(labels)

    def acyclic_representative(self, v: int) -> RotorConfig:
        """
        The unique acyclic rotor configuration with g(rho) = v.

        For each split position k the L_a digits are forced modulo y, exactly
        as in :meth:`stable_decompose` but with prefix digits in [1, y]; the
        first split whose digits fit the shape gives the configuration.

        Raises:
            NotAnArcmonicValueError: v is not in g(R)
        """
        if v >= 0:
            for k in range(1, self.machine.n + 2):
                digits = self._split_digits(v, k)
                if digits is not None:
                    word = DigitWord(tuple(digits))
                    if self.h_E(word) != v:
                        raise InvariantViolationError(
                            f"digits {word} do not evaluate to {v}", value=str(v)
                        )
                    return self.psi_inv(word)
        raise NotAnArcmonicValueError(v)

    def _split_digits(self, v: int, k: int) -> Optional[list[int]]:
        m = self.machine
        digits: list[int] = []
        rest = v
        for i in range(m.n + 1):
            residue = (rest * m.x_power_inverses[i]) % m.y
            if i < k - 1:
                c = residue if residue else m.y
            elif i == k - 1:
                if residue:
                    return None
                c = 0
            else:
                if residue >= m.x:
                    return None
                c = residue
            digits.append(c)
            rest = (rest - c * m.x_powers[i]) // m.y
        if rest != 0:
            return None
        digits.append(0)
        return digits

    # ------------------------------------------------------------------ window search

    def unique_k_mod_F(  # noqa: N802
        self, v: int, work: Optional[DecompositionWork] = None
    ) -> tuple[int, int]:
        """
        The unique k with v + kF in g(R), for v in [0, F).

        k lies in [0, x-1]. The last digit of c[v + kF] is nondecreasing in k
        and the member is the smallest k where it is nonnegative, so the
        default mode bisects on its sign; the linear mode tests membership of
        every candidate.

        Returns:
            (k, v + kF)

        Raises:
            IndexOutOfRangeError: v outside [0, F)
            InvariantViolationError: no candidate passes membership
        """
        m = self.machine
        if not 0 <= v < m.F:
            raise IndexOutOfRangeError("value", v, 0, m.F - 1)

        if self.search_mode == "linear":
            for k in range(m.x):
                if self.membership_gR(v + k * m.F, work):
                    return k, v + k * m.F
            raise InvariantViolationError(
                f"no k in [0, {m.x - 1}] puts {v} + kF in g(R)", value=str(v)
            )

        low, high = 0, m.x - 1
        while low < high:
            mid = (low + high) // 2
            if self.stable_decompose(v + mid * m.F, work).last >= 0:
                high = mid
            else:
                low = mid + 1
        value = v + low * m.F
        if not self.membership_gR(value, work):
            raise InvariantViolationError(
                f"bisection candidate {value} is not in g(R)", value=str(value), k=low
            )
        logger.debug("window_search_completed", k=low)
        return low, value

    def _check_length(self, word: DigitWord | Iterable[int]) -> None:
        length = len(tuple(word))
        if length != self.machine.word_length:
            raise DimensionMismatchError(self.machine.word_length, length, "digit word")
