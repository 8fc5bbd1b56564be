"""
Engel machine E^{x,y}_n and digit words.

E^{x,y}_n has vertices u_0..u_{n+1} and an extra sink s. Every u_i with
i <= n sends x arcs to u_{i+1} and y - x arcs to s; u_{n+1} and s are sinks.
Its harmonic function is h_E(s) = 0 and h_E(u_k) = d_k, with
d_{n+1} = y^{n+1} / x kept as the exact pair (y^{n+1}, x).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator

from rotor_arrival.core.exceptions import InvalidInstanceError, SchemaError
from rotor_arrival.models.multigraph import Multigraph

_WORD_PATTERN = re.compile(r"^\(\s*-?\d+(\s*,\s*-?\d+)*\s*\)$")


@dataclass(frozen=True)
class DigitWord:
    """Word c = (c_0, ..., c_{n+1}); the s coordinate is never stored."""

    digits: tuple[int, ...]

    @classmethod
    def of(cls, digits: Iterable[int]) -> DigitWord:
        return cls(tuple(int(c) for c in digits))

    @classmethod
    def parse(cls, text: str) -> DigitWord:
        """Parse the printed form ``(2,1,0,2,-2)``."""
        if not _WORD_PATTERN.match(text.strip()):
            raise SchemaError(f"not a digit word: {text!r}")
        return cls.of(part for part in text.strip()[1:-1].split(","))

    @property
    def last(self) -> int:
        """c_{n+1}, the count on sink u_{n+1}."""
        return self.digits[-1]

    def is_stable(self, x: int, y: int) -> bool:
        """Digits c_0..c_n in [0, y-1] and c_{n+1} in xZ."""
        return all(0 <= c < y for c in self.digits[:-1]) and self.last % x == 0

    def __getitem__(self, index: int) -> int:
        return self.digits[index]

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.digits) + ")"


@dataclass(frozen=True)
class EngelMachine:
    """Parameters (n, x, y) of E^{x,y}_n with precomputed powers."""

    n: int
    x: int
    y: int

    @classmethod
    def for_parameters(cls, n: int, x: int, y: int) -> EngelMachine:
        if n < 0:
            raise InvalidInstanceError(f"n must be >= 0, got {n}", n=n, x=x, y=y)
        if not 0 < x < y:
            raise InvalidInstanceError(
                f"the Engel machine needs 0 < x < y, got x={x}, y={y}", n=n, x=x, y=y
            )
        if gcd(x, y) != 1:
            raise InvalidInstanceError(f"x={x} and y={y} are not coprime", n=n, x=x, y=y)
        return cls(n=n, x=x, y=y)

    @property
    def word_length(self) -> int:
        return self.n + 2

    @property
    def sink_s(self) -> int:
        """Vertex id of the extra sink s in :meth:`multigraph`."""
        return self.n + 2

    @cached_property
    def d(self) -> tuple[int, ...]:
        """h_E(u_k) = d_k = x^{n-k} y^k for k in [0, n]."""
        return tuple(self.x ** (self.n - k) * self.y**k for k in range(self.n + 1))

    @cached_property
    def y_power(self) -> int:
        """y^{n+1}; h_E(u_{n+1}) = y_power / x."""
        return self.y ** (self.n + 1)

    @cached_property
    def x_powers(self) -> tuple[int, ...]:
        """x^{n-k} for k in [0, n]."""
        return tuple(self.x ** (self.n - k) for k in range(self.n + 1))

    @cached_property
    def x_power_inverses(self) -> tuple[int, ...]:
        """Inverse of x^{n-k} modulo y, for k in [0, n]."""
        return tuple(pow(pow(self.x, self.n - k, self.y), -1, self.y) for k in range(self.n + 1))

    @cached_property
    def F(self) -> int:  # noqa: N802
        return sum(self.d)

    def multigraph(self) -> Multigraph:
        """E^{x,y}_n as a general multigraph: u_0..u_{n+1} are 0..n+1, s is n+2."""
        arcs: list[tuple[int, int]] = []
        rotor_order: dict[int, list[int]] = {}
        for i in range(self.n + 1):
            rotor_order[i] = []
            for j in range(self.y):
                rotor_order[i].append(len(arcs))
                arcs.append((i, i + 1 if j < self.x else self.sink_s))
        return Multigraph.build(self.n + 3, (self.n + 1, self.sink_s), arcs, rotor_order)
