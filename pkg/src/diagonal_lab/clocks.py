"""Growth families and clocked machines.

A clocked machine with code ``p = pair(i, n)`` runs machine ``i`` for at most
``g_n(|x|) - 1`` steps.  If the clock fires first, the run is stopped where it
is and the output is the word under the head.  So every clocked run is total.

Note the boundary asymmetry, kept as stated in the source definitions: the
clock allows ``g_n(|x|) - 1`` steps, while a machine counts as bounded by
``g_n`` if it halts within ``g_n(|x|)`` steps.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from .machine import RunOutcome, decode_machine, run
from .words import pair, unpair

__all__ = [
    "ClockedMachine",
    "GrowthFamily",
    "LinearFamily",
    "PolynomialFamily",
    "clocked_outcome",
    "clocked_run",
    "get_family",
    "is_g_bounded_witness",
    "polynomial_family",
    "register_family",
    "same_function_pairs",
]


class GrowthFamily(ABC):
    """An indexed family g_0, g_1, ... of total functions on the naturals.

    Implementations must satisfy ``g_0(x) > 2``, ``g_n(x + 1) > g_n(x)`` and
    ``g_n(x) > g_m(x)`` for ``n > m``.
    """

    name: str

    @abstractmethod
    def eval(self, n: int, x: int) -> int: ...

    def __call__(self, n: int, x: int) -> int:
        return self.eval(n, x)

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class PolynomialFamily(GrowthFamily):
    """p_n(x) = x^(n+3) + (n+3)."""

    name = "polynomial"

    def eval(self, n: int, x: int) -> int:
        if n < 0 or x < 0:
            raise ValueError("growth family arguments are natural numbers")
        return x ** (n + 3) + (n + 3)


class LinearFamily(GrowthFamily):
    """g_n(x) = x + n + 3, the slowest family the laws allow; handy for brute-force NP checks."""

    name = "linear"

    def eval(self, n: int, x: int) -> int:
        if n < 0 or x < 0:
            raise ValueError("growth family arguments are natural numbers")
        return x + n + 3


_FAMILIES: dict[str, GrowthFamily] = {}


def register_family(family: GrowthFamily) -> GrowthFamily:
    _FAMILIES[family.name] = family
    return family


def get_family(name: str) -> GrowthFamily:
    try:
        return _FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown growth family {name!r}; known: {sorted(_FAMILIES)}") from None


POLYNOMIAL = register_family(PolynomialFamily())
LINEAR = register_family(LinearFamily())


def polynomial_family() -> GrowthFamily:
    return POLYNOMIAL


@dataclass(frozen=True)
class ClockedMachine:
    code: int
    family: GrowthFamily = field(default=POLYNOMIAL, compare=False)

    @property
    def machine_index(self) -> int:
        return unpair(self.code)[0]

    @property
    def clock_index(self) -> int:
        return unpair(self.code)[1]

    def clock_steps(self, length: int) -> int:
        return self.family.eval(self.clock_index, length) - 1


def clocked_outcome(p: ClockedMachine, x: str) -> RunOutcome:
    i, n = unpair(p.code)
    return run(decode_machine(i), x, p.family.eval(n, len(x)) - 1)


def clocked_run(p: ClockedMachine, x: str) -> str:
    return clocked_outcome(p, x).output


def is_g_bounded_witness(i: int, n: int, samples, family: GrowthFamily = POLYNOMIAL) -> bool:
    """Sample evidence (not proof) that machine ``i`` halts within ``g_n(|x|)`` steps.

    ``samples`` are words.
    """
    machine = decode_machine(i)
    return all(run(machine, x, family.eval(n, len(x))).halted for x in samples)


def same_function_pairs(i: int, n: int, count: int) -> list[int]:
    return [pair(i, n + j) for j in range(count)]
