"""Recursive permutations of the clocked-machine enumeration.

A representation stores an explicit prefix: position ``j < L`` holds machine
code ``prefix[j]``.  Every position at or past ``L`` holds its own code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["IDENTITY", "Representation"]


@dataclass(frozen=True)
class Representation:
    prefix: tuple[int, ...] = ()
    _inverse: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        prefix = tuple(self.prefix)
        object.__setattr__(self, "prefix", prefix)
        if sorted(prefix) != list(range(len(prefix))):
            raise ValueError("prefix must be a permutation of 0..L-1")
        object.__setattr__(self, "_inverse", {code: pos for pos, code in enumerate(prefix)})

    @property
    def length(self) -> int:
        return len(self.prefix)

    def apply(self, position: int) -> int:
        """Machine code at ``position``."""
        return self.prefix[position] if position < len(self.prefix) else position

    def inverse(self, code: int) -> int:
        """Position holding machine ``code``."""
        return self._inverse.get(code, code)

    def extend(self, length: int) -> Representation:
        """Same permutation with the explicit prefix padded by identity up to ``length``."""
        if length <= len(self.prefix):
            return self
        return Representation(self.prefix + tuple(range(len(self.prefix), length)))

    def transpose(self, a: int, b: int) -> Representation:
        """Swap the machines at positions ``a`` and ``b``."""
        ext = list(self.extend(max(a, b) + 1).prefix)
        ext[a], ext[b] = ext[b], ext[a]
        return Representation(tuple(ext))

    @classmethod
    def unchecked(cls, prefix, inverse: dict[int, int]) -> Representation:
        """Build without validation; only for negative tests of the consistency checks."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "prefix", tuple(prefix))
        object.__setattr__(obj, "_inverse", dict(inverse))
        return obj


IDENTITY = Representation()
