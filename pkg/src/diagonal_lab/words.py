"""Binary words, the canonical word/number bijection, pairing, and a CNF codec.

Words are plain ``str`` objects over the characters ``"0"`` and ``"1"``; the
empty word is ``""``.  The canonical enumeration is

    "", "0", "1", "00", "01", "10", "11", "000", ...

and word number ``n`` is ``n + 1`` written in binary with the leading ``1``
removed.

CNF word grammar (decoding is total):

* a literal is one sign bit (``1`` positive, ``0`` negative) followed by the
  variable index in unary, ``1^v 0``;
* ``00`` in literal position terminates the current clause;
* only terminated, nonempty clauses are kept; a literal with ``v = 0`` and any
  unterminated tail are dropped;
* if no clause survives, the result is the default formula ``(x1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence

__all__ = [
    "CnfFormula",
    "DEFAULT_FORMULA",
    "decode_cnf",
    "encode_cnf",
    "format_dimacs",
    "index_to_word",
    "pair",
    "parse_dimacs",
    "unpair",
    "word_to_index",
]


def index_to_word(n: int) -> str:
    if n < 0:
        raise ValueError(f"word index must be a natural number, got {n}")
    return bin(n + 1)[3:]


def word_to_index(w: str) -> int:
    if w.strip("01"):
        raise ValueError(f"not a binary word: {w!r}")
    return int("1" + w, 2) - 1


def pair(i: int, n: int) -> int:
    """Cantor pairing ``(i + n)(i + n + 1)/2 + n``."""
    if i < 0 or n < 0:
        raise ValueError("pair is defined on natural numbers only")
    s = i + n
    return s * (s + 1) // 2 + n


def unpair(p: int) -> tuple[int, int]:
    if p < 0:
        raise ValueError("unpair is defined on natural numbers only")
    s = (isqrt(8 * p + 1) - 1) // 2
    n = p - s * (s + 1) // 2
    return s - n, n


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula; literals are nonzero ints, DIMACS style (``-3`` is not-x3)."""

    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(lit) for lit in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def of(cls, clauses: Iterable[Iterable[int]]) -> CnfFormula:
        return cls(tuple(tuple(c) for c in clauses))

    @property
    def varcount(self) -> int:
        return max((abs(lit) for c in self.clauses for lit in c), default=0)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """Truth value under ``assignment[v - 1]`` for variable ``v``; missing variables are false."""
        def value(lit: int) -> bool:
            v = abs(lit)
            truth = v <= len(assignment) and bool(assignment[v - 1])
            return truth if lit > 0 else not truth

        return all(any(value(lit) for lit in c) for c in self.clauses)


DEFAULT_FORMULA = CnfFormula(((1,),))


def decode_cnf(x: str) -> CnfFormula:
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    pos, size = 0, len(x)
    while size - pos >= 2:
        if x[pos] == "0" and x[pos + 1] == "0":
            if current:
                clauses.append(tuple(current))
            current = []
            pos += 2
            continue
        positive = x[pos] == "1"
        end = x.find("0", pos + 1)
        if end < 0:
            break
        v = end - pos - 1
        pos = end + 1
        if v:
            current.append(v if positive else -v)
    if not clauses:
        return DEFAULT_FORMULA
    return CnfFormula(tuple(clauses))


def encode_cnf(f: CnfFormula) -> str:
    parts = []
    for clause in f.clauses:
        if not clause:
            continue
        for lit in clause:
            if lit == 0:
                raise ValueError("variable index 0 is not allowed")
            parts.append(("1" if lit > 0 else "0") + "1" * abs(lit) + "0")
        parts.append("00")
    return "".join(parts)


def parse_dimacs(text: str) -> CnfFormula:
    """Read ``p cnf V C`` text; comment lines start with ``c``."""
    literals: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            continue
        literals.extend(int(tok) for tok in line.split())
    clauses, current = [], []
    for lit in literals:
        if lit == 0:
            if current:
                clauses.append(tuple(current))
            current = []
        else:
            current.append(lit)
    if current:
        clauses.append(tuple(current))
    if not clauses:
        raise ValueError("DIMACS input has no clauses")
    return CnfFormula(tuple(clauses))


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.varcount} {len(f.clauses)}"]
    lines += [" ".join(str(lit) for lit in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"
