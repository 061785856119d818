"""Kleene's T predicate and U extraction for the machines of ``machine``.

History codec, bit-exact.  A natural ``v`` is written as the Elias gamma code
of ``v + 1`` (``bitlen - 1`` zeros, then ``v + 1`` in binary).  A
configuration is normalised relative to ``lo = min(non-blank cells ∪ {head})``
and ``hi = max(non-blank cells ∪ {head})`` and written as

    nat(state) nat(head - lo) nat(hi - lo + 1) sym(lo) ... sym(hi)

with two bits per symbol (``00`` = 0, ``01`` = 1, ``10`` = blank; ``11`` does
not parse).  A history is the concatenation of its configurations, and its
code is ``word_to_index`` of that bit string.  Each configuration takes at
least 7 bits.

Decoding is total.  A number that does not parse, or parses into something
other than the run of ``decode_machine(e)`` on ``x`` from the initial
configuration to the first configuration in state 0, fails ``T``.  The codec
is injective and normalisation is canonical, so every halting run has exactly
one history code.  The μ-searches below rely on that.  The least ``y`` with
``T(e, x, y)`` is the code of the simulated run, and it can only be ``<= B``
when its bit string has fewer than ``B.bit_length()`` bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .machine import BLANK, Configuration, decode_machine, initial_configuration, step
from .verify import SearchResult
from .words import index_to_word, word_to_index

__all__ = [
    "HistoryCode",
    "Never",
    "NormalConfig",
    "SearchLimitExceeded",
    "T",
    "TotalPredicate",
    "TrueAt",
    "U",
    "as_predicate",
    "decode_history",
    "encode_history",
    "history_code",
    "normalize",
    "phi",
    "unsound_total",
]

NormalConfig = tuple[int, int, tuple[int, ...]]  # (state, head offset, window)

_SYM_BITS = {0: "00", 1: "01", BLANK: "10"}
_BITS_SYM = {"00": 0, "01": 1, "10": BLANK}


def _nat(v: int) -> str:
    b = bin(v + 1)[2:]
    return "0" * (len(b) - 1) + b


def normalize(c: Configuration) -> NormalConfig:
    cells = c.cells
    lo = min(min(cells, default=c.head), c.head)
    hi = max(max(cells, default=c.head), c.head)
    return c.state, c.head - lo, tuple(cells.get(p, BLANK) for p in range(lo, hi + 1))


def _denormalize(nc: NormalConfig) -> Configuration:
    state, offset, window = nc
    return Configuration.from_cells(dict(enumerate(window)), offset, state)


def history_code(configs: Sequence[NormalConfig]) -> int:
    return word_to_index("".join(_config_bits(nc) for nc in configs))


def decode_history(z: int) -> Optional[list[NormalConfig]]:
    """Parse ``z`` into normalised configurations, or None when it does not parse."""
    bits = index_to_word(z)
    size, pos = len(bits), 0

    def nat() -> Optional[int]:
        nonlocal pos
        one = bits.find("1", pos)
        if one < 0:
            return None
        width = one - pos
        end = one + width + 1
        if end > size:
            return None
        value = int(bits[one:end], 2) - 1
        pos = end
        return value

    configs: list[NormalConfig] = []
    while pos < size:
        state, offset, length = nat(), nat(), nat()
        if state is None or offset is None or length is None:
            return None
        if length == 0 or offset >= length or pos + 2 * length > size:
            return None
        window = []
        for _ in range(length):
            sym = _BITS_SYM.get(bits[pos:pos + 2])
            if sym is None:
                return None
            window.append(sym)
            pos += 2
        configs.append((state, offset, tuple(window)))
    return configs or None


def T(e: int, x: int, z: int) -> bool:
    """Whether ``z`` codes the halting run of machine ``e`` on word ``x``."""
    configs = decode_history(z)
    if configs is None:
        return False
    machine = decode_machine(e)
    if configs[0] != normalize(initial_configuration(index_to_word(x))):
        return False
    for prev, nxt in zip(configs, configs[1:]):
        if not 1 <= prev[0] <= machine.k:
            return False
        if normalize(step(machine, _denormalize(prev))) != nxt:
            return False
    return configs[-1][0] == 0


def U(z: int) -> str:
    """Head word of the last configuration coded by ``z``.

    The empty word when ``z`` does not parse or its last configuration is not
    in state 0.
    """
    configs = decode_history(z)
    if configs is None or configs[-1][0] != 0:
        return ""
    _, offset, window = configs[-1]
    if window[offset] == BLANK:
        return ""
    lo = hi = offset
    while lo > 0 and window[lo - 1] != BLANK:
        lo -= 1
    while hi + 1 < len(window) and window[hi + 1] != BLANK:
        hi += 1
    return "".join(str(s) for s in window[lo:hi + 1])


@dataclass(frozen=True)
class HistoryCode:
    z: int
    configs: tuple[NormalConfig, ...]


def _config_bits(nc: NormalConfig) -> str:
    state, offset, window = nc
    return _nat(state) + _nat(offset) + _nat(len(window)) + "".join(_SYM_BITS[s] for s in window)


def encode_history(e: int, x: int, max_steps: int, max_bits: Optional[int] = None) -> Optional[HistoryCode]:
    """The history code of machine ``e`` on word ``x`` if it halts within ``max_steps``, else None.

    With ``max_bits`` set, also None as soon as the code would need more bits.
    """
    machine = decode_machine(e)
    c = initial_configuration(index_to_word(x))
    configs = [normalize(c)]
    bits = [_config_bits(configs[0])]
    used = len(bits[0])
    while c.state != 0:
        if c.steps >= max_steps or (max_bits is not None and used > max_bits):
            return None
        c = step(machine, c)
        configs.append(normalize(c))
        bits.append(_config_bits(configs[-1]))
        used += len(bits[-1])
    if max_bits is not None and used > max_bits:
        return None
    return HistoryCode(word_to_index("".join(bits)), tuple(configs))


def _least_history(e: int, x: int, budget: int) -> Optional[int]:
    # a code <= budget has at most budget.bit_length() - 1 bits, and each configuration takes at least 7
    width = max(budget.bit_length() - 1, 0)
    hc = encode_history(e, x, width // 7, width)
    if hc is None or hc.z > budget:
        return None
    return hc.z


def phi(e: int, x: int, budget: int) -> SearchResult:
    """``U(μ_y T(e, x, y))`` with the search restricted to ``y <= budget``.

    ``probes`` is the number of points the literal search covers.
    """
    z = _least_history(e, x, budget)
    if z is None:
        return SearchResult.miss(budget + 1)
    return SearchResult.hit(z, z + 1, U(z))


class SearchLimitExceeded(RuntimeError):
    """A literal scan of an opaque predicate would exceed its limit."""


class TotalPredicate:
    """A total predicate on the naturals with a μ-search hook.

    ``first_true(hi)`` returns the least ``y <= hi`` where the predicate holds,
    or None.  The default scans literally, refusing ranges above ``scan_limit``.
    """

    scan_limit = 1_000_000

    def __call__(self, y: int) -> bool:
        raise NotImplementedError

    def first_true(self, hi: int) -> Optional[int]:
        if hi > self.scan_limit:
            raise SearchLimitExceeded(f"refusing to scan {hi + 1} points of an opaque predicate")
        for y in range(hi + 1):
            if self(y):
                return y
        return None


class Never(TotalPredicate):
    def __call__(self, y: int) -> bool:
        return False

    def first_true(self, hi: int) -> Optional[int]:
        return None


@dataclass(frozen=True)
class TrueAt(TotalPredicate):
    """True exactly at ``y0``."""

    y0: int

    def __call__(self, y: int) -> bool:
        return y == self.y0

    def first_true(self, hi: int) -> Optional[int]:
        return self.y0 if self.y0 <= hi else None


class _Wrapped(TotalPredicate):
    def __init__(self, fn: Callable[[int], bool]):
        self.fn = fn

    def __call__(self, y: int) -> bool:
        return bool(self.fn(y))


def as_predicate(q) -> TotalPredicate:
    return q if isinstance(q, TotalPredicate) else _Wrapped(q)


def unsound_total(e: int, q, x: int, budget: int) -> SearchResult:
    """``U(μ_y [T(e, x, y) or Q(y)])`` over ``y <= budget``.

    With Q true somewhere below the budget this is total in ``x``.  When Q
    stops the search first, the value is U of a non-history, normally the
    empty word.
    """
    q = as_predicate(q)
    z = _least_history(e, x, budget)
    y = q.first_true(budget if z is None else z)
    if y is not None and (z is None or y < z):
        return SearchResult.hit(y, y + 1, U(y))
    if z is not None:
        return SearchResult.hit(z, z + 1, U(z))
    return SearchResult.miss(budget + 1)
