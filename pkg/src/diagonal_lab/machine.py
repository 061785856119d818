"""Single-tape Turing machines over {0, 1, blank}, their Gödel numbering and a simulator.

Conventions: states are ``0..k`` with ``0`` final, the input is written at
cells ``0..|x|-1``, the head starts on cell 0 in state 1, and every transition
moves the head one cell.  The output word is the maximal non-blank block under
the head, or the empty word when the head is on a blank.

Gödel numbering (``decode_machine``), bit-exact:

1. Take the canonical word ``w`` of ``e``.  Let ``u`` be the number of leading
   ``1`` bits before the first ``0`` (all of ``w`` if it has no ``0``).  The
   machine has ``k = u + 1`` non-final states; the remaining bits after that
   ``0`` form the word ``r``.
2. Let ``R = word_to_index(r)``, read little-endian in base ``D = 6 (k + 1)``.
   Digit ``j`` describes the transition for state ``j % k + 1`` reading
   symbol ``(blank, 0, 1)[j // k]``: all blank-reading transitions come first,
   so machines that do something on an empty tape get small numbers.  Digits
   past ``3k`` are ignored and missing digits are zero.
3. A digit ``d`` splits as ``next = d % (k+1)``,
   ``w = (d // (k+1)) % 3`` (0 = blank, 1 = "0", 2 = "1") and
   ``m = d // (3 (k+1))`` (0 = right, 1 = left).  So digit 0 is the default
   transition ``(s_0, blank, R)``.

Every natural number decodes, and every machine is the decode of its
``encode_machine`` value.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping

from .words import index_to_word, word_to_index

__all__ = [
    "BLANK",
    "Configuration",
    "HaltedStepError",
    "L",
    "OutputUnavailable",
    "R",
    "RunOutcome",
    "SimulationLimitExceeded",
    "Status",
    "TuringMachine",
    "constant_machine",
    "constant_machine_steps",
    "decode_machine",
    "encode_machine",
    "initial_configuration",
    "output_word",
    "run",
    "step",
]

BLANK = 2
R, L = 1, -1
SYMBOLS = "01_"

# Hard ceiling on steps actually executed by the accelerated simulator.  Budgets
# above it are fine as long as the run halts, escapes or cycles before it.
SIMULATION_LIMIT = 300_000


class HaltedStepError(ValueError):
    """Raised when stepping a configuration that is already in state 0."""


class SimulationLimitExceeded(RuntimeError):
    """The run neither halted nor was recognised as looping within SIMULATION_LIMIT steps."""


class OutputUnavailable(SimulationLimitExceeded):
    """The run's status and length are known but its output word cannot be produced."""


Transition = tuple[int, int, int]  # (next state, written symbol, move)
DEFAULT_TRANSITION: Transition = (0, BLANK, R)


@dataclass(frozen=True)
class TuringMachine:
    """A machine with non-final states ``1..k``.

    ``table[3 * (state - 1) + symbol]`` is the transition for that state and
    symbol.
    """

    k: int
    table: tuple[Transition, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("a machine needs at least one non-final state")
        if len(self.table) != 3 * self.k:
            raise ValueError(f"expected {3 * self.k} transitions, got {len(self.table)}")
        for nxt, write, move in self.table:
            if not 0 <= nxt <= self.k:
                raise ValueError(f"transition target s_{nxt} exceeds k={self.k}")
            if write not in (0, 1, BLANK) or move not in (L, R):
                raise ValueError(f"malformed transition {(nxt, write, move)}")

    @classmethod
    def from_transitions(cls, k: int, transitions: Mapping[tuple[int, int], Transition]) -> TuringMachine:
        """Build from ``{(state, symbol): (next, write, move)}``; unspecified entries default to ``(s_0, blank, R)``."""
        table = [DEFAULT_TRANSITION] * (3 * k)
        for (state, symbol), tr in transitions.items():
            if not 1 <= state <= k or symbol not in (0, 1, BLANK):
                raise ValueError(f"no transition slot for state {state}, symbol {symbol}")
            table[3 * (state - 1) + symbol] = tuple(tr)
        return cls(k, tuple(table))

    def transition(self, state: int, symbol: int) -> Transition:
        return self.table[3 * (state - 1) + symbol]

    @cached_property
    def can_halt(self) -> bool:
        """Whether a transition into s_0 is reachable from state 1 in the transition graph."""
        seen, todo = {1}, [1]
        while todo:
            q = todo.pop()
            for sym in (0, 1, BLANK):
                nxt = self.table[3 * (q - 1) + sym][0]
                if nxt == 0:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return False

    @cached_property
    def _escapes(self) -> dict[tuple[int, int], bool]:
        # (state, direction) -> True if, standing on fresh blanks, the machine
        # keeps moving in that direction forever without halting.
        result = {}
        for q in range(1, self.k + 1):
            for d in (L, R):
                seen, cur, esc = {q}, q, False
                while True:
                    nxt, _, mv = self.table[3 * (cur - 1) + BLANK]
                    if nxt == 0 or mv != d:
                        break
                    if nxt in seen:
                        esc = True
                        break
                    seen.add(nxt)
                    cur = nxt
                result[q, d] = esc
        return result

    def to_text(self) -> str:
        lines = []
        for j, (nxt, write, move) in enumerate(self.table):
            state, sym = j // 3 + 1, j % 3
            lines.append(f"{state} {SYMBOLS[sym]} -> {nxt} {SYMBOLS[write]} {'R' if move == R else 'L'}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> TuringMachine:
        """Parse ``state symbol -> state' symbol' move`` lines; ``#`` starts a comment."""
        entries: dict[tuple[int, int], Transition] = {}
        k = 1
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                lhs, rhs = line.split("->")
                state, sym = lhs.split()
                nxt, write, move = rhs.split()
                key = (int(state), SYMBOLS.index(sym))
                tr = (int(nxt), SYMBOLS.index(write), {"R": R, "L": L}[move.upper()])
            except (ValueError, KeyError) as exc:
                raise ValueError(f"line {lineno}: cannot parse {raw!r}") from exc
            if key in entries:
                raise ValueError(f"line {lineno}: duplicate transition for {key}")
            entries[key] = tr
            k = max(k, key[0], tr[0])
        return cls.from_transitions(k, entries)


_DIGIT_SYMBOLS = (BLANK, 0, 1)


def _slot(j: int, k: int) -> int:
    # table slot described by digit j
    return 3 * (j % k) + _DIGIT_SYMBOLS[j // k]


@lru_cache(maxsize=65536)
def decode_machine(e: int) -> TuringMachine:
    w = index_to_word(e)
    u = w.find("0")
    if u < 0:
        k, rest = len(w) + 1, ""
    else:
        k, rest = u + 1, w[u + 1:]
    digits = word_to_index(rest)
    base = 6 * (k + 1)
    table = [DEFAULT_TRANSITION] * (3 * k)
    for j in range(3 * k):
        digits, d = divmod(digits, base)
        nxt = d % (k + 1)
        wf = (d // (k + 1)) % 3
        write = BLANK if wf == 0 else wf - 1
        move = R if d // (3 * (k + 1)) == 0 else L
        table[_slot(j, k)] = (nxt, write, move)
    return TuringMachine(k, tuple(table))


def encode_machine(machine: TuringMachine) -> int:
    k = machine.k
    base = 6 * (k + 1)
    number = 0
    for j in reversed(range(3 * k)):
        nxt, write, move = machine.table[_slot(j, k)]
        if not 0 <= nxt <= k:
            raise ValueError(f"transition target s_{nxt} exceeds k={k}")
        wf = 0 if write == BLANK else write + 1
        d = nxt + (k + 1) * (wf + 3 * (0 if move == R else 1))
        number = number * base + d
    return word_to_index("1" * (k - 1) + "0" + index_to_word(number))


@dataclass(frozen=True)
class Configuration:
    """Machine state, head position, step counter and the non-blank cells as sorted ``(pos, symbol)`` pairs."""

    tape: tuple[tuple[int, int], ...]
    head: int
    state: int
    steps: int = 0

    @classmethod
    def from_cells(cls, cells: Mapping[int, int], head: int, state: int, steps: int = 0) -> Configuration:
        return cls(tuple(sorted((p, s) for p, s in cells.items() if s != BLANK)), head, state, steps)

    @property
    def cells(self) -> dict[int, int]:
        return dict(self.tape)


def initial_configuration(x: str) -> Configuration:
    return Configuration(tuple((i, int(ch)) for i, ch in enumerate(x)), 0, 1, 0)


def _head_word(cells: Mapping[int, int], head: int) -> str:
    if head not in cells:
        return ""
    lo = hi = head
    while lo - 1 in cells:
        lo -= 1
    while hi + 1 in cells:
        hi += 1
    return "".join(str(cells[p]) for p in range(lo, hi + 1))


def output_word(c: Configuration) -> str:
    return _head_word(c.cells, c.head)


def step(machine: TuringMachine, c: Configuration) -> Configuration:
    if c.state == 0:
        raise HaltedStepError("configuration is already halted")
    cells = c.cells
    nxt, write, move = machine.transition(c.state, cells.get(c.head, BLANK))
    if write == BLANK:
        cells.pop(c.head, None)
    else:
        cells[c.head] = write
    return Configuration.from_cells(cells, c.head + move, nxt, c.steps + 1)


class Status(enum.Enum):
    HALTED = "halted"
    OUT_OF_BUDGET = "out_of_budget"


@dataclass(frozen=True)
class RunOutcome:
    """Result of a budgeted run.

    ``output`` is the head word of the configuration where the run stopped;
    for ``OUT_OF_BUDGET`` that is the configuration after exactly ``steps``
    steps, which is what a clock reads off.  ``word`` is None when the run is
    settled but its head word cannot be produced (``note`` says why); reading
    ``output`` then raises ``OutputUnavailable``.
    """

    status: Status
    word: str | None
    steps: int
    note: str = ""

    @property
    def halted(self) -> bool:
        return self.status is Status.HALTED

    @property
    def output(self) -> str:
        if self.word is None:
            raise OutputUnavailable(self.note)
        return self.word


class _Side:
    """Brent-style anchor for translated-cycle detection towards one end of the tape.

    Positions are in side coordinates ``u = sign * head``.  A record is a step
    where ``u`` exceeds every visited cell and every input cell, so everything
    beyond the head is blank.
    """

    __slots__ = ("sign", "edge", "power", "count", "t", "state", "pos", "back", "tape")

    def __init__(self, sign: int, edge: int):
        self.sign, self.edge = sign, edge
        self.power, self.count = 1, 0
        self.t = self.state = self.pos = self.back = 0
        self.tape: dict[int, int] | None = None

    def anchor(self, t: int, state: int, u: int, tape: dict[int, int]) -> None:
        self.t, self.state, self.pos, self.back, self.tape = t, state, u, u, dict(tape)

    def repeats(self, tape: dict[int, int], u: int) -> bool:
        # the window the machine read since the anchor reappears, shifted
        s, shift = self.sign, u - self.pos
        return all(
            self.tape.get(s * v, BLANK) == tape.get(s * (v + shift), BLANK)
            for v in range(self.back, self.pos + 1)
        )


# Longest output word a fast-forwarded run will materialise.
MAX_OUTPUT = 1_000_000

# Budgets up to this many steps are always simulated directly.
PLAIN_STEPS = 4096


def _advance(table, tape: dict[int, int], head: int, state: int, n: int) -> tuple[int, int]:
    for _ in range(n):
        nxt, write, move = table[3 * (state - 1) + tape.get(head, BLANK)]
        if write == BLANK:
            tape.pop(head, None)
        else:
            tape[head] = write
        head += move
        state = nxt
        if state == 0:
            break
    return head, state


def _plain(machine: TuringMachine, x: str, max_steps: int) -> RunOutcome:
    table = machine.table
    tape = {i: int(ch) for i, ch in enumerate(x)}
    head, state, t = 0, 1, 0
    while t < max_steps:
        nxt, write, move = table[3 * (state - 1) + tape.get(head, BLANK)]
        if write == BLANK:
            tape.pop(head, None)
        else:
            tape[head] = write
        head += move
        state = nxt
        t += 1
        if state == 0:
            return RunOutcome(Status.HALTED, _head_word(tape, head), t)
    return RunOutcome(Status.OUT_OF_BUDGET, _head_word(tape, head), t)


class _Behaviour:
    # What a machine does on one input from step ``settled`` onwards;
    # ``settled`` is None when nothing was established.

    def at(self, table, max_steps: int) -> RunOutcome:
        raise NotImplementedError


@dataclass(frozen=True)
class _Halts(_Behaviour):
    settled: int
    output: str

    def at(self, table, max_steps: int) -> RunOutcome:
        return RunOutcome(Status.HALTED, self.output, self.settled)


@dataclass(frozen=True)
class _Escapes(_Behaviour):
    settled: int

    def at(self, table, max_steps: int) -> RunOutcome:
        return RunOutcome(Status.OUT_OF_BUDGET, "", max_steps)


@dataclass(frozen=True)
class _Unknown(_Behaviour):
    settled: None = None


@dataclass(frozen=True)
class _Cycles(_Behaviour):
    settled: int
    period: int
    tape: dict
    head: int
    state: int

    def at(self, table, max_steps: int) -> RunOutcome:
        tape = dict(self.tape)
        head, _ = _advance(table, tape, self.head, self.state, (max_steps - self.settled) % self.period)
        return RunOutcome(Status.OUT_OF_BUDGET, _head_word(tape, head), max_steps)


@dataclass(frozen=True)
class _Translates(_Behaviour):
    # Cells below ``base`` (side coordinates) are never touched again; each
    # period appends one more copy of ``block`` and shifts the rest by ``len(block)``.
    settled: int
    period: int
    sign: int
    base: int
    block: tuple[int, ...]
    tape: dict
    head: int
    state: int

    def at(self, table, max_steps: int) -> RunOutcome:
        s, base, block, shift = self.sign, self.base, self.block, len(self.block)
        full = BLANK not in block
        tape = dict(self.tape)
        q, r = divmod(max_steps - self.settled, self.period)
        head, _ = _advance(table, tape, self.head, self.state, r)
        grown = q * shift
        top = base + grown

        def cell(u: int) -> int:
            if u < base:
                return tape.get(s * u, BLANK)
            if u < top:
                return block[(u - base) % shift]
            return tape.get(s * (u - grown), BLANK)

        def reach(u: int, d: int) -> int:
            # farthest non-blank cell from u in direction d, jumping across a blank-free block region
            while True:
                v = u + d
                if full and base <= v < top:
                    u = top - 1 if d > 0 else base
                elif cell(v) == BLANK:
                    return u
                else:
                    u = v

        u0 = s * head + grown
        if cell(u0) == BLANK:
            return RunOutcome(Status.OUT_OF_BUDGET, "", max_steps)
        a, b = reach(u0, -1), reach(u0, 1)
        if b - a >= MAX_OUTPUT:
            return RunOutcome(Status.OUT_OF_BUDGET, None, max_steps,
                              f"output word of length {b - a + 1} is too long to materialise")
        word = "".join(str(cell(u)) for u in range(a, b + 1))
        return RunOutcome(Status.OUT_OF_BUDGET, word if s == R else word[::-1], max_steps)


def _analyse(machine: TuringMachine, x: str) -> _Behaviour:
    table = machine.table
    escapes = machine._escapes
    tape = {i: int(ch) for i, ch in enumerate(x)}
    lo, hi = 0, len(x) - 1
    head, state, t = 0, 1, 0
    sides = (_Side(R, max(len(x) - 1, 0)), _Side(L, 0))

    snap_state, snap_head, snap_tape = state, head, dict(tape)
    power, lam = 1, 0
    while t < SIMULATION_LIMIT:
        nxt, write, move = table[3 * (state - 1) + tape.get(head, BLANK)]
        if write == BLANK:
            tape.pop(head, None)
        else:
            tape[head] = write
            if head < lo:
                lo = head
            if head > hi:
                hi = head
        head += move
        state = nxt
        t += 1
        if state == 0:
            return _Halts(t, _head_word(tape, head))
        if head > hi or head < lo:
            if hi < lo:
                gone = escapes[state, L] or escapes[state, R]
            else:
                gone = escapes[state, R if head > hi else L]
            if gone:
                return _Escapes(t)

        for side in sides:
            u = side.sign * head
            if side.tape is not None and u < side.back:
                side.back = u
            if u > side.edge:
                side.edge = u
                if side.tape is not None and state == side.state and side.repeats(tape, u):
                    s, shift = side.sign, u - side.pos
                    block = tuple(tape.get(s * (side.back + j), BLANK) for j in range(shift))
                    return _Translates(t, t - side.t, s, side.back + shift, block, tape, head, state)
                side.count += 1
                if side.count == side.power:
                    side.anchor(t, state, u, tape)
                    side.power *= 2
                    side.count = 0

        lam += 1
        if state == snap_state and head == snap_head and tape == snap_tape:
            return _Cycles(t, lam, tape, head, state)
        if lam == power:
            snap_state, snap_head, snap_tape = state, head, dict(tape)
            power *= 2
            lam = 0
    return _Unknown()


_behaviours: dict[tuple[TuringMachine, str], _Behaviour] = {}
_BEHAVIOUR_CACHE = 1 << 16


def _behaviour(machine: TuringMachine, x: str) -> _Behaviour:
    key = (machine, x)
    found = _behaviours.get(key)
    if found is None:
        if len(_behaviours) >= _BEHAVIOUR_CACHE:
            _behaviours.clear()
        found = _behaviours[key] = _analyse(machine, x)
    return found


def run(machine: TuringMachine, x: str, max_steps: int) -> RunOutcome:
    """Run on ``x`` for at most ``max_steps`` transitions.

    Runs that provably never halt are fast-forwarded to ``max_steps``, with the
    same output the plain simulation would reach.  Three patterns are
    recognised: the head leaving the written region in a blank-reading state
    cycle that keeps moving away; an exact repeat of the whole configuration
    (Brent cycle detection); and a translated cycle, where between two record
    positions in the same state the machine reads a tape window that
    reappears shifted.  The analysis is cached per machine and input, so the
    same run under many budgets costs one simulation.  A budget above
    ``SIMULATION_LIMIT`` on a run that fits none of the patterns raises
    ``SimulationLimitExceeded``, unless the machine cannot reach s_0 at all:
    then the outcome is known to be out of budget but carries no word.
    """
    if max_steps <= PLAIN_STEPS and (machine, x) not in _behaviours:
        return _plain(machine, x, max_steps)
    found = _behaviour(machine, x)
    if found.settled is None:
        if max_steps > SIMULATION_LIMIT:
            if not machine.can_halt:
                return RunOutcome(Status.OUT_OF_BUDGET, None, max_steps,
                                  f"never halts, but the head word after {max_steps} steps is unknown")
            raise SimulationLimitExceeded(f"no verdict after {SIMULATION_LIMIT} steps (budget {max_steps})")
        return _plain(machine, x, max_steps)
    if max_steps < found.settled:
        return _plain(machine, x, max_steps)
    return found.at(machine.table, max_steps)


def constant_machine(s: str) -> TuringMachine:
    """The machine C_s: erase the input left to right, write ``s`` after it, and halt on ``s``.

    State 1 erases until the first blank, then writes ``s[0]``; states
    ``2..|s|`` write the rest; state ``|s|+1`` steps back onto the last symbol.
    For the empty word, state 1 halts on the first blank.
    """
    if s.strip("01"):
        raise ValueError(f"not a binary word: {s!r}")
    if not s:
        return TuringMachine.from_transitions(1, {(1, 0): (1, BLANK, R), (1, 1): (1, BLANK, R)})
    n = len(s)
    k = n + 1
    entries: dict[tuple[int, int], Transition] = {
        (1, 0): (1, BLANK, R),
        (1, 1): (1, BLANK, R),
        (1, BLANK): (2, int(s[0]), R),
    }
    for j in range(1, n):
        entries[j + 1, BLANK] = (j + 2, int(s[j]), R)
    entries[k, BLANK] = (0, BLANK, L)
    return TuringMachine.from_transitions(k, entries)


def constant_machine_steps(s: str, n: int) -> int:
    """Closed-form bound on the running time of C_s on inputs of length ``n`` (exact for nonempty ``s``)."""
    return n + len(s) + 1
