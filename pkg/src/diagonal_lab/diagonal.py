"""The diagonalization engine.

Given indices ``e_0, e_1, ...`` of machines asserted to compute total
functions ``F_i``, the engine reorders the clocked-machine enumeration so that
for every ``i`` some position ``m_i`` has ``A(m_i, F_i(m_i))``: the machine at
``m_i`` is accepted on ``y'_i = F_i(m_i)``.  Then ``f_P(m_i)``, whenever it is
defined, is a point where V rejects and so cannot equal ``y'_i``.

Step ``i`` works at ``m_i``, the first position past the frozen prefix.  If
the machine there already accepts ``y'_i`` nothing moves.  Otherwise the
engine scans ``m_i + 1, m_i + 2, ...`` for the first accepting machine ``k_i``
and swaps the two positions.  Everything up to ``m_i`` (or ``k_i``) is then
frozen, so later steps never disturb earlier witnesses.

Positions whose clocked run the simulator cannot settle are skipped by the
scan and listed in the step record.  Skipping only costs minimality of
``k_i``; any acceptor gives the witness.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

from .clocks import POLYNOMIAL, ClockedMachine, GrowthFamily, clocked_run
from .machine import SimulationLimitExceeded, constant_machine, decode_machine, encode_machine, run
from .representation import IDENTITY, Representation
from .verify import SearchResult, SearchStatus, Verifier, f_P, pred_A, pred_P
from .words import index_to_word, word_to_index

__all__ = [
    "Budgets",
    "DiagonalState",
    "ScanCeiling",
    "StepRecord",
    "TotalityViolation",
    "Verdict",
    "apply",
    "builtin_constants",
    "check_divergence",
    "diagonal_step",
    "equivalence_check",
    "inverse",
    "run_diagonalization",
]


class TotalityViolation(RuntimeError):
    """A supplied index did not halt within the meta-budget."""


class ScanCeiling(RuntimeError):
    """No accepting machine found within the scan ceiling."""


@dataclass(frozen=True)
class Budgets:
    meta: int = 100_000          # steps allowed for each F_i(m_i) evaluation
    scan_ceiling: int = 1_000_000  # positions scanned for an acceptor
    provisional: int = 256       # μ-search budget for the provisional f_P(m_i)


@dataclass(frozen=True)
class StepRecord:
    i: int
    e: int
    m: int
    y_prime: int
    swapped: bool
    k: Optional[int]
    provisional_partial: bool
    skipped: tuple[int, ...] = ()

    def as_row(self) -> dict:
        row = asdict(self)
        row["skipped"] = list(self.skipped)
        return row


@dataclass(frozen=True)
class DiagonalState:
    phi: Representation = IDENTITY
    m_next: int = 0
    steps: tuple[StepRecord, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "phi_prefix": list(self.phi.prefix),
            "m_next": self.m_next,
            "steps": [s.as_row() for s in self.steps],
        }


def apply(phi: Representation, position: int) -> int:
    return phi.apply(position)


def inverse(phi: Representation, code: int) -> int:
    return phi.inverse(code)


def _p_value(V: Verifier, phi: Representation, m: int, x: int, family: GrowthFamily) -> Optional[bool]:
    try:
        return pred_P(V, phi, m, x, family)
    except SimulationLimitExceeded:
        return None


def equivalence_check(V: Verifier, phi: Representation, samples: Iterable[tuple[int, int]],
                      family: GrowthFamily = POLYNOMIAL) -> bool:
    """Check ``P^phi(m, x) == P^0(n, x)`` where ``n`` is the identity position of the machine at ``m``.

    Also requires ``inverse(n) == m``, so an inconsistent representation fails.
    A side the simulator cannot settle counts as a third value, so both sides
    must be undetermined together.
    """
    for m, x in samples:
        n = phi.apply(m)
        if phi.inverse(n) != m:
            return False
        if _p_value(V, phi, m, x, family) != _p_value(V, IDENTITY, n, x, family):
            return False
    return True


def _accepts(V: Verifier, code: int, y: int, family: GrowthFamily) -> Optional[bool]:
    w = index_to_word(y)
    try:
        return V(w, clocked_run(ClockedMachine(code, family), w)) == 1
    except SimulationLimitExceeded:
        return None


def diagonal_step(state: DiagonalState, e_i: int, V: Verifier, family: GrowthFamily = POLYNOMIAL,
                  budgets: Budgets = Budgets()) -> DiagonalState:
    m = state.m_next
    outcome = run(decode_machine(e_i), index_to_word(m), budgets.meta)
    if not outcome.halted:
        raise TotalityViolation(f"machine {e_i} did not halt on input {m} within {budgets.meta} steps")
    y_prime = word_to_index(outcome.output)

    provisional = f_P(V, state.phi, m, budgets.provisional, family)
    phi = state.phi
    skipped: list[int] = []
    if _accepts(V, phi.apply(m), y_prime, family):
        swapped, k, m_next = False, None, m + 1
    else:
        for j in range(m + 1, m + 1 + budgets.scan_ceiling):
            # positions past the frozen prefix still hold their own code
            verdict = _accepts(V, phi.apply(j), y_prime, family)
            if verdict is None:
                skipped.append(j)
            elif verdict:
                k = j
                break
        else:
            raise ScanCeiling(f"no acceptor for y'={y_prime} in positions {m + 1}..{m + budgets.scan_ceiling}")
        phi = phi.transpose(m, k)
        swapped, m_next = True, k + 1
    record = StepRecord(len(state.steps), e_i, m, y_prime, swapped, k, not provisional.found, tuple(skipped))
    return DiagonalState(phi.extend(m_next), m_next, state.steps + (record,))


def run_diagonalization(total_indices: Iterable[int], V: Verifier, family: GrowthFamily = POLYNOMIAL,
                        budgets: Budgets = Budgets()) -> DiagonalState:
    state = DiagonalState()
    for e in total_indices:
        state = diagonal_step(state, e, V, family, budgets)
    return state


@dataclass(frozen=True)
class Verdict:
    i: int
    m: int
    y_prime: int
    accepted: bool
    search: SearchResult
    mode: str

    @property
    def passed(self) -> bool:
        if not self.accepted:
            return False
        return not self.search.found or self.search.witness != self.y_prime

    def as_row(self) -> dict:
        return {
            "i": self.i, "m": self.m, "y_prime": self.y_prime, "accepted": self.accepted,
            "f_P": self.search.as_row(), "mode": self.mode, "passed": self.passed,
        }


def check_divergence(state: DiagonalState, V: Verifier, budget: int,
                     family: GrowthFamily = POLYNOMIAL) -> list[Verdict]:
    """Recheck every step against the final representation."""
    verdicts = []
    for rec in state.steps:
        try:
            accepted = pred_A(V, state.phi, rec.m, rec.y_prime, family)
        except SimulationLimitExceeded:
            accepted = False  # unconfirmed acceptance fails the verdict
        search = f_P(V, state.phi, rec.m, budget, family)
        if search.found:
            mode = "value-differs"
        elif search.status is SearchStatus.UNDETERMINED:
            mode = "divergence-by-acceptance only (f_P undetermined)"
        else:
            mode = "divergence-by-acceptance only"
        verdicts.append(Verdict(rec.i, rec.m, rec.y_prime, accepted, search, mode))
    return verdicts


def builtin_constants(n: int) -> list[int]:
    """Indices of the constant machines C_w for the first ``n`` words w."""
    return [encode_machine(constant_machine(index_to_word(j))) for j in range(n)]


def random_samples(count: int, m_max: int, x_max: int, seed: int = 0) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    return [(rng.randrange(m_max + 1), rng.randrange(x_max + 1)) for _ in range(count)]
