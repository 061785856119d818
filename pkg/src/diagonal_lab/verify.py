"""Verifiers, the predicates P and A, μ-search functions, and NP/SAT membership by brute force."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .clocks import POLYNOMIAL, ClockedMachine, GrowthFamily, clocked_run
from .machine import SimulationLimitExceeded, constant_machine, constant_machine_steps, encode_machine
from .representation import IDENTITY, Representation
from .words import CnfFormula, decode_cnf, index_to_word, pair, word_to_index

__all__ = [
    "InfeasibleBound",
    "NoWitness",
    "SearchResult",
    "SearchStatus",
    "Verifier",
    "acceptable_machines",
    "axiom_violations",
    "classify_formula",
    "cnf_sat_verifier",
    "f_P",
    "f_negA",
    "get_verifier",
    "np_member",
    "parity_verifier",
    "pred_A",
    "pred_P",
    "register_verifier",
    "sat_member",
]


class NoWitness(LookupError):
    """No accepting candidate found within the search bound."""


class InfeasibleBound(ValueError):
    """A brute-force enumeration would exceed its configured ceiling."""


@dataclass(frozen=True)
class Verifier:
    """A total 0/1 check on (instance word, candidate word).

    ``cost_index`` names the growth-family member under which the check runs.
    """

    name: str
    check: Callable[[str, str], int]
    cost_index: int = 0

    def __call__(self, x: str, s: str) -> int:
        return self.check(x, s)


def _parity_check(x: str, s: str) -> int:
    if not s:
        return 0
    return int(not x or word_to_index(s) % 2 == 0)


def _cnf_check(x: str, s: str) -> int:
    if not s:
        return 0
    if not x:
        return 1
    return int(decode_cnf(x).evaluate([b == "1" for b in s]))


_VERIFIERS: dict[str, Verifier] = {}


def register_verifier(v: Verifier) -> Verifier:
    _VERIFIERS[v.name] = v
    return v


def get_verifier(name: str) -> Verifier:
    try:
        return _VERIFIERS[name]
    except KeyError:
        raise KeyError(f"unknown verifier {name!r}; known: {sorted(_VERIFIERS)}") from None


PARITY = register_verifier(Verifier("parity", _parity_check))
CNF = register_verifier(Verifier("cnf", _cnf_check))


def parity_verifier() -> Verifier:
    """Accepts a nonempty candidate when the instance is empty or the candidate has even index."""
    return PARITY


def cnf_sat_verifier() -> Verifier:
    """Accepts ``s`` when it is a satisfying assignment of the formula coded by ``x``.

    Bit ``j`` of ``s`` (1-based) is variable ``j``; variables past ``|s|`` are
    false.  The empty-word rules are applied first.
    """
    return CNF


class SearchStatus(enum.Enum):
    FOUND = "found"
    BUDGET_EXHAUSTED = "budget_exhausted"
    UNDETERMINED = "undetermined"  # a probe could not be evaluated, so minimality is unknown


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    witness: Optional[int]
    probes: int
    output: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @classmethod
    def hit(cls, witness: int, probes: int, output: Optional[str] = None) -> SearchResult:
        return cls(SearchStatus.FOUND, witness, probes, output)

    @classmethod
    def miss(cls, probes: int) -> SearchResult:
        return cls(SearchStatus.BUDGET_EXHAUSTED, None, probes)

    @classmethod
    def stuck(cls, probes: int) -> SearchResult:
        return cls(SearchStatus.UNDETERMINED, None, probes)

    def as_row(self) -> dict:
        row = {"status": self.status.value, "witness": self.witness, "probes": self.probes}
        if self.output is not None:
            row["output"] = self.output
        return row


def pred_P(V: Verifier, phi: Representation, m: int, x: int, family: GrowthFamily = POLYNOMIAL) -> bool:
    """True when the machine at position ``m`` produces a candidate on word ``x`` that V rejects."""
    w = index_to_word(x)
    return V(w, clocked_run(ClockedMachine(phi.apply(m), family), w)) == 0


def pred_A(V: Verifier, phi: Representation, m: int, x: int, family: GrowthFamily = POLYNOMIAL) -> bool:
    return not pred_P(V, phi, m, x, family)


def f_P(V: Verifier, phi: Representation, m: int, budget: int, family: GrowthFamily = POLYNOMIAL) -> SearchResult:
    """μ-search for the least ``x <= budget`` with ``pred_P(m, x)``.

    Stops with an undetermined result at the first probe the simulator cannot
    settle, since no later hit could be certified least.
    """
    machine = ClockedMachine(phi.apply(m), family)
    for x in range(budget + 1):
        w = index_to_word(x)
        try:
            rejected = V(w, clocked_run(machine, w)) == 0
        except SimulationLimitExceeded:
            return SearchResult.stuck(x + 1)
        if rejected:
            return SearchResult.hit(x, x + 1)
    return SearchResult.miss(budget + 1)


def f_negA(V: Verifier, m: int, budget: int, family: GrowthFamily = POLYNOMIAL) -> SearchResult:
    """μ-search for the least ``x`` where the m-th unpermuted machine is not accepted."""
    for x in range(budget + 1):
        try:
            accepted = pred_A(V, IDENTITY, m, x, family)
        except SimulationLimitExceeded:
            return SearchResult.stuck(x + 1)
        if not accepted:
            return SearchResult.hit(x, x + 1)
    return SearchResult.miss(budget + 1)


def acceptable_machines(
    V: Verifier,
    x0: int,
    count: int,
    family: GrowthFamily = POLYNOMIAL,
    search_bound: int = 1 << 12,
) -> list[int]:
    """Codes of ``count`` clocked constant machines for which ``x0`` is acceptable.

    The candidate ``s`` is the first word (by index, up to ``search_bound``)
    that V accepts for ``x0``.  The clocks are ``g_c, g_(c+1), ...`` with ``c``
    the running time of C_s on ``x0``; since ``g_c(x) >= c + 3`` for any lawful
    family, the clock never interrupts C_s.
    """
    w0 = index_to_word(x0)
    for j in range(search_bound + 1):
        s = index_to_word(j)
        if V(w0, s) == 1:
            break
    else:
        raise NoWitness(f"no accepted candidate for x0={x0} among the first {search_bound + 1} words")
    i = encode_machine(constant_machine(s))
    c = constant_machine_steps(s, len(w0))
    return [pair(i, c + k) for k in range(count)]


def np_member(
    p_index: int,
    R: Callable[[str, str], bool],
    x: str,
    family: GrowthFamily = POLYNOMIAL,
    ceiling: int = 1 << 22,
) -> bool:
    """Whether some word ``y`` with ``|y| <= g_p(|x|)`` satisfies ``R(x, y)``, by enumeration."""
    bound = family.eval(p_index, len(x))
    if bound >= ceiling.bit_length():
        raise InfeasibleBound(f"candidate words up to length {bound} exceed the ceiling {ceiling}")
    total = (1 << (bound + 1)) - 1
    if total > ceiling:
        raise InfeasibleBound(f"{total} candidate words exceed the ceiling {ceiling}")
    return any(R(x, index_to_word(j)) for j in range(total))


def sat_member(x: str, max_vars: int = 20) -> bool:
    """Whether some ``s`` with ``|s| <= |x| + 1`` makes the CNF verifier accept ``x``.

    Only words of length exactly ``varcount`` are tried: a shorter word acts
    like its zero-padded extension, bits past ``varcount`` are ignored, and
    ``varcount <= |x|`` always holds for decoded formulas (the default formula
    has one variable and ``|x| + 1 >= 1``).
    """
    f = decode_cnf(x)
    v = f.varcount
    if v > max_vars:
        raise InfeasibleBound(f"{v} variables exceed the limit of {max_vars}")
    assert v <= len(x) + 1
    return any(
        _cnf_check(x, "".join(bits)) == 1 for bits in itertools.product("01", repeat=v)
    )


def classify_formula(f: CnfFormula) -> str:
    """``"tautology"``, ``"contradiction"`` or ``"contingent"`` by truth table."""
    values = {f.evaluate(a) for a in itertools.product((False, True), repeat=f.varcount)}
    if values == {True}:
        return "tautology"
    if values == {False}:
        return "contradiction"
    return "contingent"


def axiom_violations(V: Verifier, xmax: int, smax: int, richness_filter=None) -> list[dict]:
    """Check the boundary rules exhaustively and richness on ``x <= xmax`` with ``s <= smax``.

    ``richness_filter(x_word)`` may exclude instances from the richness check.
    Each violation is a dict with ``clause``, ``x`` and ``s``.
    """
    bad: list[dict] = []
    for s in range(1, smax + 1):
        if V("", index_to_word(s)) != 1:
            bad.append({"clause": "empty-instance-accepts", "x": 0, "s": s})
    for x in range(xmax + 1):
        if V(index_to_word(x), "") != 0:
            bad.append({"clause": "empty-candidate-rejects", "x": x, "s": 0})
    for x in range(xmax + 1):
        w = index_to_word(x)
        if richness_filter is not None and not richness_filter(w):
            continue
        seen = set()
        for s in range(smax + 1):
            seen.add(V(w, index_to_word(s)))
            if len(seen) == 2:
                break
        if 1 not in seen:
            bad.append({"clause": "some-candidate-accepts", "x": x, "s": None})
        if 0 not in seen:
            bad.append({"clause": "some-candidate-rejects", "x": x, "s": None})
    return bad
