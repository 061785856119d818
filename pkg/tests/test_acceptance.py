"""Acceptance criteria, one test each, timed against their stated limits."""

import itertools
import random

import pytest

from diagonal_lab.cli import main
from diagonal_lab.clocks import POLYNOMIAL, ClockedMachine, clocked_outcome, clocked_run
from diagonal_lab.diagonal import (
    DiagonalState,
    TotalityViolation,
    builtin_constants,
    check_divergence,
    diagonal_step,
    equivalence_check,
    random_samples,
)
from diagonal_lab.kleene import Never, T, TrueAt, U, encode_history, phi, unsound_total
from diagonal_lab.machine import BLANK, L, R, TuringMachine, decode_machine, encode_machine, run
from diagonal_lab.representation import Representation
from diagonal_lab.verify import (
    CNF,
    PARITY,
    acceptable_machines,
    axiom_violations,
    classify_formula,
    pred_A,
    sat_member,
)
from diagonal_lab.words import CnfFormula, decode_cnf, encode_cnf, index_to_word, pair, unpair, word_to_index

pytestmark = pytest.mark.acceptance

BIG = 2**4096


def test_1_encoding(criterion):
    with criterion(1, "encoding suite", 5):
        words = [""]
        for n in range(1, 17):
            words.extend("".join(b) for b in itertools.product("01", repeat=n))
        words = words[: 1 << 16]
        assert [index_to_word(n) for n in range(1 << 16)] == words
        assert all(word_to_index(w) == n for n, w in enumerate(words))
        codes = {pair(i, n) for i in range(512) for n in range(512)}
        assert len(codes) == 512 * 512
        assert all(unpair(pair(i, n)) == (i, n) for i in range(512) for n in range(512))
        rng = random.Random(0)
        for _ in range(10_000):
            f = decode_cnf("".join(rng.choice("01") for _ in range(rng.randint(0, 80))))
            assert f.clauses and all(c and 0 not in c for c in f.clauses)


def test_2_family_laws(criterion):
    with criterion(2, "family laws", 1):
        g = POLYNOMIAL
        assert g(0, 0) == 3
        for n in range(16):
            assert g(n, 0) > 2
            for x in range(64):
                assert g(n, x + 1) > g(n, x)
                for m in range(n):
                    assert g(n, x) > g(m, x)


# writes 1 moving left forever; the head always lands on a fresh blank
WRITER = TuringMachine.from_transitions(1, {(1, 0): (1, 1, L), (1, 1): (1, 1, L), (1, BLANK): (1, 1, L)})
# writes 1, steps right, comes back; alternates between cell 0 and cell 1
BACK = TuringMachine.from_transitions(2, {(1, BLANK): (2, 1, R), (1, 1): (2, 1, R), (2, BLANK): (1, BLANK, L)})
# sweeps right across the input, then left, forever
SWEEP = TuringMachine.from_transitions(2, {
    (1, 0): (1, 0, R), (1, 1): (1, 1, R), (1, BLANK): (2, BLANK, L),
    (2, 0): (2, 0, L), (2, 1): (2, 1, L), (2, BLANK): (1, BLANK, R),
})
HAND_SIMULATED = [
    # (machine, clock index, input, head word after g_n(|x|) - 1 steps)
    (WRITER, 0, "00", ""),   # 10 steps, head at -10 on a blank
    (BACK, 0, "1", ""),      # 3 steps: cell 0 -> 1 -> 0 -> 1, head on a blank
    (BACK, 1, "1", "1"),     # 4 steps: back on cell 0
    (SWEEP, 0, "01", "01"),  # 10 steps: R R turn L L turn R R turn L, head on cell 0
    (SWEEP, 0, "1", ""),     # 3 steps: R, turn at 1 -> head 0, L -> head -1 on a blank
]


def test_3_clock_totality(criterion):
    with criterion(3, "clock totality", 30):
        rng = random.Random(0)
        for _ in range(1000):
            p = rng.randrange(10**6)
            x = "".join(rng.choice("01") for _ in range(rng.randint(0, 16)))
            out = clocked_outcome(ClockedMachine(p), x)
            limit = POLYNOMIAL(unpair(p)[1], len(x)) - 1
            assert out.steps <= limit
            assert out.halted or out.steps == limit
        for machine, n, x, expected in HAND_SIMULATED:
            p = ClockedMachine(pair(encode_machine(machine), n))
            out = clocked_outcome(p, x)
            assert not out.halted and out.steps == POLYNOMIAL(n, len(x)) - 1
            assert clocked_run(p, x) == expected


def truth_table(f):
    n = max(abs(v) for c in f.clauses for v in c)
    return any(
        all(any(bits[abs(v) - 1] == (v > 0) for v in c) for c in f.clauses)
        for bits in itertools.product((False, True), repeat=n)
    )


def test_4_verifiers(criterion):
    with criterion(4, "verifier suite", 60):
        for V in (PARITY, CNF):
            assert all(V("", index_to_word(s)) == 1 for s in range(1, 1025))
            assert all(V(index_to_word(x), "") == 0 for x in range(1025))
        assert axiom_violations(PARITY, 1024, 1024) == []
        rng = random.Random(0)
        agree = 0
        for _ in range(200):
            f = CnfFormula.of(
                [rng.choice((-1, 1)) * rng.randint(1, 12) for _ in range(rng.randint(1, 4))]
                for _ in range(rng.randint(1, 8))
            )
            agree += sat_member(encode_cnf(f)) == truth_table(f)
        assert agree == 200


def test_5_kleene(criterion):
    with criterion(5, "Kleene suite", 60):
        rng = random.Random(0)
        samples = []
        while len(samples) < 200:
            e, x = rng.randrange(1 << 16), rng.randrange(1024)
            r = run(decode_machine(e), index_to_word(x), 1000)
            if r.halted:
                samples.append((e, x, r.output))
        for e, x, output in samples:
            hc = encode_history(e, x, 1000)
            assert hc is not None and T(e, x, hc.z) and U(hc.z) == output
        for e, x, _ in samples:
            assert unsound_total(e, Never(), x, BIG) == phi(e, x, BIG)
            res = unsound_total(e, TrueAt(50), x, BIG)
            assert res.found and res.witness <= 50


def test_6_diagonalization(criterion):
    with criterion(6, "diagonalization suite", 120):
        stream = builtin_constants(10)
        state = DiagonalState()
        history = []
        for e in stream:
            state = diagonal_step(state, e, PARITY)
            history.append(state)
            rec = state.steps[-1]
            assert rec.k is None or rec.k > rec.m
        verdicts = check_divergence(state, PARITY, 10_000)
        assert len(verdicts) == 10 and all(v.passed for v in verdicts)
        for v in verdicts:
            assert v.accepted
            if v.search.found:
                assert v.search.witness != v.y_prime
        for earlier in history:
            for rec in earlier.steps:
                assert state.phi.apply(rec.m) == earlier.phi.apply(rec.m)
                assert pred_A(PARITY, state.phi, rec.m, rec.y_prime)
        samples = random_samples(500, state.m_next + 1000, 64, seed=0)
        assert equivalence_check(PARITY, state.phi, samples)


def test_7_acceptability(criterion):
    with criterion(7, "acceptability", 10):
        for x0 in (0, 5, 17):
            codes = acceptable_machines(PARITY, x0, 5)
            assert len(set(codes)) == 5
            w = index_to_word(x0)
            assert all(PARITY(w, clocked_run(ClockedMachine(p), w)) == 1 for p in codes)


def test_8_negative_controls(criterion, tmp_path, monkeypatch, capsys):
    with criterion(8, "negative controls", 60):
        broken = Representation.unchecked((5, 1, 2, 3, 4, 0), {0: 0, 5: 5})
        assert not equivalence_check(PARITY, broken, [(0, 0), (5, 3)])
        right = encode_machine(TuringMachine.from_transitions(
            1, {(1, 0): (1, 0, R), (1, 1): (1, 1, R), (1, BLANK): (1, BLANK, R)}))
        with pytest.raises(TotalityViolation):
            diagonal_step(DiagonalState(), right, PARITY)
        (tmp_path / "broken_verifier.py").write_text("def check(x, s):\n    return 1\n")
        monkeypatch.syspath_prepend(str(tmp_path))
        assert main(["verify-axioms", "--verifier", "broken_verifier:check", "--xmax", "64", "--smax", "64"]) == 1
        capsys.readouterr()
        assert classify_formula(CnfFormula(((1,), (-1,)))) == "contradiction"
