import random

import pytest

from diagonal_lab.clocks import (
    LINEAR,
    POLYNOMIAL,
    ClockedMachine,
    GrowthFamily,
    clocked_outcome,
    clocked_run,
    get_family,
    is_g_bounded_witness,
    register_family,
    same_function_pairs,
)
from diagonal_lab.machine import BLANK, L, R, TuringMachine, constant_machine, encode_machine
from diagonal_lab.words import pair, unpair


@pytest.mark.parametrize("family", [POLYNOMIAL, LINEAR])
def test_family_laws(family):
    for n in range(16):
        assert family(n, 0) > 2
        for x in range(64):
            assert family(n, x + 1) > family(n, x)
            for m in range(n):
                assert family(n, x) > family(m, x)


def test_polynomial_values():
    assert POLYNOMIAL(0, 0) == 3
    assert POLYNOMIAL(0, 2) == 11
    assert POLYNOMIAL(2, 3) == 3**5 + 5
    with pytest.raises(ValueError):
        POLYNOMIAL(-1, 0)


def test_registry():
    assert get_family("polynomial") is POLYNOMIAL
    assert get_family("linear") is LINEAR
    with pytest.raises(KeyError):
        get_family("no-such-family")

    class Doubling(GrowthFamily):
        name = "doubling-test"

        def eval(self, n, x):
            return 2 ** (x + n + 2)

    fam = register_family(Doubling())
    assert get_family("doubling-test") is fam


def test_clocked_machine_split():
    p = ClockedMachine(pair(5, 2))
    assert (p.machine_index, p.clock_index) == (5, 2)
    assert p.clock_steps(2) == 2**5 + 5 - 1


def test_clock_allows_exactly_g_minus_one_steps():
    # a right-mover never halts on its own, so the clock always fires
    right = encode_machine(TuringMachine.from_transitions(
        1, {(1, 0): (1, 0, R), (1, 1): (1, 1, R), (1, BLANK): (1, BLANK, R)}))
    for n in range(4):
        for x in ["", "0", "101"]:
            out = clocked_outcome(ClockedMachine(pair(right, n)), x)
            assert not out.halted
            assert out.steps == POLYNOMIAL(n, len(x)) - 1


def test_clocked_run_total_and_bounded():
    rng = random.Random(7)
    for _ in range(300):
        p = rng.randrange(10**6)
        x = "".join(rng.choice("01") for _ in range(rng.randint(0, 8)))
        out = clocked_outcome(ClockedMachine(p), x)
        i, n = unpair(p)
        if not out.halted:
            assert out.steps == POLYNOMIAL(n, len(x)) - 1
        assert out.steps <= POLYNOMIAL(n, len(x)) - 1


def test_forced_stop_reads_head_word():
    # writes 1s rightwards forever; after t steps the head sits on a blank
    writer = TuringMachine.from_transitions(1, {(1, BLANK): (1, 1, R), (1, 0): (1, 1, R), (1, 1): (1, 1, R)})
    assert clocked_run(ClockedMachine(pair(encode_machine(writer), 0)), "0") == ""
    # writes 1 then steps back onto it, alternating between two states
    back = TuringMachine.from_transitions(2, {(1, BLANK): (2, 1, R), (1, 1): (2, 1, R), (2, BLANK): (1, BLANK, L)})
    # g_0(1) - 1 = 3 steps: write at 0, step to 1, back to 0, rewrite and step to 1 -> blank
    assert clocked_run(ClockedMachine(pair(encode_machine(back), 0)), "1") == ""
    # g_1(1) - 1 = 4 steps: one more step back onto cell 0
    assert clocked_run(ClockedMachine(pair(encode_machine(back), 1)), "1") == "1"
    # g_0(0) - 1 = 2 steps on the empty tape: head ends on cell 0 which holds 1
    assert clocked_run(ClockedMachine(pair(encode_machine(back), 0)), "") == "1"


def test_constant_machine_is_bounded():
    i = encode_machine(constant_machine("101"))
    samples = ["", "0", "11", "0101", "1" * 10]
    # C_s needs |x| + |s| + 1 steps, which g_2 covers but g_0 does not on the empty word
    assert is_g_bounded_witness(i, 2, samples)
    assert not is_g_bounded_witness(i, 0, [""])
    right = encode_machine(TuringMachine.from_transitions(1, {(1, BLANK): (1, BLANK, R)}))
    assert not is_g_bounded_witness(right, 3, ["", "1"])


def test_same_function_pairs():
    codes = same_function_pairs(9, 2, 4)
    assert [unpair(c) for c in codes] == [(9, 2), (9, 3), (9, 4), (9, 5)]
    assert len(set(codes)) == 4


def test_clocked_machine_equality_ignores_family():
    assert ClockedMachine(5, LINEAR) == ClockedMachine(5)
    assert clocked_outcome(ClockedMachine(pair(0, 0), LINEAR), "0").halted
    assert isinstance(L, int)
