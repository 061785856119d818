import pytest

from diagonal_lab.clocks import ClockedMachine, clocked_run
from diagonal_lab.diagonal import (
    Budgets,
    DiagonalState,
    ScanCeiling,
    TotalityViolation,
    builtin_constants,
    check_divergence,
    diagonal_step,
    equivalence_check,
    random_samples,
    run_diagonalization,
)
from diagonal_lab.machine import BLANK, R, TuringMachine, constant_machine, decode_machine, encode_machine, run
from diagonal_lab.representation import IDENTITY, Representation
from diagonal_lab.verify import PARITY, pred_A
from diagonal_lab.words import index_to_word

RIGHT_MOVER = encode_machine(TuringMachine.from_transitions(
    1, {(1, 0): (1, 0, R), (1, 1): (1, 1, R), (1, BLANK): (1, BLANK, R)}))


@pytest.fixture(scope="module")
def ten_steps():
    return run_diagonalization(builtin_constants(10), PARITY)


def test_transposition():
    phi = IDENTITY.transpose(0, 5)
    assert (phi.apply(0), phi.apply(5), phi.apply(7)) == (5, 0, 7)
    assert all(phi.inverse(phi.apply(m)) == m for m in range(1001))
    assert all(phi.apply(phi.inverse(c)) == c for c in range(1001))


def test_representation_validation():
    with pytest.raises(ValueError):
        Representation((0, 0, 1))
    with pytest.raises(ValueError):
        Representation((1, 2))
    assert IDENTITY.extend(3).prefix == (0, 1, 2)
    assert IDENTITY.apply(42) == IDENTITY.inverse(42) == 42


def test_equivalence_identity_and_permuted():
    samples = random_samples(100, 200, 40, seed=3)
    assert equivalence_check(PARITY, IDENTITY, samples)
    phi = IDENTITY.transpose(3, 150).transpose(0, 77)
    assert equivalence_check(PARITY, phi, samples + [(3, 0), (150, 5), (0, 1)])


def test_equivalence_catches_corrupted_inverse():
    prefix = (5, 1, 2, 3, 4, 0)
    broken = Representation.unchecked(prefix, {0: 0, 5: 5})
    assert not equivalence_check(PARITY, broken, [(0, 0)])


def test_first_step_on_constant_empty():
    # F_0 = C_empty gives y' = 0; the verifier accepts any nonempty candidate on the empty instance
    e = encode_machine(constant_machine(""))
    state = diagonal_step(DiagonalState(), e, PARITY)
    rec = state.steps[0]
    assert rec.m == 0 and rec.y_prime == 0
    at_zero = clocked_run(ClockedMachine(0), "")
    assert rec.swapped == (at_zero == "")
    assert clocked_run(ClockedMachine(state.phi.apply(0)), "") != ""
    assert rec.k == 1485
    assert state.m_next == rec.k + 1


def test_no_swap_when_machine_already_accepts():
    # F = C_01 gives y' = 4, word "01"; machine 0 erases the 0 and halts on "1", which has even index
    e = encode_machine(constant_machine("01"))
    assert PARITY("01", clocked_run(ClockedMachine(0), "01")) == 1
    state = diagonal_step(DiagonalState(), e, PARITY)
    rec = state.steps[0]
    assert rec.y_prime == 4 and not rec.swapped and rec.k is None
    assert state.m_next == 1 and state.phi.prefix == (0,)


def test_right_mover_violates_totality():
    with pytest.raises(TotalityViolation):
        diagonal_step(DiagonalState(), RIGHT_MOVER, PARITY, budgets=Budgets(meta=1000))


def test_scan_ceiling():
    with pytest.raises(ScanCeiling):
        diagonal_step(DiagonalState(), encode_machine(constant_machine("")), PARITY,
                      budgets=Budgets(scan_ceiling=100))


def test_empty_stream_is_identity():
    state = run_diagonalization([], PARITY)
    assert state.phi == IDENTITY and state.steps == ()


def test_ten_step_run(ten_steps):
    ms = [r.m for r in ten_steps.steps]
    assert len(ms) == 10 and ms == sorted(set(ms))
    for rec in ten_steps.steps:
        out = run(decode_machine(rec.e), index_to_word(rec.m), 1000)
        assert out.halted and rec.y_prime == rec.i  # constant machine for word i
        assert pred_A(PARITY, ten_steps.phi, rec.m, rec.y_prime)
    phi = ten_steps.phi
    top = max(ms) + 1000
    assert all(phi.inverse(phi.apply(m)) == m for m in range(top))


def test_prefix_stability_across_steps():
    stream = builtin_constants(6)
    state = DiagonalState()
    checkpoints = []
    for e in stream:
        state = diagonal_step(state, e, PARITY)
        checkpoints.append(state)
    for earlier in checkpoints:
        for rec in earlier.steps:
            assert state.phi.apply(rec.m) == earlier.phi.apply(rec.m)
            assert pred_A(PARITY, state.phi, rec.m, rec.y_prime)


def test_divergence_verdicts(ten_steps):
    verdicts = check_divergence(ten_steps, PARITY, 10_000)
    assert len(verdicts) == 10 and all(v.passed for v in verdicts)
    for v in verdicts:
        if v.search.found:
            assert v.search.witness != v.y_prime
            assert v.mode == "value-differs"
    samples = random_samples(500, ten_steps.m_next + 1000, 64, seed=0)
    assert equivalence_check(PARITY, ten_steps.phi, samples)


def test_budget_exhausted_verdict_mode():
    # a single step with a zero f_P budget can only report acceptance
    state = run_diagonalization(builtin_constants(1), PARITY)
    (v,) = check_divergence(state, PARITY, 0)
    assert v.passed and not v.search.found
    assert v.mode == "divergence-by-acceptance only"
    assert v.as_row()["f_P"] == {"status": "budget_exhausted", "witness": None, "probes": 1}


def test_determinism():
    a = run_diagonalization(builtin_constants(4), PARITY)
    b = run_diagonalization(builtin_constants(4), PARITY)
    assert a == b and a.as_dict() == b.as_dict()


def test_state_dump_shape(ten_steps):
    d = ten_steps.as_dict()
    assert set(d) == {"phi_prefix", "m_next", "steps"}
    assert len(d["phi_prefix"]) == d["m_next"]
    assert {"i", "e", "m", "y_prime", "swapped", "k"} <= set(d["steps"][0])
