"""Run the diagonal engine on the builtin constant stream and print a witness table."""

import argparse
import time
from dataclasses import dataclass

from diagonal_lab.diagonal import builtin_constants, check_divergence, random_samples, run_diagonalization, equivalence_check
from diagonal_lab.verify import get_verifier


@dataclass
class Config:
    steps: int = 10
    verifier: str = "parity"
    f_p_budget: int = 10_000
    samples: int = 500
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    V = get_verifier(cfg.verifier)

    t0 = time.perf_counter()
    state = run_diagonalization(builtin_constants(cfg.steps), V)
    verdicts = check_divergence(state, V, cfg.f_p_budget)
    samples = random_samples(cfg.samples, state.m_next + 1000, 64, seed=cfg.seed)
    same = equivalence_check(V, state.phi, samples)
    elapsed = time.perf_counter() - t0

    print(f"{'i':>3} {'m':>8} {'y_prime':>8} {'swap':>5} {'k':>8}  mode")
    for rec, v in zip(state.steps, verdicts):
        print(f"{rec.i:>3} {rec.m:>8} {rec.y_prime:>8} {str(rec.swapped):>5} {str(rec.k):>8}  {v.mode}")
    print(f"m_next={state.m_next} equivalence={same} passed={sum(v.passed for v in verdicts)}/{len(verdicts)}"
          f" time={elapsed:.2f}s")


if __name__ == "__main__":
    main()
