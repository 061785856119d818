"""Survey clocked runs over random indices: how many halt, hit the clock, or lack a materialised output."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from diagonal_lab.clocks import ClockedMachine, clocked_outcome
from diagonal_lab.machine import SimulationLimitExceeded


@dataclass
class Config:
    samples: int = 2000
    max_index: int = 10**6
    max_len: int = 16
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)

    tally = Counter()
    for _ in range(cfg.samples):
        p = ClockedMachine(rng.randrange(cfg.max_index))
        x = "".join(rng.choice("01") for _ in range(rng.randint(0, cfg.max_len)))
        try:
            out = clocked_outcome(p, x)
        except SimulationLimitExceeded:
            tally["raised"] += 1
            continue
        if out.word is None:
            tally["no word"] += 1
        tally["halted" if out.halted else "clock stop"] += 1

    for key in ("halted", "clock stop", "no word", "raised"):
        print(f"{key:>10}: {tally[key]:>6} ({tally[key] / cfg.samples:.2%})")


if __name__ == "__main__":
    main()
