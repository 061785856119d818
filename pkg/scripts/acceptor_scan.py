"""List the first clocked machines whose output the verifier accepts on given instances."""

import argparse
from dataclasses import dataclass, field

from diagonal_lab.clocks import ClockedMachine, clocked_run
from diagonal_lab.verify import acceptable_machines, get_verifier
from diagonal_lab.words import index_to_word, unpair


@dataclass
class Config:
    verifier: str = "parity"
    instances: list[int] = field(default_factory=lambda: [0, 5, 17])
    count: int = 5


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verifier", default=Config.verifier)
    ap.add_argument("--instances", type=int, nargs="+", default=Config().instances)
    ap.add_argument("--count", type=int, default=Config.count)
    cfg = Config(**vars(ap.parse_args()))
    V = get_verifier(cfg.verifier)

    for x0 in cfg.instances:
        w = index_to_word(x0)
        print(f"x0={x0} word={w!r}")
        for p in acceptable_machines(V, x0, cfg.count):
            i, n = unpair(p)
            print(f"  p={p:>8} i={i:>6} n={n:>3} output={clocked_run(ClockedMachine(p), w)!r}")


if __name__ == "__main__":
    main()
