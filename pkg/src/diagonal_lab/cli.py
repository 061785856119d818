"""Command-line experiment runner.

Every subcommand prints a JSON report ``{command, config, rows, summary, seed}``
and exits 0 only when all checks in it pass.  Exit codes: 1 a check failed,
2 a stream index was not total within the meta-budget, 3 the acceptor scan hit
its ceiling, 4 a brute-force bound was infeasible.
"""

from __future__ import annotations

import argparse
import csv
import importlib
import inspect
import json
import os
import random
import sys
from typing import Any, Optional, Sequence

from .clocks import GrowthFamily, get_family
from .diagonal import (
    Budgets,
    ScanCeiling,
    TotalityViolation,
    builtin_constants,
    check_divergence,
    equivalence_check,
    random_samples,
    run_diagonalization,
)
from .kleene import TrueAt, phi, unsound_total
from .machine import decode_machine, run
from .representation import IDENTITY
from .verify import (
    InfeasibleBound,
    Verifier,
    axiom_violations,
    classify_formula,
    f_P,
    get_verifier,
    sat_member,
)
from .words import CnfFormula, decode_cnf, encode_cnf, format_dimacs, index_to_word, parse_dimacs, unpair

EXIT_FAIL, EXIT_TOTALITY, EXIT_SCAN, EXIT_INFEASIBLE = 1, 2, 3, 4
SEED_ENV = "DIAGONAL_LAB_SEED"


def parse_count(text: str) -> int:
    """Natural number, also accepting ``2^k`` and ``10^k`` forms (``**`` works too)."""
    t = text.strip().replace("**", "^").replace("_", "")
    try:
        if "^" in t:
            base, exp = t.split("^")
            value = int(base) ** int(exp)
        else:
            value = int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _load_plugin(spec: str) -> Any:
    module, _, attr = spec.partition(":")
    return getattr(importlib.import_module(module), attr)


def _arity(fn) -> int:
    return len(inspect.signature(fn).parameters)


def resolve_verifier(name: str) -> Verifier:
    """A registered name, or ``module:attr`` naming a Verifier, a factory for one, or a bare ``check(x, s)``."""
    if ":" not in name:
        return get_verifier(name)
    obj = _load_plugin(name)
    if callable(obj) and not isinstance(obj, Verifier):
        obj = Verifier(name, obj) if _arity(obj) == 2 else obj()
    if not isinstance(obj, Verifier):
        raise TypeError(f"{name} is not a verifier")
    return obj


def resolve_family(name: str) -> GrowthFamily:
    """A registered name, or ``module:attr`` naming a GrowthFamily instance, subclass or factory."""
    if ":" not in name:
        return get_family(name)
    obj = _load_plugin(name)
    if callable(obj) and not isinstance(obj, GrowthFamily):
        obj = obj()
    if not isinstance(obj, GrowthFamily):
        raise TypeError(f"{name} is not a GrowthFamily")
    return obj


def read_stream(source: str) -> list[int]:
    """Machine indices from ``builtin:constants:N``, ``-`` (stdin) or a file with one index per line."""
    if source.startswith("builtin:"):
        kind, _, n = source[len("builtin:"):].partition(":")
        if kind != "constants":
            raise ValueError(f"unknown builtin stream {kind!r}")
        return builtin_constants(parse_count(n))
    text = sys.stdin.read() if source == "-" else open(source).read()
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_count(line))
    return out


def report(command: str, config: dict, rows: list, passed: int, failed: int, seed: int, **extra) -> dict:
    summary = {"passed": passed, "failed": failed, "ok": failed == 0, **extra}
    return {"command": command, "config": config, "rows": rows, "summary": summary, "seed": seed}


def cmd_enumerate(args) -> dict:
    rows = []
    for p in range(args.count):
        i, n = unpair(p)
        rows.append({"p": p, "i": i, "n": n, "states": decode_machine(i).k})
    return report("enumerate", {"count": args.count, "family": args.family}, rows, len(rows), 0, args.seed)


def cmd_diagonal(args) -> dict:
    V = resolve_verifier(args.verifier)
    family = resolve_family(args.family)
    budgets = Budgets(meta=args.meta_budget, scan_ceiling=args.scan_ceiling, provisional=args.provisional)
    state = run_diagonalization(read_stream(args.stream), V, family, budgets)
    verdicts = check_divergence(state, V, args.budget, family)
    rows = []
    for rec, v in zip(state.steps, verdicts):
        rows.append({**rec.as_row(), **v.as_row()})
    samples = random_samples(args.equivalence_samples, max(state.m_next - 1, 0) + 1000, 64, args.seed)
    equivalent = equivalence_check(V, state.phi, samples, family)
    if args.state_out:
        with open(args.state_out, "w") as fh:
            json.dump(state.as_dict(), fh)
    if args.csv:
        _write_witness_csv(args.csv, rows)
    passed = sum(v.passed for v in verdicts) + int(equivalent)
    config = {
        "stream": args.stream, "verifier": V.name, "family": family.name, "budget": args.budget,
        "meta_budget": args.meta_budget, "scan_ceiling": args.scan_ceiling,
        "equivalence_samples": args.equivalence_samples,
    }
    return report("diagonal", config, rows, passed, len(verdicts) + 1 - passed, args.seed,
                  equivalence=equivalent, m_next=state.m_next,
                  moved={str(j): c for j, c in enumerate(state.phi.prefix) if j != c})


_CSV_FIELDS = ["i", "e", "m", "y_prime", "swapped", "k", "accepted", "fp_status", "fp_witness", "mode", "passed"]


def _write_witness_csv(path: str, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=_CSV_FIELDS)
        w.writeheader()
        for r in rows:
            w.writerow({**{k: r[k] for k in _CSV_FIELDS if k in r},
                        "fp_status": r["f_P"]["status"], "fp_witness": r["f_P"]["witness"]})


def cmd_verify_axioms(args) -> dict:
    V = resolve_verifier(args.verifier)
    richness = None
    if V.name == "cnf":
        # richness only makes sense for formulas that are neither valid nor unsatisfiable
        richness = lambda w: classify_formula(decode_cnf(w)) == "contingent"  # noqa: E731
    bad = axiom_violations(V, args.xmax, args.smax, richness)
    config = {"verifier": V.name, "xmax": args.xmax, "smax": args.smax}
    return report("verify-axioms", config, bad, 0 if bad else 1, len(bad), args.seed)


def _sat_row(f: CnfFormula, max_vars: int) -> dict:
    x = encode_cnf(f)
    member = sat_member(x, max_vars)
    oracle = classify_formula(f) != "contradiction"
    return {"formula": format_dimacs(f).strip(), "word": x, "sat_member": member, "truth_table": oracle,
            "agree": member == oracle}


def cmd_sat(args) -> dict:
    formulas: list[CnfFormula] = []
    if args.formula:
        text = sys.stdin.read() if args.formula == "-" else open(args.formula).read()
        formulas.append(parse_dimacs(text))
    if args.word is not None:
        formulas.append(decode_cnf(args.word))
    rng = random.Random(args.seed)
    for _ in range(args.random):
        nclauses = rng.randint(1, 6)
        formulas.append(CnfFormula.of(
            [rng.choice((-1, 1)) * rng.randint(1, args.vars) for _ in range(rng.randint(1, 4))]
            for _ in range(nclauses)
        ))
    rows = [_sat_row(f, args.px_bound) for f in formulas]
    good = sum(r["agree"] for r in rows)
    config = {"formula": args.formula, "word": args.word, "random": args.random, "vars": args.vars,
              "px_bound": args.px_bound}
    return report("sat", config, rows, good, len(rows) - good, args.seed)


def _kleene_row(e: int, x: int, budget: int) -> dict:
    res = phi(e, x, budget)
    # direct simulation: the most steps any history under the budget can record
    direct = run(decode_machine(e), index_to_word(x), max(budget.bit_length() - 1, 0))
    if res.found:
        agree = direct.halted and direct.output == res.output
    else:
        agree = True  # no history fits under the budget; nothing to compare
    return {"e": e, "x": x, **res.as_row(), "direct_halted": direct.halted,
            "direct_output": direct.output, "agree": agree}


def cmd_kleene(args) -> dict:
    rows = [_kleene_row(args.e, args.x, args.budget)]
    rng = random.Random(args.seed)
    for _ in range(args.samples):
        rows.append(_kleene_row(rng.randrange(1 << 12), rng.randrange(64), args.budget))
    good = sum(r["agree"] for r in rows)
    config = {"e": args.e, "x": args.x, "budget": str(args.budget), "samples": args.samples}
    return report("kleene-check", config, rows, good, len(rows) - good, args.seed)


def cmd_unsound(args) -> dict:
    q = TrueAt(args.q_true_at)
    rows = []
    for x in range(args.xmax + 1):
        res = unsound_total(args.e, q, x, args.budget)
        ok = res.found and res.witness <= args.q_true_at
        rows.append({"x": x, **res.as_row(), "phi": phi(args.e, x, args.budget).as_row(), "ok": ok})
    good = sum(r["ok"] for r in rows)
    config = {"e": args.e, "q_true_at": args.q_true_at, "xmax": args.xmax, "budget": str(args.budget)}
    return report("unsound-demo", config, rows, good, len(rows) - good, args.seed)


def cmd_search(args) -> dict:
    V = resolve_verifier(args.verifier)
    family = resolve_family(args.family)
    rows = []
    for m in range(args.count):
        rows.append({"m": m, **f_P(V, IDENTITY, m, args.budget, family).as_row()})
    config = {"verifier": V.name, "family": family.name, "count": args.count, "budget": args.budget}
    return report("search", config, rows, len(rows), 0, args.seed)


def build_parser() -> argparse.ArgumentParser:
    env_seed = os.environ.get(SEED_ENV)
    parser = argparse.ArgumentParser(prog="diagonal-lab", description=__doc__.split("\n\n")[0])
    parser.add_argument("--seed", type=parse_count, default=parse_count(env_seed) if env_seed else 0,
                        help=f"seed for sampled checks (default ${SEED_ENV} or 0)")
    parser.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list clocked machine codes with their (i, n) split")
    p.add_argument("--count", type=parse_count, default=10)
    p.add_argument("--family", default="polynomial")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("diagonal", help="run the diagonalization on a stream of total machine indices")
    p.add_argument("--stream", default="builtin:constants:10", help="file, '-' for stdin, or builtin:constants:N")
    p.add_argument("--verifier", default="parity")
    p.add_argument("--family", default="polynomial")
    p.add_argument("--budget", type=parse_count, default=10_000, help="f_P search budget for the verdicts")
    p.add_argument("--meta-budget", type=parse_count, default=Budgets.meta)
    p.add_argument("--scan-ceiling", type=parse_count, default=Budgets.scan_ceiling)
    p.add_argument("--provisional", type=parse_count, default=Budgets.provisional)
    p.add_argument("--equivalence-samples", type=parse_count, default=100)
    p.add_argument("--csv", help="write the witness table here")
    p.add_argument("--state-out", help="write the full DiagonalState JSON here")
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("verify-axioms", help="check the verifier boundary and richness rules")
    p.add_argument("--verifier", default="parity")
    p.add_argument("--xmax", type=parse_count, default=1024)
    p.add_argument("--smax", type=parse_count, default=1024)
    p.set_defaults(func=cmd_verify_axioms)

    p = sub.add_parser("sat", help="brute-force SAT membership against a truth-table oracle")
    p.add_argument("--formula", help="DIMACS file or '-'")
    p.add_argument("--word", help="formula as a code word")
    p.add_argument("--random", type=parse_count, default=0, help="also check this many random formulas")
    p.add_argument("--vars", type=parse_count, default=8, help="variable range of random formulas")
    p.add_argument("--px-bound", type=parse_count, default=20, help="most variables brute-forced")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("kleene-check", help="compare the normal form with direct simulation")
    p.add_argument("--e", type=parse_count, default=0)
    p.add_argument("--x", type=parse_count, default=0)
    p.add_argument("--budget", type=parse_count, default=2 ** 4096)
    p.add_argument("--samples", type=parse_count, default=0)
    p.set_defaults(func=cmd_kleene)

    p = sub.add_parser("unsound-demo", help="totalize a machine with a predicate that is true somewhere")
    p.add_argument("--e", type=parse_count, required=True)
    p.add_argument("--q-true-at", type=parse_count, required=True)
    p.add_argument("--xmax", type=parse_count, default=20)
    p.add_argument("--budget", type=parse_count, default=2 ** 4096)
    p.set_defaults(func=cmd_unsound)

    p = sub.add_parser("search", help="f_P on the first positions of the unpermuted enumeration")
    p.add_argument("--verifier", default="parity")
    p.add_argument("--family", default="polynomial")
    p.add_argument("--count", type=parse_count, default=10)
    p.add_argument("--budget", type=parse_count, default=1000)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except TotalityViolation as exc:
        print(f"totality violation: {exc}", file=sys.stderr)
        return EXIT_TOTALITY
    except ScanCeiling as exc:
        print(f"scan ceiling: {exc}", file=sys.stderr)
        return EXIT_SCAN
    except InfeasibleBound as exc:
        print(f"infeasible bound: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    text = json.dumps(doc, indent=2, default=str)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if doc["summary"]["ok"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
