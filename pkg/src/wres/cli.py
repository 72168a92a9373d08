"""Command-line entry point.

Exit codes: 0 success / property holds, 1 property refuted or proof invalid,
2 usage error, 3 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import families
from .axioms import AxiomOracle
from .cnf import PLAIN, W1, W2, DimacsError, ParamInstance, emit_dimacs, parse_dimacs, weight
from .oracle import BudgetExceeded, default_budget, find_model, gamma_for, is_pcon, is_wpcon, verify_necessity
from .proofs import ProofError, ProofSyntaxError, check, emit_proof, parse_proof
from .prover import Counterexample, InvalidInput, prove
from .reduction import reduction_report

OK, REFUTED, USAGE, MALFORMED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def _load_cnf(path):
    return parse_dimacs(_read(path))


def _true_vars(alpha) -> str:
    trues = [str(v) for v, val in sorted(alpha.items()) if val]
    return " ".join(trues) if trues else "none"


def cmd_gen(args) -> int:
    if args.family == "embed-w1":
        if args.infile is None or args.k is None:
            raise UsageError("embed-w1 needs --in and --k")
        formula = families.embed_w1(_load_cnf(args.infile), args.k)
    else:
        formula = families.generate(args.family, m=args.m, n=args.n, k=args.k)
    _write(args.out, emit_dimacs(formula))
    summary = f"n={formula.num_vars} clauses={len(formula.clauses)}"
    print(summary, file=sys.stdout if args.out not in (None, "-") else sys.stderr)
    return OK


def _oracle_for(formula, mode, k):
    if mode in (W1, W2):
        return AxiomOracle(formula.num_vars, k, mode)
    return None


def cmd_check(args) -> int:
    if args.mode in (W1, W2) and args.k is None:
        raise UsageError(f"--mode {args.mode} needs --k")
    formula = _load_cnf(args.cnf)
    proof = parse_proof(_read(args.proof), formula)
    mode = args.mode or proof.mode
    k = args.k if args.k is not None else proof.k
    if mode in (W1, W2) and k is None:
        raise UsageError("parameterized proof without k")
    try:
        size = check(proof, formula, _oracle_for(formula, mode, k))
    except ProofError as e:
        print(f"FAIL step={e.step} reason={e.reason}")
        return REFUTED
    print(f"OK size={size.size}")
    print(f"total={size.total} unreachable={size.unreachable}")
    return OK


def cmd_prove(args) -> int:
    formula = _load_cnf(args.cnf)
    k = args.k if args.k is not None else formula.k
    mode = args.mode or formula.mode or W1
    if k is None and mode != PLAIN:
        raise UsageError("no --k given and the CNF carries no 'c param k'")
    instance = ParamInstance(formula, k if k is not None else 0, mode)
    result = prove(instance, args.strategy)
    if isinstance(result, Counterexample):
        print(f"RESULT counterexample weight={result.weight}")
        print(f"witness-true: {_true_vars(result.assignment)}")
        return REFUTED
    _write(args.out, emit_proof(result.proof))
    stream = sys.stdout if args.out not in (None, "-") else sys.stderr
    print(f"RESULT refuted leaves={result.leaves} nodes={result.tree.node_count} "
          f"size={result.size.size}", file=stream)
    return OK


def _holds(name, result) -> int:
    if result.holds:
        print(f"RESULT {name} holds")
        return OK
    print(f"RESULT {name} refuted weight={weight(result.witness)}")
    print(f"witness-true: {_true_vars(result.witness)}")
    return REFUTED


def cmd_verify(args) -> int:
    formula = _load_cnf(args.cnf)
    budget = args.budget if args.budget is not None else default_budget()
    k = args.k if args.k is not None else formula.k
    if args.kind in ("wpcon", "pcon", "necessity") and k is None:
        raise UsageError(f"verify {args.kind} needs --k")
    if args.kind == "wpcon":
        return _holds("wpcon", is_wpcon(formula, k))
    if args.kind == "pcon":
        return _holds("pcon", is_pcon(formula, k))
    if args.kind == "unsat":
        model = find_model(formula, budget)
        if model is None:
            print("RESULT unsat holds")
            return OK
        print(f"RESULT unsat refuted weight={weight(model)}")
        print(f"witness-true: {_true_vars(model)}")
        return REFUTED

    if args.gamma == "theta":
        if formula.num_vars % (k + 1):
            raise UsageError("theta gamma: variable count is not a multiple of k+1")
        gamma = gamma_for("theta", m=formula.num_vars // (k + 1), k=k)
        mode = args.mode or W2
    else:
        gamma = gamma_for("psi", n=formula.num_vars, k=k)
        mode = args.mode or W1
    context = _oracle_for(formula, mode, k)
    report = verify_necessity(formula, gamma, context, budget)
    for line in report.lines():
        print(line)
    if args.json:
        _write(args.json, json.dumps(report.summary(), indent=1) + "\n")
    return OK if report.all_necessary else REFUTED


def cmd_reduce(args) -> int:
    derivation, size, costs = reduction_report(args.n, args.k)
    _write(args.out, emit_proof(derivation))
    stream = sys.stdout if args.out not in (None, "-") else sys.stderr
    for i, (t, cost) in enumerate(zip(derivation.targets, costs), 1):
        print(f"target {i} steps={cost} " + " ".join(map(str, (*t, 0))), file=stream)
    print(f"RESULT derivation targets={len(costs)} max-per-target={max(costs, default=0)} "
          f"total={len(derivation.steps)} size={size.size}", file=stream)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a formula family as DIMACS")
    g.add_argument("family", choices=[*families.FAMILIES, "embed-w1"])
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--in", dest="infile")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="check a proof trace against a CNF")
    c.add_argument("--cnf", required=True)
    c.add_argument("--proof", required=True)
    c.add_argument("--mode", choices=[PLAIN, W1, W2])
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_check)

    p = sub.add_parser("prove", help="build a tree-Resolution refutation")
    p.add_argument("--cnf", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=[PLAIN, W1, W2])
    p.add_argument("--strategy", default="positive",
                   choices=["positive", "positive-branching", "theta3", "enumeration"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_prove)

    v = sub.add_parser("verify", help="brute-force semantic checks")
    v.add_argument("kind", choices=["wpcon", "pcon", "unsat", "necessity"])
    v.add_argument("--cnf", required=True)
    v.add_argument("--k", type=int)
    v.add_argument("--gamma", choices=["theta", "psi"], default="theta")
    v.add_argument("--mode", choices=[PLAIN, W1, W2],
                   help="axiom context for necessity (default w2 for theta, w1 for psi)")
    v.add_argument("--budget", type=int, help="cap on enumerated assignments (env WRES_BUDGET)")
    v.add_argument("--json", help="write the necessity summary as JSON")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reduce", help="derive the substituted embedded-psi clauses from P(n,k)")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, families.InvalidParameter, InvalidInput, BudgetExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except (DimacsError, ProofSyntaxError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
