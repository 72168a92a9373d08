"""W[1]- and W[2]-parameterized Resolution toolkit."""

from .axioms import AxiomOracle
from .cnf import Clause, CnfFormula, ParamInstance, emit_dimacs, evaluate, parse_dimacs, weight
from .proofs import Proof, ProofError, Step, check, emit_proof, parse_proof, restrict_proof
from .prover import Counterexample, Refutation, build_tree, prove, tree_to_proof

__all__ = [
    "AxiomOracle", "Clause", "CnfFormula", "ParamInstance", "emit_dimacs", "evaluate",
    "parse_dimacs", "weight", "Proof", "ProofError", "Step", "check", "emit_proof",
    "parse_proof", "restrict_proof", "Counterexample", "Refutation", "build_tree",
    "prove", "tree_to_proof",
]
