import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wres.axioms import AxiomOracle
from wres.cnf import W1, W2, Clause, CnfFormula, ParamInstance, Status, evaluate, weight
from wres.families import gen_psi, gen_theta, gen_theta3
from wres.proofs import check, emit_proof
from wres.prover import (Counterexample, DecisionTree, InvalidInput, InvalidTree, Leaf, Query, Refutation,
                         build_tree, prove, tree_to_proof)

from _support import complete_contradiction, min_tree_leaves, naive_axioms, naive_models, random_contradiction


def test_complete_contradiction_k1():
    r = prove(ParamInstance(complete_contradiction(), 1, W1), "positive-branching")
    assert isinstance(r, Refutation)
    assert r.leaves <= 9


def test_psi_weight1_enumeration():
    r = prove(ParamInstance(gen_psi(4), 1, W1), "enumeration")
    assert isinstance(r, Refutation)
    assert (r.leaves, r.size.size) == (7, 13)


@pytest.mark.parametrize("strategy", ["positive", "enumeration"])
def test_psi_weight2_counterexample(strategy):
    r = prove(ParamInstance(gen_psi(4), 2, W1), strategy)
    assert isinstance(r, Counterexample)
    assert r.assignment == {1: True, 2: True, 3: False, 4: False}
    assert r.weight == 2


def test_theta3_4_1():
    r = prove(ParamInstance(gen_theta3(4, 1), 1, W1), "theta3")
    assert r.leaves <= 49
    assert (r.leaves, r.size.size) == (16, 25)


def test_theta_w2_enumeration_uses_negative_axioms_only():
    f = gen_theta(2, 1)
    r = prove(ParamInstance(f, 1, W2), "enumeration")
    axioms = [s.clause for s in r.proof.steps if s.kind == "A"]
    assert axioms and all(c.is_negative and len(c) == 2 for c in axioms)


def test_non_3cnf_rejected():
    with pytest.raises(InvalidInput):
        build_tree(ParamInstance(gen_theta(4, 1), 1, W1), "positive")
    with pytest.raises(InvalidInput):
        build_tree(ParamInstance(gen_psi(4), 1, W1), "nonsense")


def test_tree_to_proof_two_units():
    f = CnfFormula(1, [Clause([1]), Clause([-1])])
    dt = DecisionTree([Query(1, 1, 2), Leaf(Clause([-1]), 2), Leaf(Clause([1]), 1)])
    p = tree_to_proof(dt, f)
    assert emit_proof(p) == "p proof 3\n1 I 2\n2 I 1\n3 R 2 1 1 0\n"


def test_tree_to_proof_prunes_irrelevant_query():
    f = CnfFormula(2, [Clause([1]), Clause([-1])])
    dt = DecisionTree([Query(2, 1, 2),
                       Query(1, 3, 4), Query(1, 5, 6),
                       Leaf(Clause([-1]), 2), Leaf(Clause([1]), 1),
                       Leaf(Clause([-1]), 2), Leaf(Clause([1]), 1)])
    p = tree_to_proof(dt, f)
    assert check(p, f).size == 3 < dt.node_count


def test_invalid_tree():
    f = CnfFormula(1, [Clause([1]), Clause([-1])])
    bad = DecisionTree([Query(1, 1, 2), Leaf(Clause([1]), 1), Leaf(Clause([1]), 1)])
    with pytest.raises(InvalidTree):
        tree_to_proof(bad, f)
    twice = DecisionTree([Query(1, 1, 2), Query(1, 3, 4), Leaf(Clause([1]), 1),
                          Leaf(Clause([1]), 1), Leaf(Clause([-1]), 2)])
    with pytest.raises(InvalidTree):
        tree_to_proof(twice, f)


def test_tree_leaves_are_falsified():
    f = random_contradiction(3)
    dt = build_tree(ParamInstance(f, 2, W1), "positive")
    oracle = AxiomOracle(f.num_vars, 2, W1)
    for leaf, alpha in dt.paths():
        assert evaluate(leaf.clause, alpha) is Status.FALSIFIED
        assert leaf.clause in f.clauses or oracle.is_axiom(leaf.clause)
        assert len(alpha) <= f.num_vars


@pytest.mark.parametrize("seed", range(24))
def test_positive_branching_never_counterexample(seed):
    f = random_contradiction(seed)
    for k in (1, 2, 3):
        r = prove(ParamInstance(f, k, W1), "positive")
        assert isinstance(r, Refutation)
        assert r.leaves <= 3 ** (k + 1)


def test_positive_branching_bound_is_not_universal():
    # one true variable needed in each of two triples, every cross pair forbidden:
    # no decision tree for the weight-1 search problem has 9 or fewer leaves
    clauses = [[1, 2, 3], [4, 5, 6]] + [[-x, -y] for x in (1, 2, 3) for y in (4, 5, 6)]
    f = CnfFormula(6, [Clause(c) for c in clauses])
    assert not naive_models(clauses, 6)
    assert min_tree_leaves(clauses, 6, naive_axioms(6, 1, W1)) == 13
    r = prove(ParamInstance(f, 1, W1), "positive")
    assert r.leaves == 13


@pytest.mark.parametrize("seed", range(8))
def test_planner_close_to_optimum(seed):
    f = random_contradiction(seed)
    r = prove(ParamInstance(f, 1, W1), "positive")
    assert r.leaves >= min_tree_leaves([list(c) for c in f.clauses], f.num_vars, naive_axioms(f.num_vars, 1, W1))


def test_deterministic():
    inst = ParamInstance(random_contradiction(5), 2, W1)
    assert emit_proof(prove(inst).proof) == emit_proof(prove(inst).proof)


small = st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])),
                      min_size=1, max_size=3), max_size=14),
    st.integers(0, n), st.sampled_from([W1, W2]), st.sampled_from(["positive", "enumeration"])))


@settings(max_examples=120, deadline=None)
@given(small)
def test_results_are_genuine(args):
    n, cls, k, mode, strategy = args
    f = CnfFormula(n, [Clause(c) for c in cls])
    r = prove(ParamInstance(f, k, mode), strategy)
    models = naive_models(cls, n)
    ok = [b for b in models if (sum(b) == k if mode == W1 else sum(b) <= k)]
    if isinstance(r, Counterexample):
        assert ok
        alpha = r.assignment
        assert f.satisfied_by({v: alpha.get(v, False) for v in range(1, n + 1)})
        assert r.weight == k if mode == W1 else r.weight <= k
        assert AxiomOracle(n, k, mode).violated(alpha) is None
    else:
        assert not ok
        check(r.proof, f, AxiomOracle(n, k, mode))
        assert len(r.proof.steps) <= r.tree.node_count
