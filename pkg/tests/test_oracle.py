import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wres.axioms import AxiomOracle
from wres.cnf import Clause, CnfFormula
from wres.families import gen_php, gen_pnk, gen_psi, gen_theta
from wres.oracle import (BudgetExceeded, find_model, gamma_for, is_pcon, is_unsat, is_wpcon,
                         verify_necessity)

from _support import naive_models


def test_wpcon_psi():
    assert is_wpcon(gen_psi(4), 1).holds
    r = is_wpcon(gen_psi(4), 2)
    assert not r.holds
    assert r.witness == {1: True, 2: True, 3: False, 4: False}


def test_pcon_theta():
    assert is_pcon(gen_theta(2, 1), 1).holds
    r = is_pcon(gen_theta(2, 1), 2)
    assert not r.holds
    assert [v for v, b in r.witness.items() if b] == [1, 3]


def test_pcon_empty_formula():
    r = is_pcon(CnfFormula(3), 0)
    assert not r.holds and r.witness == {1: False, 2: False, 3: False}


def test_unsat_examples():
    assert is_unsat(gen_php(2))
    assert not is_unsat(gen_psi(4))
    assert is_unsat(gen_pnk(3, 1))
    contradiction = CnfFormula(1, [Clause([1]), Clause([-1])])
    assert is_wpcon(contradiction, 1).holds and is_pcon(contradiction, 1).holds


def test_budget():
    with pytest.raises(BudgetExceeded):
        find_model(CnfFormula(30), budget=1 << 20)
    with pytest.raises(BudgetExceeded):
        is_wpcon(CnfFormula(40), 10)


formulas = st.integers(1, 10).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])),
                      min_size=1, max_size=3), max_size=12)))


@settings(max_examples=150, deadline=None)
@given(formulas, st.integers(0, 10))
def test_dual_oracle(fs, k):
    n, cls = fs
    f = CnfFormula(n, [Clause(c) for c in cls])
    models = naive_models(cls, n)
    exact = [b for b in models if sum(b) == k]
    upto = [b for b in models if sum(b) <= k]
    w, p = is_wpcon(f, k), is_pcon(f, k)
    assert w.holds == (not exact)
    assert p.holds == (not upto)
    assert is_unsat(f) == (not models)
    for r in (w, p):
        if not r.holds:
            assert f.satisfied_by(r.witness)
    if exact:
        assert tuple(w.witness[v] for v in range(1, n + 1)) in exact


def test_gamma_shapes():
    assert gamma_for("theta", m=2, k=1) == [(-1, -3), (-1, -4), (-2, -3), (-2, -4)]
    assert gamma_for("psi", n=4, k=1) == [(-2, -1), (-4, -3)] or \
        gamma_for("psi", n=4, k=1) == [Clause([-1, -2]), Clause([-3, -4])]
    g = gamma_for("psi", n=6, k=3)
    assert len(g) == 3 and all(len(c) == 4 for c in g)
    with pytest.raises(ValueError):
        gamma_for("psi", n=6, k=2)


@pytest.mark.parametrize("m,k", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_theta_gamma_are_axioms(m, k):
    o = AxiomOracle(m * (k + 1), k, "w2")
    assert all(o.is_axiom(c) for c in gamma_for("theta", m=m, k=k))


def test_psi_gamma_are_axioms():
    o = AxiomOracle(6, 3, "w1")
    assert all(o.is_axiom(c) for c in gamma_for("psi", n=6, k=3))


def test_necessity_theta_2_1():
    f = gen_theta(2, 1)
    report = verify_necessity(f, gamma_for("theta", m=2, k=1), AxiomOracle(4, 1, "w2"))
    assert report.all_necessary and report.necessary == 4
    first = report.records[0]
    assert first.clause == (-1, -3)
    assert first.witness == {1: True, 2: False, 3: True, 4: False}
    assert next(report.lines()) == "RESULT necessity 4/4 necessary"
    for r in report.records:
        assert f.satisfied_by(r.witness)
        others = [c for c in gamma_for("theta", m=2, k=1) if c != r.clause]
        assert CnfFormula(4, others).satisfied_by(r.witness)


def test_necessity_psi_6_3():
    report = verify_necessity(gen_psi(6), gamma_for("psi", n=6, k=3), AxiomOracle(6, 3, "w1"))
    assert report.necessary == 3 and report.all_necessary
    for r in report.records:
        trues = {v for v, b in r.witness.items() if b}
        assert trues == {-l for l in r.clause}


def test_necessity_duplicate():
    gamma = gamma_for("theta", m=2, k=1)
    report = verify_necessity(gen_theta(2, 1), [gamma[0], *gamma], AxiomOracle(4, 1, "w2"))
    assert not report.all_necessary
    assert [r.satisfiable for r in report.records] == [False, False, True, True, True]


def test_necessity_summary_json_ready():
    report = verify_necessity(gen_theta(2, 1), gamma_for("theta", m=2, k=1), AxiomOracle(4, 1, "w2"))
    s = report.summary()
    assert s[0] == {"index": 1, "clause": [-1, -3], "satisfiable": True, "witness": [1, 3]}
