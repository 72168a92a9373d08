from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wres.cnf import (Clause, CnfFormula, DimacsError, MalformedInput, Status, clause_normalize,
                      emit_dimacs, evaluate, parse_dimacs, restrict_formula, weight)
from wres.families import gen_theta

literals = st.integers(1, 8).flatmap(lambda v: st.sampled_from([v, -v]))
clauses = st.lists(literals, max_size=6)


def test_normalize_sorts_and_dedupes():
    assert clause_normalize([3, -1, 3]) == (-1, 3)


def test_tautology_kept():
    c = clause_normalize([1, -1])
    assert c == (1, -1)
    assert c.is_tautology


def test_empty_clause():
    assert clause_normalize([]) == ()
    assert not Clause().is_tautology


@pytest.mark.parametrize("bad", [[0], [1, 0], [True]])
def test_normalize_rejects_bad_literals(bad):
    with pytest.raises(MalformedInput):
        clause_normalize(bad)


@given(clauses)
def test_normalize_idempotent(lits):
    c = clause_normalize(lits)
    assert clause_normalize(list(c)) == c
    assert clause_normalize(reversed(lits)) == c


@pytest.mark.parametrize("clause,alpha,status", [
    ([1, -2], {2: False}, Status.SATISFIED),
    ([1, 2], {1: False, 2: False}, Status.FALSIFIED),
    ([1, 2], {1: False}, Status.UNDETERMINED),
    ([], {}, Status.FALSIFIED),
])
def test_evaluate(clause, alpha, status):
    assert evaluate(Clause(clause), alpha) is status


def test_weight():
    assert weight({1: True, 2: False, 5: True}) == 2
    assert weight({}) == 0
    assert weight({v: True for v in range(1, 8)}) == 7


@given(clauses, st.dictionaries(st.integers(1, 8), st.booleans()))
def test_falsified_is_stable_under_extension(lits, alpha):
    c = Clause(lits)
    if evaluate(c, alpha) is not Status.FALSIFIED:
        return
    free = [v for v in range(1, 9) if v not in alpha]
    for bits in product((False, True), repeat=len(free)):
        assert evaluate(c, {**alpha, **dict(zip(free, bits))}) is Status.FALSIFIED


@given(st.lists(clauses, max_size=5), st.lists(st.booleans(), min_size=8, max_size=8))
def test_satisfied_by_matches_naive(cls, bits):
    f = CnfFormula(8, [Clause(c) for c in cls])
    alpha = {v: bits[v - 1] for v in range(1, 9)}
    naive = all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in cls)
    assert f.satisfied_by(alpha) == naive


def test_empty_formula_satisfiable():
    assert CnfFormula(0).satisfied_by({})


def test_formula_rejects_out_of_range():
    with pytest.raises(MalformedInput):
        CnfFormula(2, [Clause([3])])
    with pytest.raises(MalformedInput):
        CnfFormula(2, [], {1: "a", 2: "a"})


def test_parse_simple():
    f = parse_dimacs("p cnf 2 1\n1 -2 0\n")
    assert f.num_vars == 2
    assert f.clauses == ((1, -2),)


def test_theta_header():
    assert "p cnf 4 2\n" in emit_dimacs(gen_theta(2, 1))


def test_metadata_round_trip():
    text = emit_dimacs(gen_theta(2, 1))
    f = parse_dimacs(text)
    assert f.k == 1 and f.mode == "w2" and f.family == "theta m=2 k=1"
    assert f.names[3] == "v[2][1]"
    assert emit_dimacs(f) == text


def test_canonicalizes_on_emit():
    f = parse_dimacs("c hello\np cnf 3 2\n3 -1 3 0 2\n0\n")
    assert emit_dimacs(f) == "p cnf 3 2\n-1 3 0\n2 0\n"


@given(st.lists(clauses, max_size=6))
def test_round_trip(cls):
    f = CnfFormula(8, [Clause(c) for c in cls], {1: "a[1]", 7: "z"}, None, 2, "w1")
    assert parse_dimacs(emit_dimacs(f)) == f


@pytest.mark.parametrize("text,line", [
    ("p cnf 2 1\n1 3 0\n", 2),
    ("p cnf 2 1\n1 2\n", 2),
    ("p cnf x 1\n1 0\n", 1),
    ("1 0\n", 1),
    ("p cnf 2 2\n1 0\n", 2),
    ("p dnf 2 1\n1 0\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(DimacsError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line


def test_restrict_formula():
    f = CnfFormula(2, [Clause([1]), Clause([-1, 2]), Clause([-2])])
    r, idx = restrict_formula(f, {1: True})
    assert r.clauses == ((2,), (-2,))
    assert idx == {2: 1, 3: 2}
