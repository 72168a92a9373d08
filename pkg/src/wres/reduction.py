"""Reduction from the twin-pigeonhole formula P(n,k) to the embedded psi formula.

The substitution sends x_i to -c2, r[xi][j] to p[i][j] and s[xi][j] to
q[i][j].  Under it every clause of embed_w1(psi_n, k) becomes a clause
derivable from P(n,k) in at most one resolution step, so a Resolution
refutation of the embedded psi formula turns into one of P(n,k) of
comparable size.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Mapping

from .cnf import PLAIN, Clause, CnfFormula
from .families import embed_layout, gen_pnk, gen_psi, embed_w1, pnk_layout
from .proofs import Proof, ProofError, Step, check, compact, resolvent, step_clauses

NOTE = ("the implication -c2 -> c1 is used as (c1 v c2), the clause the "
        "biconditional -c1 <-> c2 actually contains")


class CompositionError(ValueError):
    def __init__(self, step: int, msg: str):
        super().__init__(f"step {step}: {msg}")
        self.step = step


class UnmappedVariable(KeyError):
    pass


def psi_prime(n: int, k: int) -> CnfFormula:
    """embed_w1(psi_n, k); odd n leaves the last psi variable unpaired."""
    return embed_w1(gen_psi(n, k, strict=False), k)


def substitution(n: int, k: int) -> dict:
    """Map each embedded-psi variable to a signed P(n,k) literal."""
    _, c2, p, q = pnk_layout(n, k)
    r, s = embed_layout(n, k)
    sigma = {i: -c2 for i in range(1, n + 1)}
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            sigma[r(i, j)] = p(i, j)
        for j in range(1, n - k + 1):
            sigma[s(i, j)] = q(i, j)
    return sigma


def map_literal(lit: int, sigma: Mapping[int, int]) -> int:
    try:
        image = sigma[abs(lit)]
    except KeyError:
        raise UnmappedVariable(abs(lit)) from None
    return image if lit > 0 else -image


def substitute(clause, sigma: Mapping[int, int]) -> Clause:
    return Clause(map_literal(lit, sigma) for lit in clause)


def derive_reduction(n: int, k: int) -> Proof:
    """Derivation of substitute(c) for every clause c of the embedded psi formula.

    Input steps list the clauses of P(n,k) once each.  Clauses guarded by
    -c2 are already present; the tautology (c2 v -c2) and every c2-headed
    p-clause take one resolution on c1 against (c1 v c2).  Targets are the
    images in the order of the source clauses, duplicates included.
    """
    pnk = gen_pnk(n, k)
    c1, c2, _, _ = pnk_layout(n, k)
    sigma = substitution(n, k)
    targets = [substitute(c, sigma) for c in psi_prime(n, k).clauses]

    steps = [Step.input(i, i, c) for i, c in enumerate(pnk.clauses, 1)]
    have = {}
    for st in steps:
        have.setdefault(st.clause, st.id)
    bridge_clause = Clause([c1, c2])
    bridge = have[bridge_clause]
    for t in targets:
        if t in have:
            continue
        # t = (c2 v rest) comes from (-c1 v rest) resolved with (c1 v c2) on c1
        guarded = Clause([-c1, *(lit for lit in t if lit != c2)])
        if guarded not in have:
            raise ProofError(0, "internal-consistency", f"no source clause for target {t}")
        sid = len(steps) + 1
        steps.append(Step.resolve(sid, bridge, have[guarded], c1, resolvent(bridge_clause, guarded, c1)))
        if steps[-1].clause != t:
            raise ProofError(sid, "internal-consistency", f"derived {steps[-1].clause}, wanted {t}")
        have[t] = sid
    return Proof(tuple(steps), PLAIN, None, tuple(targets), (NOTE,))


def target_costs(derivation: Proof) -> list:
    """Number of resolution steps needed by each target."""
    by_id = {s.id: s for s in derivation.steps}
    first = {}
    for s in derivation.steps:
        first.setdefault(s.clause, s.id)
    costs = []
    for t in derivation.targets:
        seen, todo = set(), [first[t]]
        while todo:
            sid = todo.pop()
            if sid not in seen:
                seen.add(sid)
                todo.extend(by_id[sid].premises)
        costs.append(sum(by_id[sid].kind != "I" for sid in seen))
    return costs


def compose(derivation: Proof, refutation: Proof, sigma: Mapping[int, int],
            source: CnfFormula, target: CnfFormula | None = None) -> Proof:
    """Turn a refutation of ``source`` into a refutation of the derivation's input.

    Every step of ``refutation`` is pushed through ``sigma``.  Each new step
    derives a subclause of the image of the old clause: when identification
    of variables makes a premise lose its pivot literal, that premise is
    reused instead of resolving, and weakenings are dropped.  Input steps
    are wired to the derivation step deriving the substituted clause.
    """
    if not refutation.is_refutation:
        raise CompositionError(0, "second argument must be a refutation")
    steps = list(derivation.steps)
    if target is not None:
        steps = list(derivation.bind(target).steps)
    if any(s.clause is None for s in steps):
        raise CompositionError(0, "derivation input steps are unbound; pass the target formula")
    clause_of = {s.id: s.clause for s in steps}
    next_id = max(clause_of) + 1
    producer = {}
    for s in steps:
        producer.setdefault(s.clause, s.id)
    orig = step_clauses(refutation, source)
    image = {}

    for s in refutation.steps:
        if s.kind == "I":
            want = substitute(orig[s.id], sigma)
            if want not in producer:
                raise CompositionError(s.id, f"derivation does not provide {want}")
            image[s.id] = producer[want]
        elif s.kind == "A":
            raise CompositionError(s.id, "axiom steps cannot be substituted")
        elif s.kind == "W":
            image[s.id] = image[s.premises[0]]
        else:
            a, b = (image[p] for p in s.premises)
            lit = map_literal(s.pivot, sigma)
            # a's image carries lit, b's image carries -lit
            if lit not in clause_of[a]:
                image[s.id] = a
            elif -lit not in clause_of[b]:
                image[s.id] = b
            else:
                pos, neg = (a, b) if lit > 0 else (b, a)
                var = abs(lit)
                c = resolvent(clause_of[pos], clause_of[neg], var)
                sid = next_id
                next_id += 1
                steps.append(Step.resolve(sid, pos, neg, var, c))
                clause_of[sid] = c
                image[s.id] = sid
    sink = image[refutation.steps[-1].id]
    if clause_of[sink]:
        raise CompositionError(refutation.steps[-1].id, f"sink maps to {clause_of[sink]}")
    result = compact(Proof(tuple(steps), PLAIN, None, (), ()), [sink])
    return replace(result, comments=derivation.comments)


def reduction_report(n: int, k: int):
    """Derivation, its checked size, and per-target resolution counts."""
    derivation = derive_reduction(n, k)
    size = check(derivation, gen_pnk(n, k))
    return derivation, size, target_costs(derivation)
