"""Resolution proofs: data model, checker, restriction and the trace format.

A proof is a list of steps with ascending ids.  Each step derives a clause:

* ``I``  an input clause of the formula, by 1-based index
* ``A``  a parameterized augmentation axiom (validated by an AxiomOracle)
* ``R``  resolution of two earlier steps on a pivot variable
* ``W``  weakening of an earlier step by one literal

Trace lines (whitespace separated)::

    p proof <nsteps> [<plain|w1|w2> <k>]
    <id> I <clauseIndex>
    <id> A <lit>... 0
    <id> R <idA> <idB> <pivotVar> <lit>... 0
    <id> W <idPremise> <addedLit> <lit>... 0
    t <lit>... 0          (derivation targets, after the steps)

A proof without ``t`` lines is a refutation: its last step must derive the
empty clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .axioms import AxiomOracle
from .cnf import MODES, PLAIN, Clause, CnfFormula, Status, evaluate, restrict_formula


class ProofError(Exception):
    """A proof failed to check; ``reason`` is a stable machine-readable tag."""

    def __init__(self, step: int, reason: str, detail: str = ""):
        msg = f"step={step} reason={reason}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.step = step
        self.reason = reason


class ProofSyntaxError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass(frozen=True)
class Step:
    id: int
    kind: str
    clause: Clause | None = None
    index: int | None = None
    premises: tuple = ()
    pivot: int | None = None
    added: int | None = None

    @classmethod
    def input(cls, id, index, clause=None):
        return cls(id, "I", None if clause is None else Clause(clause), index=index)

    @classmethod
    def axiom(cls, id, clause):
        return cls(id, "A", Clause(clause))

    @classmethod
    def resolve(cls, id, pos, neg, pivot, clause):
        return cls(id, "R", Clause(clause), premises=(pos, neg), pivot=pivot)

    @classmethod
    def weaken(cls, id, premise, lit, clause):
        return cls(id, "W", Clause(clause), premises=(premise,), added=lit)


@dataclass(frozen=True)
class Proof:
    steps: tuple
    mode: str = PLAIN
    k: int | None = None
    targets: tuple = ()
    comments: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "targets", tuple(Clause(t) for t in self.targets))
        object.__setattr__(self, "comments", tuple(self.comments))

    def __len__(self):
        return len(self.steps)

    @property
    def is_refutation(self) -> bool:
        return not self.targets

    def bind(self, formula: CnfFormula) -> "Proof":
        """Fill in the clauses of input steps from ``formula``."""
        steps = [replace(s, clause=formula.clauses[s.index - 1]) if s.kind == "I" else s
                 for s in self.steps]
        return replace(self, steps=tuple(steps))


@dataclass(frozen=True)
class ProofSize:
    size: int
    total: int

    @property
    def unreachable(self) -> int:
        return self.total - self.size


def resolvent(pos: Clause, neg: Clause, pivot: int) -> Clause:
    """Remove ``pivot`` from ``pos`` and ``-pivot`` from ``neg``; nothing else."""
    return Clause([lit for lit in pos if lit != pivot] + [lit for lit in neg if lit != -pivot])


def reachable(steps: Sequence[Step], sinks) -> set:
    by_id = {s.id: s for s in steps}
    seen = set()
    todo = list(sinks)
    while todo:
        sid = todo.pop()
        if sid in seen:
            continue
        seen.add(sid)
        todo.extend(by_id[sid].premises)
    return seen


def check(proof: Proof, formula: CnfFormula, oracle: AxiomOracle | None = None) -> ProofSize:
    """Validate every step and the target; return the size of the proof DAG.

    Size counts only the steps reachable from the sink (the final empty
    clause, or the steps deriving the targets of a derivation).
    """
    clauses = {}
    last_id = 0
    for s in proof.steps:
        if s.id <= last_id:
            raise ProofError(s.id, "bad-step-id", f"ids must ascend, previous {last_id}")
        last_id = s.id
        if s.kind == "I":
            if s.index is None or not 1 <= s.index <= len(formula.clauses):
                raise ProofError(s.id, "bad-input-index", f"no input clause {s.index}")
            c = formula.clauses[s.index - 1]
            if s.clause is not None and s.clause != c:
                raise ProofError(s.id, "derived-clause-mismatch")
        elif s.kind == "A":
            c = s.clause
            if oracle is None or not oracle.is_axiom(c):
                raise ProofError(s.id, "axiom-rejected", str(c))
        elif s.kind in ("R", "W"):
            for p in s.premises:
                if p not in clauses:
                    raise ProofError(s.id, "bad-premise-reference", f"no earlier step {p}")
            if s.kind == "R":
                a, b = (clauses[p] for p in s.premises)
                if s.pivot is None or s.pivot <= 0 or s.pivot not in a or -s.pivot not in b:
                    raise ProofError(s.id, "pivot-absent", f"pivot {s.pivot}")
                c = resolvent(a, b, s.pivot)
            else:
                if s.added is None or s.added == 0 or abs(s.added) > formula.num_vars:
                    raise ProofError(s.id, "bad-literal", f"literal {s.added}")
                c = Clause([*clauses[s.premises[0]], s.added])
            if s.clause != c:
                raise ProofError(s.id, "derived-clause-mismatch", f"expected {c}, got {s.clause}")
        else:
            raise ProofError(s.id, "bad-step-kind", s.kind)
        clauses[s.id] = c

    if not proof.steps:
        raise ProofError(0, "target-not-derived", "empty proof")
    if proof.targets:
        first = {}
        for sid, c in clauses.items():
            first.setdefault(c, sid)
        sinks = []
        for t in proof.targets:
            if t not in first:
                raise ProofError(last_id, "target-not-derived", str(t))
            sinks.append(first[t])
    else:
        if clauses[last_id]:
            raise ProofError(last_id, "target-not-derived", "final clause is not empty")
        sinks = [last_id]
    return ProofSize(len(reachable(proof.steps, sinks)), len(proof.steps))


def step_clauses(proof: Proof, formula: CnfFormula) -> dict:
    return {s.id: formula.clauses[s.index - 1] if s.kind == "I" else s.clause
            for s in proof.steps}


def compact(proof: Proof, sinks=None) -> Proof:
    """Drop steps not reachable from the sinks and renumber from 1."""
    if sinks is None:
        if proof.targets:
            clauses = {}
            for s in proof.steps:
                if s.clause is not None:
                    clauses.setdefault(s.clause, s.id)
            sinks = [clauses[t] for t in proof.targets if t in clauses]
        else:
            sinks = [proof.steps[-1].id] if proof.steps else []
    keep = reachable(proof.steps, sinks)
    renum = {}
    steps = []
    for s in proof.steps:
        if s.id not in keep:
            continue
        renum[s.id] = len(steps) + 1
        steps.append(replace(s, id=renum[s.id], premises=tuple(renum[p] for p in s.premises)))
    return replace(proof, steps=tuple(steps))


_TOP = None  # image of a step whose clause is satisfied by the restriction


def restrict_proof(proof: Proof, alpha: Mapping[int, bool], formula: CnfFormula) -> Proof:
    """Restrict a refutation of ``formula`` to a refutation of ``formula|alpha``.

    Every step is mapped to a step deriving a subclause of its restricted
    clause, or to nothing when that clause is satisfied.  Resolutions on an
    assigned pivot collapse onto the premise whose pivot literal is false,
    resolutions where a premise lost the pivot collapse onto that premise, and
    weakenings collapse onto their premise.  Each original step yields at most
    one new step, so the size never grows.

    Axiom steps survive only if the restriction leaves them untouched or
    satisfies them.  The result refers to the clause indices of
    ``restrict_formula(formula, alpha)``.
    """
    if not proof.is_refutation:
        raise ValueError("restrict_proof expects a refutation")
    _, index_map = restrict_formula(formula, alpha)
    orig = step_clauses(proof, formula)
    image = {}
    new_steps = []
    new_clause = {}

    def emit(step):
        new_steps.append(step)
        new_clause[step.id] = step.clause
        return step.id

    for s in proof.steps:
        nid = len(new_steps) + 1
        c = orig[s.id]
        if s.kind == "I":
            if evaluate(c, alpha) is Status.SATISFIED:
                image[s.id] = _TOP
            else:
                rc = Clause(lit for lit in c if abs(lit) not in alpha)
                image[s.id] = emit(Step.input(nid, index_map[s.index], rc))
        elif s.kind == "A":
            touched = any(abs(lit) in alpha for lit in c)
            if not touched:
                image[s.id] = emit(Step.axiom(nid, c))
            elif evaluate(c, alpha) is Status.SATISFIED:
                image[s.id] = _TOP
            else:
                raise ProofError(s.id, "restriction-axiom", "restriction shortens an axiom")
        elif s.kind == "W":
            image[s.id] = image[s.premises[0]]
        else:
            a, b = (image[p] for p in s.premises)
            p = s.pivot
            if p in alpha:
                image[s.id] = b if alpha[p] else a
            elif a is _TOP and b is _TOP:
                image[s.id] = _TOP
            elif a is _TOP:
                image[s.id] = b if -p not in new_clause[b] else _TOP
            elif b is _TOP:
                image[s.id] = a if p not in new_clause[a] else _TOP
            elif p not in new_clause[a]:
                image[s.id] = a
            elif -p not in new_clause[b]:
                image[s.id] = b
            else:
                rc = resolvent(new_clause[a], new_clause[b], p)
                image[s.id] = emit(Step.resolve(nid, a, b, p, rc))

    sink = image[proof.steps[-1].id]
    if sink is _TOP:
        raise ProofError(proof.steps[-1].id, "restriction-trivializes")
    restricted = Proof(tuple(new_steps), proof.mode, proof.k, (), proof.comments)
    return compact(restricted, [sink])


# -- trace format -----------------------------------------------------------

def _lits(c) -> str:
    return " ".join(str(lit) for lit in (*c, 0))


def emit_proof(proof: Proof) -> str:
    if proof.mode == PLAIN and proof.k is None:
        out = [f"p proof {len(proof.steps)}"]
    else:
        out = [f"p proof {len(proof.steps)} {proof.mode} {proof.k if proof.k is not None else 0}"]
    out += [f"c {line}" if line else "c" for line in proof.comments]
    for s in proof.steps:
        if s.kind == "I":
            out.append(f"{s.id} I {s.index}")
        elif s.kind == "A":
            out.append(f"{s.id} A {_lits(s.clause)}")
        elif s.kind == "R":
            a, b = s.premises
            out.append(f"{s.id} R {a} {b} {s.pivot} {_lits(s.clause)}")
        else:
            out.append(f"{s.id} W {s.premises[0]} {s.added} {_lits(s.clause)}")
    out += [f"t {_lits(t)}" for t in proof.targets]
    return "\n".join(out) + "\n"


def parse_proof(text: str, formula: CnfFormula | None = None) -> Proof:
    """Parse a trace; with ``formula`` given, input steps get their clauses bound."""
    header = None
    steps = []
    targets = []
    comments = []
    lineno = 0

    def ints(toks, line):
        try:
            return [int(t) for t in toks]
        except ValueError:
            raise ProofSyntaxError(line, "expected integers") from None

    def clause_tail(vals, line):
        if not vals or vals[-1] != 0 or 0 in vals[:-1]:
            raise ProofSyntaxError(line, "clause must end with a single 0")
        return Clause(vals[:-1])

    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split()
        if not toks:
            continue
        if toks[0] == "c":
            comments.append(raw.strip()[2:] if len(raw.strip()) > 1 else "")
            continue
        if toks[0] == "p":
            if header is not None:
                raise ProofSyntaxError(lineno, "duplicate header")
            if len(toks) not in (3, 5) or toks[1] != "proof":
                raise ProofSyntaxError(lineno, "malformed header")
            nsteps = ints(toks[2:3], lineno)[0]
            mode, k = PLAIN, None
            if len(toks) == 5:
                mode = toks[3]
                if mode not in MODES:
                    raise ProofSyntaxError(lineno, f"unknown mode {mode!r}")
                k = ints(toks[4:5], lineno)[0]
            header = (nsteps, mode, k)
            continue
        if header is None:
            raise ProofSyntaxError(lineno, "step before header")
        if toks[0] == "t":
            targets.append(clause_tail(ints(toks[1:], lineno), lineno))
            continue
        if targets:
            raise ProofSyntaxError(lineno, "step after target lines")
        if len(toks) < 2:
            raise ProofSyntaxError(lineno, "truncated step")
        sid = ints(toks[:1], lineno)[0]
        kind = toks[1]
        vals = ints(toks[2:], lineno)
        if kind == "I":
            if len(vals) != 1:
                raise ProofSyntaxError(lineno, "input step takes one clause index")
            clause = None
            if formula is not None and 1 <= vals[0] <= len(formula.clauses):
                clause = formula.clauses[vals[0] - 1]
            steps.append(Step.input(sid, vals[0], clause))
        elif kind == "A":
            steps.append(Step.axiom(sid, clause_tail(vals, lineno)))
        elif kind == "R":
            if len(vals) < 4:
                raise ProofSyntaxError(lineno, "truncated resolution step")
            steps.append(Step.resolve(sid, vals[0], vals[1], vals[2], clause_tail(vals[3:], lineno)))
        elif kind == "W":
            if len(vals) < 3:
                raise ProofSyntaxError(lineno, "truncated weakening step")
            steps.append(Step.weaken(sid, vals[0], vals[1], clause_tail(vals[2:], lineno)))
        else:
            raise ProofSyntaxError(lineno, f"unknown step kind {kind!r}")
    if header is None:
        raise ProofSyntaxError(lineno, "missing header")
    if header[0] != len(steps):
        raise ProofSyntaxError(lineno, f"header declares {header[0]} steps, found {len(steps)}")
    return Proof(tuple(steps), header[1], header[2], tuple(targets), tuple(comments))
