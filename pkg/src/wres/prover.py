"""Tree-Resolution refutations from Boolean decision trees.

A decision tree solves the search problem of a clause set: every path ends
in a leaf naming an input clause or augmentation axiom that the path
falsifies.  Such a tree converts bottom-up into a tree-like Resolution
refutation by resolving sibling clauses on the queried variable.

Three strategies build the tree:

positive
    Keep a partial assignment.  At each node pick a clause that is not yet
    satisfied and whose negative literals all sit on true variables, so the
    all-false extension falsifies it, and branch over its unassigned positive
    literals in caterpillar order (query l1; if false query l2; ...).  Every
    true branch adds one true variable, so after k+1 of them a negative
    axiom is violated.  The clause and literal order are chosen by a
    memoized lookahead that minimizes the number of leaves (ties: lowest
    clause index, then lexicographic literal order).  When the lookahead
    outgrows its state budget the choice falls back to the eligible clause
    with the fewest unassigned positive literals.
theta3
    Pick the first all-positive clause without a true variable and query all
    of its unassigned variables, checking for leaves after every query.  Each
    such clause contributes at most 7 continuing outcomes.
enumeration
    Query variables in id order.  Complete for any instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .axioms import AxiomOracle
from .cnf import PLAIN, Clause, CnfFormula, ParamInstance, Status, evaluate, weight
from .proofs import Proof, ProofSize, Step, check, compact, resolvent

STRATEGIES = ("positive", "theta3", "enumeration")
_ALIASES = {"positive-branching": "positive"}


class InvalidInput(ValueError):
    pass


class InvalidTree(ValueError):
    pass


@dataclass(frozen=True)
class Query:
    var: int
    if_true: int
    if_false: int


@dataclass(frozen=True)
class Leaf:
    clause: Clause
    input_index: int | None = None  # 1-based formula clause, None for an axiom


@dataclass
class DecisionTree:
    nodes: list = field(default_factory=list)
    root: int = 0

    @property
    def leaf_count(self) -> int:
        return sum(isinstance(nd, Leaf) for nd in self.nodes)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def paths(self):
        """Yield (leaf, assignment) for every root-to-leaf path."""
        stack = [(self.root, {})]
        while stack:
            idx, alpha = stack.pop()
            nd = self.nodes[idx]
            if isinstance(nd, Leaf):
                yield nd, alpha
            else:
                stack.append((nd.if_false, {**alpha, nd.var: False}))
                stack.append((nd.if_true, {**alpha, nd.var: True}))


@dataclass
class Counterexample:
    assignment: dict

    @property
    def weight(self) -> int:
        return weight(self.assignment)


@dataclass
class Refutation:
    proof: Proof
    tree: DecisionTree
    size: ProofSize

    @property
    def leaves(self) -> int:
        return self.tree.leaf_count


def make_oracle(formula: CnfFormula, k, mode: str):
    if mode == PLAIN:
        return None
    return AxiomOracle(formula.num_vars, k, mode)


def _leaf(formula: CnfFormula, oracle, alpha):
    idx = formula.falsified_clause(alpha)
    if idx is not None:
        return Leaf(formula.clauses[idx], idx + 1)
    if oracle is not None:
        ax = oracle.violated(alpha)
        if ax is not None:
            return Leaf(ax)
    return None


def _blocking(formula: CnfFormula, alpha):
    """Yield the unassigned positive literals of each clause blocking the all-false extension."""
    for c in formula.clauses:
        free = []
        for lit in c:
            val = alpha.get(abs(lit))
            if lit < 0:
                if val is not True:
                    break
            elif val is True:
                break
            elif val is None:
                free.append(lit)
        else:
            if free:
                yield tuple(free)


def _blocking_positives(formula: CnfFormula, alpha):
    best = None
    for free in _blocking(formula, alpha):
        if best is None or len(free) < len(best):
            best = free
            if len(free) == 1:
                break
    return best


class _PlanBudget(Exception):
    pass


class _Planner:
    """Leaf-minimizing choice of blocking clause and literal order.

    Costs are leaf counts of the caterpillar subtrees, memoized on the
    partial assignment, which is held as a pair of bitmasks (true set,
    false set).  Counterexample states cost infinity, which leaves the
    final decision to the tree builder.
    """

    INF = float("inf")

    def __init__(self, formula, oracle, max_states=200_000):
        self.n = formula.num_vars
        self.masks = []
        for c in formula.clauses:
            pos = neg = 0
            for lit in c:
                if lit > 0:
                    pos |= 1 << lit
                else:
                    neg |= 1 << -lit
            self.masks.append((pos, neg))
        self.neg_width = oracle.negative_width if oracle is not None else None
        self.pos_width = oracle.positive_width if oracle is not None else None
        self.max_states = max_states
        self.memo = {}
        self.choice = {}

    def _is_leaf(self, t: int, f: int) -> bool:
        if self.neg_width is not None and self.neg_width <= self.n and t.bit_count() >= self.neg_width:
            return True
        if self.pos_width is not None and f.bit_count() >= self.pos_width:
            return True
        return any(not (pos & ~f) and not (neg & ~t) for pos, neg in self.masks)

    def _extension_is_model(self, t: int) -> bool:
        # all-false extension; only called at non-leaf states
        if any(not (pos & t) and not (neg & ~t) for pos, neg in self.masks):
            return False
        return self.pos_width is None or self.n - t.bit_count() < self.pos_width

    def cost(self, t: int, f: int) -> float:
        key = (t, f)
        if key in self.memo:
            return self.memo[key]
        if len(self.memo) >= self.max_states:
            raise _PlanBudget
        if self._is_leaf(t, f):
            self.memo[key] = 1
            return 1
        best, pick = self.INF, None
        seen = set()
        for pos, neg in self.masks:
            if neg & ~t or pos & t:
                continue
            free = pos & ~f
            if not free or free in seen:
                continue
            seen.add(free)
            lits = [v for v in range(1, self.n + 1) if free >> v & 1]
            for order in permutations(lits):
                c = self._caterpillar(t, f, order)
                if c < best:
                    best, pick = c, order
        if pick is None and not self._extension_is_model(t):
            assigned = t | f
            var = next((v for v in range(1, self.n + 1) if not assigned >> v & 1), None)
            if var is not None:
                best = self.cost(t | 1 << var, f) + self.cost(t, f | 1 << var)
        self.memo[key] = best
        self.choice[key] = pick
        return best

    def _caterpillar(self, t: int, f: int, order) -> float:
        total = 0
        for i, v in enumerate(order):
            if i and self._is_leaf(t, f):
                return total + 1
            total += self.cost(t | 1 << v, f)
            f |= 1 << v
        return total + 1

    def best_order(self, alpha):
        t = f = 0
        for v, val in alpha.items():
            if val:
                t |= 1 << v
            else:
                f |= 1 << v
        self.cost(t, f)
        return self.choice.get((t, f))


def _positive_target(formula: CnfFormula, alpha):
    """Unassigned variables of the first all-positive clause with no true variable."""
    for c in formula.clauses:
        if not c.is_positive or evaluate(c, alpha) is Status.SATISFIED:
            continue
        free = [lit for lit in c if lit not in alpha]
        if free:
            return free
    return None


def _first_unassigned(n: int, alpha):
    for v in range(1, n + 1):
        if v not in alpha:
            return v
    return None


def _all_false_extension(formula, oracle, alpha):
    ext = {v: alpha.get(v, False) for v in range(1, formula.num_vars + 1)}
    if formula.satisfied_by(ext) and (oracle is None or oracle.violated(ext) is None):
        return ext
    return None


def build_tree(instance: ParamInstance, strategy: str = "positive"):
    """Decision tree refuting ``instance``, or a Counterexample assignment.

    Children are explored true-branch first; the first counterexample met in
    that order is returned.
    """
    strategy = _ALIASES.get(strategy, strategy)
    if strategy not in STRATEGIES:
        raise InvalidInput(f"unknown strategy {strategy!r}")
    formula = instance.formula
    if strategy in ("positive", "theta3") and not formula.is_3cnf():
        raise InvalidInput(f"{strategy} strategy needs a 3-CNF formula")
    oracle = make_oracle(formula, instance.k, instance.mode)
    n = formula.num_vars

    planner = _Planner(formula, oracle) if strategy == "positive" else None
    nodes = [None]
    # (slot, alpha, focus): focus is the remaining literal/variable queue of
    # the clause currently being branched on
    stack = [(0, {}, ())]
    while stack:
        slot, alpha, focus = stack.pop()
        leaf = _leaf(formula, oracle, alpha)
        if leaf is not None:
            nodes[slot] = leaf
            continue
        focus = tuple(lit for lit in focus if abs(lit) not in alpha)
        if strategy == "positive" and not focus:
            order = None
            if planner is not None:
                try:
                    order = planner.best_order(alpha)
                except _PlanBudget:
                    planner = None
            if order is None:
                order = _blocking_positives(formula, alpha)
            focus = tuple(order or ())
        elif strategy == "theta3" and not focus:
            focus = tuple(_positive_target(formula, alpha) or ())
        if focus:
            var = abs(focus[0])
            rest = focus[1:]
            true_focus = () if strategy == "positive" else rest
            false_focus = rest
        else:
            if strategy != "enumeration":
                ext = _all_false_extension(formula, oracle, alpha)
                if ext is not None:
                    return Counterexample(ext)
            var = _first_unassigned(n, alpha)
            if var is None:
                return Counterexample(dict(alpha))
            true_focus = false_focus = ()
        t_slot, f_slot = len(nodes), len(nodes) + 1
        nodes += [None, None]
        nodes[slot] = Query(var, t_slot, f_slot)
        stack.append((f_slot, {**alpha, var: False}, false_focus))
        stack.append((t_slot, {**alpha, var: True}, true_focus))
    return DecisionTree(nodes)


def tree_to_proof(dt: DecisionTree, formula: CnfFormula, oracle: AxiomOracle | None = None) -> Proof:
    """Convert a decision tree into a tree-like Resolution refutation.

    At a query on x the false child's clause may contain x and the true
    child's clause -x; both present means one resolution step, otherwise
    the child clause lacking its pivot literal is reused and the other
    subtree is dropped.
    """
    steps = []
    result = {}  # node -> (step id, clause)
    stack = [(dt.root, {}, False)]
    while stack:
        idx, alpha, expanded = stack.pop()
        nd = dt.nodes[idx]
        if isinstance(nd, Leaf):
            if evaluate(nd.clause, alpha) is not Status.FALSIFIED:
                raise InvalidTree(f"leaf {idx} clause {nd.clause} not falsified on its path")
            sid = len(steps) + 1
            if nd.input_index is not None:
                if formula.clauses[nd.input_index - 1] != nd.clause:
                    raise InvalidTree(f"leaf {idx} names the wrong input clause")
                steps.append(Step.input(sid, nd.input_index, nd.clause))
            else:
                if oracle is None or not oracle.is_axiom(nd.clause):
                    raise InvalidTree(f"leaf {idx} clause {nd.clause} is not an axiom")
                steps.append(Step.axiom(sid, nd.clause))
            result[idx] = (sid, nd.clause)
        elif not expanded:
            if nd.var in alpha:
                raise InvalidTree(f"variable {nd.var} queried twice on a path")
            stack.append((idx, alpha, True))
            stack.append((nd.if_false, {**alpha, nd.var: False}, False))
            stack.append((nd.if_true, {**alpha, nd.var: True}, False))
        else:
            t_id, t_cl = result.pop(nd.if_true)
            f_id, f_cl = result.pop(nd.if_false)
            x = nd.var
            if -x not in t_cl:
                result[idx] = (t_id, t_cl)
            elif x not in f_cl:
                result[idx] = (f_id, f_cl)
            else:
                sid = len(steps) + 1
                c = resolvent(f_cl, t_cl, x)
                steps.append(Step.resolve(sid, f_id, t_id, x, c))
                result[idx] = (sid, c)
    sink, clause = result[dt.root]
    if clause:
        raise InvalidTree(f"root derives {clause}, not the empty clause")
    mode = PLAIN if oracle is None else oracle.mode
    k = None if oracle is None else oracle.k
    return compact(Proof(tuple(steps), mode, k), [sink])


def prove(instance: ParamInstance, strategy: str = "positive"):
    """Refutation (checked before returning) or Counterexample."""
    tree = build_tree(instance, strategy)
    if isinstance(tree, Counterexample):
        return tree
    oracle = make_oracle(instance.formula, instance.k, instance.mode)
    proof = tree_to_proof(tree, instance.formula, oracle)
    size = check(proof, instance.formula, oracle)
    return Refutation(proof, tree, size)
