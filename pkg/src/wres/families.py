"""Generators for the formula families.

Variable layouts are fixed so that DIMACS output and proofs are reproducible:

* theta:  ``v[i][j]`` (row i in 1..k+1, member j in 1..m) has id ``(i-1)*m + j``.
* to_3cnf: chain variables ``z[i][j]`` are appended after all existing
  variables, in clause order (i is the 1-based source clause index).
* psi:    ``v[i]`` has id i.
* php:    ``p[i][j]`` (pigeon i in 1..n+1, hole j in 1..n) has id ``(i-1)*n + j``.
* pnk:    ``c[1]=1, c[2]=2``, then ``p[i][j]`` row-major over j in 1..k,
  then ``q[i][j]`` row-major over j in 1..n-k.
* embed_w1: originals first, then ``r[xi][j]`` grouped by i then j, then
  ``s[xi][j]`` grouped by i then j.
"""

from __future__ import annotations

from itertools import combinations

from .cnf import W1, W2, Clause, CnfFormula


class InvalidParameter(ValueError):
    pass


def gen_theta(m: int, k: int) -> CnfFormula:
    """k+1 disjoint positive clauses of width m."""
    if m < 1 or k < 0:
        raise InvalidParameter(f"theta needs m >= 1 and k >= 0 (got m={m}, k={k})")
    names = {}
    clauses = []
    for i in range(1, k + 2):
        row = []
        for j in range(1, m + 1):
            v = (i - 1) * m + j
            names[v] = f"v[{i}][{j}]"
            row.append(v)
        clauses.append(Clause(row))
    return CnfFormula(m * (k + 1), tuple(clauses), names, f"theta m={m} k={k}", k, W2)


def to_3cnf(formula: CnfFormula) -> CnfFormula:
    """Split every clause wider than 3 into a chain with fresh z-variables.

    ``(l1 v ... v lm)`` becomes ``(l1 v l2 v -z1), (z1 v l3 v -z2), ...,
    (z_{m-3} v l_{m-1} v lm)``.
    """
    names = dict(formula.names)
    n = formula.num_vars
    clauses = []
    for idx, c in enumerate(formula.clauses, 1):
        if len(c) <= 3:
            clauses.append(c)
            continue
        width = len(c)
        zs = list(range(n + 1, n + width - 2))
        n += width - 3
        for j, z in enumerate(zs, 1):
            names[z] = f"z[{idx}][{j}]"
        clauses.append(Clause([c[0], c[1], -zs[0]]))
        for j in range(1, width - 3):
            clauses.append(Clause([zs[j - 1], c[j + 1], -zs[j]]))
        clauses.append(Clause([zs[-1], c[-2], c[-1]]))
    return formula.replace(num_vars=n, clauses=tuple(clauses), names=names)


def gen_theta3(m: int, k: int) -> CnfFormula:
    return to_3cnf(gen_theta(m, k)).replace(family=f"theta3 m={m} k={k}", mode=W1)


def gen_psi(n: int, k: int | None = None, strict: bool = True) -> CnfFormula:
    """Pairwise equivalences v1<->v2, v3<->v4, ...

    With ``strict=False`` an odd n is accepted and the last variable is left
    unconstrained.
    """
    if n < 0 or (strict and n % 2):
        raise InvalidParameter(f"psi needs an even n (got {n})")
    names = {i: f"v[{i}]" for i in range(1, n + 1)}
    clauses = []
    for i in range(1, n, 2):
        clauses.append(Clause([i, -(i + 1)]))
        clauses.append(Clause([i + 1, -i]))
    fam = f"psi n={n}" + (f" k={k}" if k is not None else "")
    return CnfFormula(n, tuple(clauses), names, fam, k, W1 if k is not None else None)


def gen_php(n: int) -> CnfFormula:
    """Negated pigeonhole principle, n+1 pigeons into n holes."""
    if n < 1:
        raise InvalidParameter(f"php needs n >= 1 (got {n})")
    var = lambda i, j: (i - 1) * n + j  # noqa: E731
    names = {var(i, j): f"p[{i}][{j}]" for i in range(1, n + 2) for j in range(1, n + 1)}
    clauses = [Clause([-var(i, j), -var(l, j)])
               for i, l in combinations(range(1, n + 2), 2) for j in range(1, n + 1)]
    clauses += [Clause(var(i, j) for j in range(1, n + 1)) for i in range(1, n + 2)]
    return CnfFormula((n + 1) * n, tuple(clauses), names, f"php n={n}")


def pnk_layout(n: int, k: int):
    """Variable ids of the twin-pigeonhole formula: (c1, c2, p(i,j), q(i,j))."""
    p = lambda i, j: 2 + (i - 1) * k + j  # noqa: E731
    q = lambda i, j: 2 + n * k + (i - 1) * (n - k) + j  # noqa: E731
    return 1, 2, p, q


def gen_pnk(n: int, k: int) -> CnfFormula:
    """Two pigeonhole principles (n into k, n into n-k) guarded by -c1 and -c2."""
    if not 1 <= k <= n - 1:
        raise InvalidParameter(f"pnk needs 1 <= k <= n-1 (got n={n}, k={k})")
    c1, c2, p, q = pnk_layout(n, k)
    names = {c1: "c[1]", c2: "c[2]"}
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            names[p(i, j)] = f"p[{i}][{j}]"
    for i in range(1, n + 1):
        for j in range(1, n - k + 1):
            names[q(i, j)] = f"q[{i}][{j}]"
    # -c1 <-> c2 spelled out as (-c1 v -c2), (c1 v c2)
    clauses = [Clause([-c1, -c2]), Clause([c1, c2])]
    for guard, var, holes in ((c1, p, k), (c2, q, n - k)):
        clauses += [Clause([-guard, -var(i, j), -var(l, j)])
                    for i, l in combinations(range(1, n + 1), 2) for j in range(1, holes + 1)]
        clauses += [Clause([-guard, *(var(i, j) for j in range(1, holes + 1))])
                    for i in range(1, n + 1)]
    return CnfFormula(2 + n * n, tuple(clauses), names, f"pnk n={n} k={k}")


def embed_layout(n: int, k: int):
    r = lambda i, j: n + (i - 1) * k + j  # noqa: E731
    s = lambda i, j: n + n * k + (i - 1) * (n - k) + j  # noqa: E731
    return r, s


def embed_w1(formula: CnfFormula, k: int) -> CnfFormula:
    """Add pigeonhole clauses forcing exactly k of the original variables true.

    The r-block maps each true x_i injectively into k holes, the s-block maps
    each false x_i injectively into n-k holes.  Conflict clauses are emitted
    for ordered pairs i != l, since the guard literal depends on i.
    """
    n = formula.num_vars
    if not 0 <= k <= n:
        raise InvalidParameter(f"embed-w1 needs 0 <= k <= n (got n={n}, k={k})")
    r, s = embed_layout(n, k)
    names = dict(formula.names)
    for i in range(1, n + 1):
        names.setdefault(i, f"x{i}")
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            names[r(i, j)] = f"r[x{i}][{j}]"
    for i in range(1, n + 1):
        for j in range(1, n - k + 1):
            names[s(i, j)] = f"s[x{i}][{j}]"
    clauses = list(formula.clauses)
    for guard, var, holes in ((-1, r, k), (1, s, n - k)):
        for i in range(1, n + 1):
            clauses.append(Clause([guard * i, *(var(i, j) for j in range(1, holes + 1))]))
        for i in range(1, n + 1):
            for l in range(1, n + 1):
                if l == i:
                    continue
                for j in range(1, holes + 1):
                    clauses.append(Clause([guard * i, -var(i, j), -var(l, j)]))
    fam = f"embed-w1 k={k}" + (f" of {formula.family}" if formula.family else "")
    return CnfFormula(n + n * n, tuple(clauses), names, fam, k, None)


def gen_psi_embedded(n: int, k: int) -> CnfFormula:
    return embed_w1(gen_psi(n, k), k).replace(family=f"psi-embedded n={n} k={k}")


FAMILIES = ("theta", "theta3", "psi", "php", "pnk", "psi-embedded")


def generate(family: str, m: int | None = None, n: int | None = None,
             k: int | None = None) -> CnfFormula:
    """Dispatch by CLI family name."""

    def need(**kw):
        missing = [name for name, val in kw.items() if val is None]
        if missing:
            raise InvalidParameter(f"{family} needs --{' --'.join(missing)}")

    if family == "theta":
        need(m=m, k=k)
        return gen_theta(m, k)
    if family == "theta3":
        need(m=m, k=k)
        return gen_theta3(m, k)
    if family == "psi":
        need(n=n)
        return gen_psi(n, k)
    if family == "php":
        need(n=n)
        return gen_php(n)
    if family == "pnk":
        need(n=n, k=k)
        return gen_pnk(n, k)
    if family == "psi-embedded":
        need(n=n, k=k)
        return gen_psi_embedded(n, k)
    raise InvalidParameter(f"unknown family {family!r}")
