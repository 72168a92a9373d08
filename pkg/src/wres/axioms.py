"""Augmentation axioms of parameterized Resolution, realized lazily.

Under W2 the available axioms are every all-negative clause of width k+1
over distinct variables.  W1 additionally admits every all-positive clause
of width n-k+1.  The sets have binomial size, so they are never
materialized: proofs validate the axioms they actually use.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator, Mapping

from .cnf import W1, W2, Clause


@dataclass(frozen=True)
class AxiomOracle:
    n: int
    k: int
    mode: str = W2

    def __post_init__(self):
        if self.mode not in (W1, W2):
            raise ValueError(f"axiom oracle mode must be w1 or w2, not {self.mode!r}")
        if self.n < 0 or self.k < 0:
            raise ValueError("n and k must be non-negative")

    @property
    def negative_width(self) -> int:
        return self.k + 1

    @property
    def positive_width(self):
        """Width of the all-positive axioms, or None when there are none."""
        if self.mode != W1:
            return None
        w = self.n - self.k + 1
        return w if 1 <= w <= self.n else None

    def _has_negative(self) -> bool:
        return self.negative_width <= self.n

    def is_axiom(self, clause) -> bool:
        c = Clause(clause)
        if any(abs(lit) > self.n for lit in c):
            return False
        if len(c) == self.negative_width and self._has_negative() and c.is_negative:
            return True
        pw = self.positive_width
        return pw is not None and len(c) == pw and c.is_positive

    def count(self) -> int:
        total = comb(self.n, self.negative_width) if self._has_negative() else 0
        if self.positive_width is not None:
            total += comb(self.n, self.positive_width)
        return total

    def enumerate(self) -> Iterator[Clause]:
        """Negative axioms first, then positive ones, each in lexicographic order."""
        if self._has_negative():
            for vs in combinations(range(1, self.n + 1), self.negative_width):
                yield Clause(-v for v in vs)
        pw = self.positive_width
        if pw is not None:
            for vs in combinations(range(1, self.n + 1), pw):
                yield Clause(vs)

    def violated(self, alpha: Mapping[int, bool]):
        """An axiom falsified by ``alpha``, preferring the smallest variable ids."""
        if self._has_negative():
            trues = sorted(v for v, val in alpha.items() if val and 1 <= v <= self.n)
            if len(trues) >= self.negative_width:
                return Clause(-v for v in trues[:self.negative_width])
        pw = self.positive_width
        if pw is not None:
            falses = sorted(v for v, val in alpha.items() if not val and 1 <= v <= self.n)
            if len(falses) >= pw:
                return Clause(falses[:pw])
        return None


def is_axiom(oracle: AxiomOracle, clause) -> bool:
    return oracle.is_axiom(clause)


def count_axioms(oracle: AxiomOracle) -> int:
    return oracle.count()


def enumerate_axioms(oracle: AxiomOracle) -> Iterator[Clause]:
    return oracle.enumerate()


def violated_axiom(oracle: AxiomOracle, alpha: Mapping[int, bool]):
    return oracle.violated(alpha)
