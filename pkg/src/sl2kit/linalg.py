"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts mapping a hashable column key to a nonzero rational
(``int`` or ``Fraction``).  Everything here is deterministic: results only
depend on the order in which vectors are fed in.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vector = Dict[Hashable, object]


def normalize_scalar(c):
    """Return ``c`` as an int when it is integral, else as a Fraction."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _axpy(target: Vector, factor, source: Vector) -> None:
    """In place: target -= factor * source, dropping zeros."""
    for key, val in source.items():
        new = target.get(key, 0) - factor * val
        if new:
            target[key] = normalize_scalar(new)
        else:
            target.pop(key, None)


class EchelonBasis:
    """Incrementally built echelon form that remembers how each row was made.

    Every inserted vector gets an integer label.  Rows carry the combination
    of labels that produced them, so a vector that reduces to zero yields an
    explicit linear dependency, and a target in the span yields explicit
    coefficients.
    """

    def __init__(self) -> None:
        self._rows: List[Tuple[Hashable, Vector, Vector]] = []
        self._pivots: Dict[Hashable, int] = {}
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivot_columns(self) -> List[Hashable]:
        return [p for p, _, _ in self._rows]

    def _reduce(self, vec: Vector, combo: Optional[Vector]):
        vec = dict(vec)
        for pivot, row, row_combo in self._rows:
            factor = vec.get(pivot)
            if factor:
                _axpy(vec, factor, row)
                if combo is not None:
                    _axpy(combo, factor, row_combo)
        return vec, combo

    def add(self, vec: Vector) -> Tuple[bool, Vector]:
        """Insert ``vec``.

        Returns ``(independent, dependency)``.  When the vector is dependent
        on earlier ones, ``dependency`` maps labels to coefficients with
        ``sum(c * v[label]) == 0`` (including this vector's own label).
        """
        label = self._count
        self._count += 1
        vec, combo = self._reduce(vec, {label: 1})
        if not vec:
            return False, combo
        pivot = max(vec)
        inv = Fraction(1) / Fraction(vec[pivot])
        row = {k: normalize_scalar(v * inv) for k, v in vec.items()}
        row_combo = {k: normalize_scalar(v * inv) for k, v in combo.items()}
        self._pivots[pivot] = len(self._rows)
        self._rows.append((pivot, row, row_combo))
        return True, {}

    def contains(self, vec: Vector) -> bool:
        residue, _ = self._reduce(vec, None)
        return not residue

    def express(self, vec: Vector) -> Optional[Dict[int, object]]:
        """Coefficients over inserted labels reproducing ``vec``, or None."""
        residue, combo = self._reduce(vec, {})
        if residue:
            return None
        return {k: normalize_scalar(-v) for k, v in combo.items() if v}

    def reduced_rows(self) -> List[Vector]:
        """Rows in fully reduced echelon form, sorted by descending pivot."""
        rows = [(p, dict(r)) for p, r, _ in self._rows]
        rows.sort(key=lambda pr: pr[0], reverse=True)
        for i, (p, r) in enumerate(rows):
            for j, (q, s) in enumerate(rows):
                if j != i and p in s:
                    _axpy(s, s[p], r)
        return [r for _, r in rows]


def rank(vectors: Iterable[Vector]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return basis.rank


def rref(vectors: Iterable[Vector]) -> List[Vector]:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return basis.reduced_rows()


def nullspace(columns: Sequence[Vector]) -> List[Dict[int, object]]:
    """Basis of {c : sum c_j columns[j] = 0}, as dicts over column indices."""
    basis = EchelonBasis()
    kernel = []
    for col in columns:
        independent, dep = basis.add(col)
        if not independent:
            kernel.append(dep)
    return kernel


def solve(columns: Sequence[Vector], target: Vector) -> Optional[Dict[int, object]]:
    """Some c with sum c_j columns[j] == target, or None if none exists."""
    basis = EchelonBasis()
    for col in columns:
        basis.add(col)
    return basis.express(target)
