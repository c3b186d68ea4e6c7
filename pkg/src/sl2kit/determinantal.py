"""Quadrics of the rational normal cone and their cable structure.

On the basic pair for V_d the 2 x 2 minors

    M_(a,b) = b x_(a-1) x_b - a x_a x_(b-1),   1 <= a < b <= d,

span the same space of quadrics as the cables rooted at the invariants

    T_2i = sum over j of (-1)^j x_j x_(2i-j),   1 <= i <= d // 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .derivation import Cable, build_cable
from .polyring import Polynomial, RingSpec, same_span, span_contains, span_rank, substitute
from .slpair import FundamentalPair, basic_pair


@dataclass(frozen=True)
class ThetaSpace:
    d: int
    pair: FundamentalPair
    minors: Dict[Tuple[int, int], Polynomial]
    cables: Tuple[Cable, ...]

    @property
    def ring(self) -> RingSpec:
        return self.pair.ring

    def vertices(self) -> List[Polynomial]:
        return [v for c in self.cables for v in c.vertices]

    def vertex(self, i: int, j: int) -> Polynomial:
        """T_2i^(j), the j-th vertex of the cable rooted at T_2i."""
        return self.cables[i - 1].vertices[j]

    def root(self, i: int) -> Polynomial:
        return self.cables[i - 1].vertices[0]


def minor(ring: RingSpec, a: int, b: int) -> Polynomial:
    x = ring.gens()
    return x[a - 1] * x[b] * b - x[a] * x[b - 1] * a


def invariant_quadric(ring: RingSpec, i: int) -> Polynomial:
    x = ring.gens()
    total = ring.zero()
    for j in range(2 * i + 1):
        term = x[j] * x[2 * i - j]
        total = total + (term if j % 2 == 0 else -term)
    return total


def build_theta(d: int) -> ThetaSpace:
    if d < 2:
        raise ValueError("d must be at least 2")
    pair = basic_pair(d)
    ring = pair.ring
    minors = {(a, b): minor(ring, a, b) for a in range(1, d + 1) for b in range(a + 1, d + 1)}
    cables = []
    for i in range(1, d // 2 + 1):
        cable = build_cable(pair.down, pair.up, invariant_quadric(ring, i))
        if cable.length != 2 * d - 4 * i:
            raise AssertionError(f"cable at T_{2 * i} has length {cable.length}, expected {2 * d - 4 * i}")
        cables.append(cable)
    return ThetaSpace(d, pair, minors, tuple(cables))


@dataclass
class ThetaReport:
    d: int
    expected: int
    rank_minors: int
    rank_vertices: int
    n_minors: int
    n_vertices: int
    equal_span: bool

    @property
    def ok(self) -> bool:
        return (self.rank_minors == self.rank_vertices == self.expected == self.n_minors == self.n_vertices
                and self.equal_span)


def verify_theta_equality(theta: ThetaSpace) -> ThetaReport:
    minors = list(theta.minors.values())
    verts = theta.vertices()
    return ThetaReport(theta.d, math.comb(theta.d, 2), span_rank(minors), span_rank(verts), len(minors),
                       len(verts), same_span(minors, verts))


@dataclass
class GradedPieceReport:
    weight: int
    basis: List[Polynomial]
    dimension: int
    matches_cable_vertices: Optional[bool] = None
    interior_independent: Optional[bool] = None
    top_root_outside: Optional[bool] = None

    @property
    def ok(self) -> bool:
        flags = [self.matches_cable_vertices, self.interior_independent, self.top_root_outside]
        return all(f is not False for f in flags)


def theta_graded_piece(theta: ThetaSpace, weight: int) -> GradedPieceReport:
    """Basis of the weight slice of Theta, with the extra weight-0 checks for even d."""
    verts = [v for v in theta.vertices() if v.weight() == weight]
    report = GradedPieceReport(weight, verts, span_rank(verts))
    if theta.d % 2 == 0 and weight == 0:
        d = theta.d
        expected = [theta.vertex(i, d - 2 * i) for i in range(1, d // 2 + 1)]
        report.matches_cable_vertices = same_span(expected, verts) and span_rank(expected) == len(expected)
        interior = expected[:-1]
        report.interior_independent = span_rank(interior) == len(interior)
        report.top_root_outside = not span_contains(interior, theta.root(d // 2))
    return report


def rnc_images(theta: ThetaSpace, normalized: bool = True) -> Tuple[RingSpec, Dict[str, Polynomial]]:
    """Images of x_i on k[y, z]: y^i z^(d-i), divided by i! when normalized."""
    d = theta.d
    target = RingSpec(("y", "z"))
    images = {}
    for i, name in enumerate(theta.ring.variables):
        mono = target.monomial((i, d - i))
        images[name] = mono.scale(Fraction(1, math.factorial(i))) if normalized else mono
    return target, images


@dataclass
class SubstitutionReport:
    ok: bool
    normalized: bool
    nonzero: List[Tuple[str, str]] = field(default_factory=list)


def rnc_substitution_check(theta: ThetaSpace, normalized: bool = True) -> SubstitutionReport:
    """Map every minor and cable vertex to k[y, z] and expect zero."""
    target, images = rnc_images(theta, normalized)
    bad = []
    for (a, b), m in theta.minors.items():
        img = substitute(m, images, target)
        if img:
            bad.append((f"M_{a},{b}", str(img)))
    for i, cable in enumerate(theta.cables, start=1):
        for j, v in enumerate(cable.vertices):
            img = substitute(v, images, target)
            if img:
                bad.append((f"T_{2 * i}^({j})", str(img)))
    return SubstitutionReport(not bad, normalized, bad)


@dataclass
class JacobianReport:
    ok: bool
    shape: Tuple[int, int]
    nonzero: List[Tuple[int, int]]


def jacobian_origin_check(theta: ThetaSpace) -> JacobianReport:
    origin = {v: 0 for v in theta.ring.variables}
    bad = []
    rows = list(theta.minors.values())
    for r, m in enumerate(rows):
        for c, v in enumerate(theta.ring.variables):
            if m.derivative(v).evaluate(origin) != 0:
                bad.append((r, c))
    return JacobianReport(not bad, (len(rows), theta.ring.nvars), bad)


@dataclass
class IdentityResult:
    ok: bool
    remainder: Polynomial
    leading_term: Optional[str] = None


def verify_identity(lhs_combination: Sequence[Tuple[Polynomial, Polynomial]], rhs: Polynomial) -> IdentityResult:
    total = -rhs
    for c, p in lhs_combination:
        total = total + c * p
    if total:
        exp, coeff = total.leading_term()
        return IdentityResult(False, total, str(Polynomial(total.ring, {exp: coeff})))
    return IdentityResult(True, total)


def three_column_syzygy(theta: ThetaSpace, a: int, b: int, c: int, row: int = 2) -> IdentityResult:
    """Expansion of a 2 x 3 minor with a repeated row.

    Column k of the matrix is (x_(k-1), k x_k).  Repeating the second row
    gives a x_a M_(b,c) - b x_b M_(a,c) + c x_c M_(a,b) = 0; repeating the first
    gives x_(a-1) M_(b,c) - x_(b-1) M_(a,c) + x_(c-1) M_(a,b) = 0.
    """
    x = theta.ring.gens()
    M = theta.minors
    if row == 2:
        ca, cb, cc = x[a].scale(a), x[b].scale(b), x[c].scale(c)
    elif row == 1:
        ca, cb, cc = x[a - 1], x[b - 1], x[c - 1]
    else:
        raise ValueError("row must be 1 or 2")
    combo = [(ca, M[(b, c)]), (-cb, M[(a, c)]), (cc, M[(a, b)])]
    return verify_identity(combo, theta.ring.zero())


def quartic_syzygy(theta: ThetaSpace) -> IdentityResult:
    """For d = 4: x0 T2^(2) - 6 x1 T2^(1) + 24 x2 T2^(0) = 24 x0 T4^(0)."""
    if theta.d != 4:
        raise ValueError("this syzygy lives on V_4")
    x = theta.ring.gens()
    combo = [(x[0], theta.vertex(1, 2)), (x[1].scale(-6), theta.vertex(1, 1)), (x[2].scale(24), theta.vertex(1, 0))]
    return verify_identity(combo, x[0] * theta.root(2) * 24)
