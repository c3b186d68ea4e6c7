"""Extending D to B[u] by an invariant shift and computing the kernel.

With D'u = a for a weight-zero invariant a, every f of D-degree at most n
has an explicit D'-invariant lift

    phi_n(f) = sum over j of (-1)^j / j! * a^(n-j) * D^j(f) * u^j,

and the kernel of D' is generated by these lifts applied to the degree-module
increments, together with the generators of A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from .derivation import Derivation, deg_of, derive_apply
from .polyring import (Polynomial, RingSpec, bounded_ideal_membership, substitute, weighted_components)
from .slpair import FundamentalPair
from .structure import ModulePresentation


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionContext:
    base_pair: FundamentalPair
    shift: Polynomial
    extended_ring: RingSpec
    extended_derivation: Derivation
    u_name: str = "u"
    degree_modules: Tuple[ModulePresentation, ...] = ()
    kernel_gens: Tuple[Polynomial, ...] = ()
    kernel_labels: Tuple[str, ...] = ()

    @property
    def base_ring(self) -> RingSpec:
        return self.base_pair.ring

    @property
    def u(self) -> Polynomial:
        return self.extended_ring.var(self.u_name)

    def lift(self, p: Polynomial) -> Polynomial:
        """Embed a polynomial of B into B[u]."""
        return p.embed(self.extended_ring)

    def Dprime(self, p: Polynomial) -> Polynomial:
        return derive_apply(self.extended_derivation, p)

    def specialize_u(self, p: Polynomial) -> Polynomial:
        """Set u = 0 and return the result in B."""
        i = self.extended_ring.index(self.u_name)
        terms = {e[:i] + e[i + 1:]: c for e, c in p.items() if e[i] == 0}
        return Polynomial(self.base_ring, terms)


def extend_by_invariant(pair: FundamentalPair, a: Polynomial, u_name: str = "u") -> ExtensionContext:
    """B[u] with D' = D on B and D'u = a."""
    if a.ring != pair.ring:
        a = a.embed(pair.ring)
    if not a:
        raise ExtensionError("the shift a must be nonzero")
    if pair.D(a) or pair.U(a):
        raise ExtensionError("the shift must be annihilated by D and U")
    if set(weighted_components(a)) != {0}:
        raise ExtensionError("the shift must have weight 0")
    if u_name in pair.variables:
        raise ExtensionError(f"name {u_name!r} already used")
    ring = pair.ring.without_weights().extend([u_name])
    images = [img.embed(ring) for img in pair.down.images] + [a.embed(ring)]
    return ExtensionContext(pair, a, ring, Derivation(ring, images), u_name)


def phi_clear(ctx: ExtensionContext, f: Polynomial, n: int) -> Polynomial:
    """phi_n(f) in B[u]; requires deg_D f <= n."""
    if f.ring != ctx.base_ring:
        f = f.embed(ctx.base_ring)
    D = ctx.base_pair.down
    if deg_of(D, f) > n:
        raise ExtensionError(f"deg_D f exceeds {n}")
    a = ctx.lift(ctx.shift)
    u = ctx.u
    total = ctx.extended_ring.zero()
    djf = f
    for j in range(n + 1):
        if not djf:
            break
        term = a ** (n - j) * ctx.lift(djf) * u ** j
        total = total + term.scale(Fraction((-1) ** j, math.factorial(j)))
        djf = derive_apply(D, djf)
    if ctx.Dprime(total):
        raise AssertionError("internal error: phi_n(f) not killed by D'")
    return total


def extension_kernel_gens(ctx: ExtensionContext, kernel_gens_of_A: Sequence[Polynomial],
                          module_increments: Sequence[Tuple[int, Sequence[Polynomial]]],
                          labels: Optional[Sequence[str]] = None) -> ExtensionContext:
    """Kernel generators: those of A plus phi_n of every level-n increment."""
    gens: List[Polynomial] = []
    labs: List[str] = []
    names = list(labels) if labels is not None else None
    idx = 0
    for g in kernel_gens_of_A:
        gens.append(ctx.lift(g.embed(ctx.base_ring)))
        labs.append(names[idx] if names else f"A{len(labs)}")
        idx += 1
    modules = []
    for n, hs in module_increments:
        modules.append(ModulePresentation("degree-module", n, tuple(hs)))
        for h in hs:
            gens.append(phi_clear(ctx, h, n))
            labs.append(names[idx] if names else f"phi{n}(h{len(labs)})")
            idx += 1
    for g in gens:
        if ctx.Dprime(g):
            raise AssertionError("kernel generator not annihilated by D'")
    return replace(ctx, degree_modules=tuple(modules), kernel_gens=tuple(gens), kernel_labels=tuple(labs))


@dataclass
class RelationResult:
    ok: bool
    remainder: Polynomial
    leading_term: Optional[str] = None


def verify_kernel_relation(ctx: Optional[ExtensionContext], relation: Polynomial,
                           assignment: Mapping[str, Polynomial]) -> RelationResult:
    """Substitute generators for the symbols of ``relation`` and expand."""
    missing = [v for v in relation.used_variables() if v not in assignment]
    if missing:
        raise ExtensionError(f"no assignment for {missing}")
    target = ctx.extended_ring if ctx is not None else next(iter(assignment.values())).ring
    images = {k: (v.embed(target) if v.ring != target else v) for k, v in assignment.items()}
    rem = substitute(relation, images, target)
    if rem:
        exp, c = rem.leading_term()
        lead = str(Polynomial(rem.ring, {exp: c}))
        return RelationResult(False, rem, lead)
    return RelationResult(True, rem)


def freeness_certificate(ctx: ExtensionContext, bound: int):
    """Certificate that the images D'(x_i) and a generate the unit ideal."""
    ring = ctx.extended_ring
    gens = [img for img in ctx.extended_derivation.images if img]
    a = ctx.lift(ctx.shift)
    if a not in gens:
        gens.append(a)
    return bounded_ideal_membership(ring.one(), gens, bound)


def local_triviality_certificate(ctx: ExtensionContext, plinth_gens: Sequence[Polynomial], bound: int):
    """Certificate for 1 in I_1 B[u] + a B[u]."""
    ring = ctx.extended_ring
    gens = [ctx.lift(g.embed(ctx.base_ring)) for g in plinth_gens] + [ctx.lift(ctx.shift)]
    return bounded_ideal_membership(ring.one(), gens, bound)


@dataclass
class FiberReport:
    ok: bool
    contained: List[bool]
    violations: List[str]
    disjoint: bool
    separating: List[Tuple[int, int, str]] = field(default_factory=list)


def fiber_check(subring_gens: Sequence[Polynomial], point: Sequence, parametrizations: Sequence[Mapping[str, Polynomial]]) -> FiberReport:
    """Check that each parametrized family lies in the fiber over ``point``
    and that the families are pairwise disjoint.

    Each parametrization assigns every variable of B a polynomial in free
    parameters.  Disjointness is witnessed by a variable that is constant on
    both families with different values.
    """
    if len(point) != len(subring_gens):
        raise ValueError("point needs one value per subring generator")
    contained = []
    violations = []
    for k, par in enumerate(parametrizations):
        ok = True
        target = next(iter(par.values())).ring
        for gi, (g, val) in enumerate(zip(subring_gens, point)):
            img = substitute(g, par, target)
            if img != target.const(val):
                ok = False
                violations.append(f"family {k}: generator {gi} takes {img} instead of {val}")
        contained.append(ok)
    separating = []
    disjoint = True
    for i in range(len(parametrizations)):
        for j in range(i + 1, len(parametrizations)):
            found = None
            for name in parametrizations[i]:
                p, q = parametrizations[i][name], parametrizations[j].get(name)
                if q is None:
                    continue
                if p.is_constant() and q.is_constant() and p.constant_term() != q.constant_term():
                    found = name
                    break
            if found is None:
                disjoint = False
            else:
                separating.append((i, j, found))
    return FiberReport(all(contained) and disjoint, contained, violations, disjoint, separating)


def empty_fiber_certificate(subring_gens: Sequence[Polynomial], point: Sequence, bound: int):
    """Certificate that the B-ideal generated by g_i - point_i is the unit ideal."""
    ring = subring_gens[0].ring
    gens = [g - ring.const(v) for g, v in zip(subring_gens, point)]
    return bounded_ideal_membership(ring.one(), gens, bound)
