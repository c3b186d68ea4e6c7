"""Graded invariants of a fundamental pair.

Everything is verified on finite slices: graded pieces of the kernel A of D,
image ideals I_n, degree-module increments, the updown identity and the
direct-sum decompositions of B, the latter as exact rank identities.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import EchelonBasis, rank
from .polyring import (Certificate, Polynomial, _exponents_of_degree, linear_kernel_on_slice,
                       weighted_components)
from .slpair import FundamentalPair


@dataclass(frozen=True)
class ModulePresentation:
    kind: str  # "graded-piece", "image-ideal" or "degree-module"
    index: int
    generators: Tuple[Polynomial, ...]
    over: Tuple[Polynomial, ...] = ()
    labels: Tuple[str, ...] = ()

    def __len__(self):
        return len(self.generators)


def graded_kernel_piece(pair: FundamentalPair, weight: int, bound: int) -> ModulePresentation:
    """Basis of the weight-``weight`` part of ker D in total degree <= bound."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if weight < 0:
        return ModulePresentation("graded-piece", weight, ())
    basis = linear_kernel_on_slice(pair.D, pair.ring, bound, weight)
    return ModulePresentation("graded-piece", weight, tuple(basis))


# -- bihomogeneous bookkeeping ------------------------------------------------

def bidegree(p: Polynomial) -> Tuple[int, int]:
    """(total degree, weight) of a bihomogeneous polynomial."""
    if not p:
        raise ValueError("zero has no bidegree")
    degs = {(sum(e), p.monomial_weight(e)) for e, _ in p.items()}
    if len(degs) != 1:
        raise ValueError(f"{p} is not homogeneous for degree and weight")
    return degs.pop()


def bihomogeneous_components(p: Polynomial) -> Dict[Tuple[int, int], Polynomial]:
    comps: Dict[Tuple[int, int], Dict] = {}
    for e, c in p.items():
        comps.setdefault((sum(e), p.monomial_weight(e)), {})[e] = c
    return {k: Polynomial(p.ring, v) for k, v in sorted(comps.items())}


def exponents_of_bidegree(bidegs: Sequence[Tuple[int, int]], degree: int, weight: int) -> List[Tuple[int, ...]]:
    """Exponent vectors k with sum k_i*bidegs_i == (degree, weight).

    Every generator must have positive total degree so the set is finite.
    """
    if any(d <= 0 for d, _ in bidegs):
        raise ValueError("generators must have positive total degree")
    out: List[Tuple[int, ...]] = []
    n = len(bidegs)

    def rec(i, d_left, w_left, acc):
        if i == n:
            if d_left == 0 and w_left == 0:
                out.append(tuple(acc))
            return
        d_i, w_i = bidegs[i]
        for k in range(d_left // d_i, -1, -1):
            acc.append(k)
            rec(i + 1, d_left - k * d_i, w_left - k * w_i, acc)
            acc.pop()

    rec(0, degree, weight, [])
    return out


def _power_product(gens, exps, ring, cache):
    out = ring.one()
    for i, k in enumerate(exps):
        if k:
            key = (i, k)
            if key not in cache:
                cache[key] = gens[i] ** k
            out = out * cache[key]
    return out


def algebra_ideal_membership(target: Polynomial, ideal_gens: Sequence[Polynomial],
                             algebra_gens: Sequence[Polynomial]):
    """Is target in the ideal of k[algebra_gens] generated by ideal_gens?

    All inputs must be bihomogeneous (degree and weight).  The search is
    exhaustive within the target's bidegree, so a ``None`` result does mean
    non-membership in that ideal of the subalgebra.  On success an ideal
    Certificate over B is returned whose coefficients are polynomials in the
    algebra generators.
    """
    ring = target.ring
    gens = list(ideal_gens)
    alg = list(algebra_gens)
    alg_bideg = [bidegree(g) for g in alg]
    gen_bideg = [bidegree(g) for g in gens]
    cache: Dict = {}
    combos: Dict[int, Polynomial] = {}
    for (deg, wt), piece in bihomogeneous_components(target).items():
        basis = EchelonBasis()
        labels = []
        for i, g in enumerate(gens):
            dd, ww = deg - gen_bideg[i][0], wt - gen_bideg[i][1]
            if dd < 0:
                continue
            for exps in exponents_of_bidegree(alg_bideg, dd, ww):
                mono = _power_product(alg, exps, ring, cache)
                basis.add(dict((mono * g).items()))
                labels.append((i, mono))
        coeffs = basis.express(dict(piece.items()))
        if coeffs is None:
            return None
        for lab, c in coeffs.items():
            i, mono = labels[lab]
            combos[i] = combos.get(i, ring.zero()) + mono.scale(c)
    cert = Certificate("ideal", target, tuple(gens), tuple(sorted(combos.items(), key=lambda t: t[0])), -1)
    if not cert.verify():
        raise AssertionError("internal error: algebra ideal certificate failed")
    return cert


def _check_kernel_gens(pair: FundamentalPair, kernel_gens):
    polys, weights = [], []
    for g, w in kernel_gens:
        if pair.D(g):
            raise ValueError(f"{g} is not in ker D")
        comps = weighted_components(g)
        if set(comps) != {w}:
            raise ValueError(f"{g} is not homogeneous of weight {w}")
        polys.append(g)
        weights.append(w)
    return polys, weights


def _label(exps, names):
    parts = []
    for k, name in zip(exps, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"


def image_ideal_generators(pair: FundamentalPair, kernel_gens: Sequence[Tuple[Polynomial, int]], n: int,
                           names: Optional[Sequence[str]] = None) -> ModulePresentation:
    """Generators of I_n = sum of A_i for i >= n, as an ideal of A.

    Candidates are the monomials in the positive-weight kernel generators
    whose weight lies in [n, n+m-1] (m the largest generator weight).  They
    are kept greedily in (weight, degree) order whenever they are not already
    in the A-ideal of the generators kept so far.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    polys, weights = _check_kernel_gens(pair, kernel_gens)
    if names is None:
        names = [f"g{i}" for i in range(len(polys))]
    m = max(weights) if weights else 0
    if m <= 0:
        raise ValueError("no positive-weight kernel generator: I_1 would be zero")
    pos = [i for i, w in enumerate(weights) if w > 0]
    cand = []

    def rec(j, acc, wsum):
        if j == len(pos):
            if n <= wsum <= n + m - 1:
                cand.append(tuple(acc))
            return
        w = weights[pos[j]]
        k = 0
        while wsum + k * w <= n + m - 1:
            acc.append(k)
            rec(j + 1, acc, wsum + k * w)
            acc.pop()
            k += 1

    rec(0, [], 0)
    ring = pair.ring
    cache: Dict = {}
    scored = []
    for exps in cand:
        full = [0] * len(polys)
        for j, k in zip(pos, exps):
            full[j] = k
        mono = _power_product(polys, full, ring, cache)
        wt = sum(k * weights[j] for j, k in zip(pos, exps))
        scored.append(((wt, mono.total_degree(), tuple(-k for k in full)), mono, _label(full, names)))
    scored.sort(key=lambda t: t[0])
    kept: List[Polynomial] = []
    labels: List[str] = []
    for _, mono, lab in scored:
        if kept and algebra_ideal_membership(mono, kept, polys) is not None:
            continue
        kept.append(mono)
        labels.append(lab)
    return ModulePresentation("image-ideal", n, tuple(kept), tuple(polys), tuple(labels))


def updown_scalars(weight: int, n: int) -> List[int]:
    return [j * weight - j * (j - 1) for j in range(1, n + 1)]


def degree_module_generators(pair: FundamentalPair, I_n_gens: Sequence[Polynomial], n: int) -> ModulePresentation:
    """Increment of F_n over F_(n-1): h_i = U^n(g_i) for the given generators of I_n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return ModulePresentation("degree-module", 0, ())
    hs = []
    for g in I_n_gens:
        if pair.D(g):
            raise ValueError(f"{g} is not in ker D")
        comps = weighted_components(g)
        if len(comps) != 1:
            raise ValueError(f"{g} is not weight-homogeneous")
        w = next(iter(comps))
        h = pair.up.power(g, n)
        if not h:
            raise ValueError(f"U^{n} kills {g}; its weight is below {n}")
        c = 1
        for cj in updown_scalars(w, n):
            c *= cj
        if pair.down.power(h, n) != g.scale(c) or c == 0:
            raise AssertionError("D^n U^n g is not the expected nonzero multiple of g")
        hs.append(h)
    return ModulePresentation("degree-module", n, tuple(hs), tuple(I_n_gens))


class UpdownError(AssertionError):
    pass


def verify_updown(pair: FundamentalPair, f: Polynomial, n: int) -> List[int]:
    """Check D^n U^n f == (c_1 ... c_n) f with c_j = j*deg f - j(j-1)."""
    if pair.D(f):
        raise ValueError("f must be in ker D")
    comps = weighted_components(f)
    if len(comps) != 1:
        raise ValueError("f must be weight-homogeneous")
    w = next(iter(comps))
    scalars = updown_scalars(w, n)
    prod = 1
    for c in scalars:
        prod *= c
    lhs = pair.down.power(pair.up.power(f, n), n)
    if lhs != f.scale(prod):
        raise UpdownError(f"D^{n}U^{n}f != {prod} f")
    return scalars


# -- decompositions -----------------------------------------------------------

@dataclass
class ClaimResult:
    claim: str
    weight: int
    slice_bound: int
    status: str
    witness: Dict[str, int] = field(default_factory=dict)


@dataclass
class DecompositionReport:
    claims: List[ClaimResult]

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.claims)

    def failures(self) -> List[ClaimResult]:
        return [c for c in self.claims if c.status != "pass"]

    def to_json(self) -> List[dict]:
        return [asdict(c) for c in self.claims]


def _images(der, monos, ring):
    return [dict(der(Polynomial(ring, {e: 1})).items()) for e in monos]


def _kernel(der, monos, ring):
    eb = EchelonBasis()
    ker = []
    for col in _images(der, monos, ring):
        ind, dep = eb.add(col)
        if not ind:
            ker.append({monos[j]: c for j, c in dep.items()})
    return ker


def verify_decompositions(pair: FundamentalPair, bound: int) -> DecompositionReport:
    """Rank checks of B = A + UB = Omega + DB, injectivity/surjectivity of D
    by weight, and B_0 = A_0 + D B_(-2) with D B_(-2) = U B_2, all on the
    blocks of fixed total degree and weight with degree <= bound."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if not pair.is_linear():
        raise ValueError("decomposition checks need a pair preserving total degree")
    ring = pair.ring
    claims: List[ClaimResult] = []
    for t in range(bound + 1):
        blocks: Dict[int, List[Tuple[int, ...]]] = {}
        for e in _exponents_of_degree(ring.nvars, t):
            blocks.setdefault(sum(a * b for a, b in zip(ring.weights, e)), []).append(e)
        for w in sorted(blocks):
            monos = blocks[w]
            dim = len(monos)
            kerD = _kernel(pair.down, monos, ring)
            kerU = _kernel(pair.up, monos, ring)
            UB = _images(pair.up, blocks.get(w + 2, []), ring)
            DB = _images(pair.down, blocks.get(w - 2, []), ring)
            r_ub, r_db = rank(UB), rank(DB)
            r1 = rank(kerD + UB)
            ok = len(kerD) + r_ub == dim == r1
            claims.append(ClaimResult("B=A+UB", w, t, "pass" if ok else "fail",
                                      {"dim": dim, "rank_A": len(kerD), "rank_UB": r_ub, "rank_sum": r1}))
            r2 = rank(kerU + DB)
            ok = len(kerU) + r_db == dim == r2
            claims.append(ClaimResult("B=Omega+DB", w, t, "pass" if ok else "fail",
                                      {"dim": dim, "rank_Omega": len(kerU), "rank_DB": r_db, "rank_sum": r2}))
            image_rank = rank(_images(pair.down, monos, ring))
            if w <= -1:
                ok = image_rank == dim
                claims.append(ClaimResult("D injective", w, t, "pass" if ok else "fail",
                                          {"dim_source": dim, "rank_image": image_rank}))
            if w >= -1:
                target = len(blocks.get(w + 2, []))
                ok = image_rank == target
                claims.append(ClaimResult("D surjective", w, t, "pass" if ok else "fail",
                                          {"dim_target": target, "rank_image": image_rank}))
            if w == 0:
                r_both = rank(DB + UB)
                ok = r_db == r_ub == r_both
                claims.append(ClaimResult("DB_-2=UB_2", 0, t, "pass" if ok else "fail",
                                          {"rank_DB": r_db, "rank_UB": r_ub, "rank_sum": r_both}))
                r_a0 = rank(kerD + kerU)
                r_split = rank(kerD + DB)
                ok = (r_a0 == len(kerD) == len(kerU)) and len(kerD) + r_db == dim == r_split
                claims.append(ClaimResult("B_0=A_0+DB_-2", 0, t, "pass" if ok else "fail",
                                          {"dim": dim, "rank_A0": len(kerD), "rank_DB": r_db, "rank_sum": r_split}))
    return DecompositionReport(claims)


def kernel_algebra_generators(pair: FundamentalPair, bound: int) -> List[Tuple[Polynomial, int]]:
    """Bihomogeneous generators of ker D found greedily up to total degree ``bound``.

    Only meaningful for pairs that preserve total degree; the list generates
    the kernel up to the bound, not necessarily beyond it.
    """
    from .polyring import SubalgebraOracle

    if not pair.is_linear():
        raise ValueError("kernel generator search needs a pair preserving total degree")
    kept: List[Tuple[Polynomial, int]] = []
    for t in range(1, bound + 1):
        pieces: Dict[int, List[Polynomial]] = {}
        for p in linear_kernel_on_slice(pair.D, pair.ring, t):
            for (deg, wt), comp in bihomogeneous_components(p).items():
                if deg == t:
                    pieces.setdefault(wt, []).append(comp)
        gens = [g for g, _ in kept]
        if gens:
            span = SubalgebraOracle(gens, t)._basis
        else:
            span = EchelonBasis()
        for wt in sorted(pieces, reverse=True):
            for comp in pieces[wt]:
                independent, _ = span.add(dict(comp.items()))
                if independent:
                    kept.append((comp, wt))
    return kept
