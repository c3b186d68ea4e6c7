"""Fundamental pairs (D, U) and the standard ways of building them."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .derivation import (DegreeCapExceeded, Derivation, deg_of, derive_apply, lie_bracket,
                         parse_derivation)
from .polyring import (Polynomial, RingSpec, bounded_subalgebra_membership, weighted_components)


class NotFundamentalError(ValueError):
    """Raised by :func:`verify_fundamental`; carries the failure report."""

    def __init__(self, report: "PairReport"):
        super().__init__("; ".join(report.failures) or "not a fundamental pair")
        self.report = report


@dataclass(frozen=True)
class FundamentalPair:
    down: Derivation
    up: Derivation
    weights: Tuple[int, ...]
    verified: bool = False

    @property
    def ring(self) -> RingSpec:
        return self.down.ring

    @property
    def E(self) -> Derivation:
        return lie_bracket(self.down, self.up)

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ring.variables

    def D(self, p: Polynomial) -> Polynomial:
        return derive_apply(self.down, p)

    def U(self, p: Polynomial) -> Polynomial:
        return derive_apply(self.up, p)

    def parse(self, text: str, symbols=None) -> Polynomial:
        return self.ring.parse(text, symbols)

    def is_linear(self) -> bool:
        """True when D and U map every variable to a linear form."""
        for img in self.down.images + self.up.images:
            if img and (img.min_degree() != 1 or img.total_degree() != 1):
                return False
        return True


@dataclass
class PairReport:
    ok: bool
    failures: List[str] = field(default_factory=list)
    d_degrees: Dict[str, int] = field(default_factory=dict)
    u_degrees: Dict[str, int] = field(default_factory=dict)


def nilpotency_cap(nvars: int, weights: Sequence[int]) -> int:
    return 4 * nvars * max([abs(w) for w in weights] + [1])


def check_fundamental(D: Derivation, U: Derivation, weights: Sequence[int], cap: Optional[int] = None) -> PairReport:
    """Run every generator-level check and collect the failures."""
    if D.ring.without_weights() != U.ring.without_weights():
        raise ValueError("D and U live in different rings")
    if U.ring != D.ring:
        U = U.embed(D.ring)
    ring = D.ring
    weights = tuple(weights)
    failures: List[str] = []
    if len(weights) != ring.nvars:
        return PairReport(False, [f"expected {ring.nvars} weights, got {len(weights)}"])
    if cap is None:
        cap = nilpotency_cap(ring.nvars, weights)
    report = PairReport(True)
    for name in ring.variables:
        x = ring.var(name)
        for label, der, store in (("D", D, report.d_degrees), ("U", U, report.u_degrees)):
            try:
                store[name] = deg_of(der, x, cap)
            except DegreeCapExceeded:
                failures.append(f"{label} not nilpotent on {name} within cap {cap}")
    E = lie_bracket(D, U)
    DE = lie_bracket(D, E)
    UE = lie_bracket(U, E)
    for i, name in enumerate(ring.variables):
        x = ring.var(name)
        if E.images[i] != x.scale(weights[i]):
            failures.append(f"E({name}) = {E.images[i]} is not {weights[i]}*{name}")
        if DE.images[i] != D.images[i].scale(-2):
            failures.append(f"[D,E]({name}) != -2 D({name})")
        if UE.images[i] != U.images[i].scale(2):
            failures.append(f"[U,E]({name}) != 2 U({name})")
    wring = ring.with_weights(weights)
    for i, name in enumerate(ring.variables):
        for label, der, shift in (("D", D, 2), ("U", U, -2)):
            img = der.images[i]
            if not img:
                continue
            comps = weighted_components(img.embed(wring))
            if set(comps) != {weights[i] + shift}:
                failures.append(f"{label}({name}) not of weight {weights[i] + shift}")
    report.failures = failures
    report.ok = not failures
    return report


def verify_fundamental(D: Derivation, U: Derivation, weights: Sequence[int], cap: Optional[int] = None) -> FundamentalPair:
    """Return the verified pair, or raise :class:`NotFundamentalError`."""
    report = check_fundamental(D, U, weights, cap)
    if not report.ok:
        raise NotFundamentalError(report)
    ring = D.ring.with_weights(weights)
    return FundamentalPair(D.embed(ring), U.embed(ring), tuple(weights), True)


def infer_weights(D: Derivation, U: Derivation) -> Optional[Tuple[int, ...]]:
    """Eigenvalues of [D,U] on the variables if it is diagonal there with integer entries."""
    E = lie_bracket(D, U)
    out = []
    for name, img in zip(D.ring.variables, E.images):
        x = D.ring.var(name)
        if not img:
            out.append(0)
            continue
        exp, c = img.leading_term()
        if len(img) != 1 or exp != next(iter(x.items()))[0]:
            return None
        c = Fraction(c)
        if c.denominator != 1:
            return None
        out.append(int(c))
    return tuple(out)


def basic_pair(n: int, prefix: str = "x") -> FundamentalPair:
    """D x_i = x_(i-1), U x_i = (i+1)(n-i) x_(i+1) on k[x_0..x_n]."""
    if n < 1:
        raise ValueError("basic_pair needs n >= 1")
    names = tuple(f"{prefix}{i}" for i in range(n + 1))
    weights = tuple(n - 2 * i for i in range(n + 1))
    ring = RingSpec(names, weights)
    x = ring.gens()
    down = [x[i - 1] if i > 0 else ring.zero() for i in range(n + 1)]
    up = [x[i + 1].scale((i + 1) * (n - i)) if i < n else ring.zero() for i in range(n + 1)]
    return verify_fundamental(Derivation(ring, down), Derivation(ring, up), weights)


def _renamed(names: Sequence[str], prefix: str) -> List[str]:
    out = []
    for i, name in enumerate(names):
        m = re.fullmatch(r"[A-Za-z_]+(\d+)", name)
        out.append(prefix + (m.group(1) if m else str(i)))
    return out


def direct_sum_pair(pairs: Sequence[FundamentalPair], name_prefixes: Sequence[str]) -> FundamentalPair:
    """Concatenate pairs on disjoint variable sets, renamed by prefix."""
    if len(pairs) != len(name_prefixes):
        raise ValueError("one prefix per summand")
    if len(set(name_prefixes)) != len(name_prefixes):
        raise ValueError("name prefixes must be distinct")
    names: List[str] = []
    weights: List[int] = []
    blocks = []
    for pair, pre in zip(pairs, name_prefixes):
        new = _renamed(pair.variables, pre)
        blocks.append((pair, new))
        names.extend(new)
        weights.extend(pair.weights)
    if len(set(names)) != len(names):
        raise ValueError("prefix collision produces duplicate variable names")
    ring = RingSpec(tuple(names), tuple(weights))
    down: List[Polynomial] = []
    up: List[Polynomial] = []
    for pair, new in blocks:
        local = RingSpec(tuple(new), pair.weights)
        for d_img, u_img in zip(pair.down.images, pair.up.images):
            down.append(Polynomial(local, dict(d_img.items())).embed(ring))
            up.append(Polynomial(local, dict(u_img.items())).embed(ring))
    return verify_fundamental(Derivation(ring, down), Derivation(ring, up), weights)


def conjugate_pair(pair: FundamentalPair, action: str, r=None) -> FundamentalPair:
    """Apply ``"swap"`` (exchange D and U) or ``"scale"`` by r: (rD, U/r)."""
    if action == "swap":
        weights = tuple(-w for w in pair.weights)
        ring = pair.ring.with_weights(weights)
        return verify_fundamental(pair.up.embed(ring), pair.down.embed(ring), weights)
    if action == "scale":
        if r is None:
            raise ValueError("scale needs a factor")
        r = Fraction(r)
        if r == 0:
            raise ValueError("scale factor must be nonzero")
        return verify_fundamental(pair.down.scale(r), pair.up.scale(1 / r), pair.weights)
    raise ValueError(f"unknown action {action!r}")


def gordan_pair(pair: FundamentalPair, names: Optional[Tuple[str, str]] = None) -> FundamentalPair:
    """(D + X d/dY, U + Y d/dX) on B[X, Y], with X of weight 1 and Y of weight -1."""
    existing = set(pair.variables)
    if names is None:
        k = 0
        while True:
            cand = ("X", "Y") if k == 0 else (f"X{k}", f"Y{k}")
            if not (set(cand) & existing):
                names = cand
                break
            k += 1
    elif set(names) & existing or names[0] == names[1]:
        raise ValueError(f"fresh names {names} collide with existing variables")
    ring = pair.ring.extend(names, (1, -1))
    X, Y = ring.var(names[0]), ring.var(names[1])
    D = pair.down.embed(ring)
    U = pair.up.embed(ring)
    down = list(D.images[:-2]) + [ring.zero(), X]
    up = list(U.images[:-2]) + [Y, ring.zero()]
    return verify_fundamental(Derivation(ring, down), Derivation(ring, up), ring.weights)


class SubringDivisionError(ValueError):
    pass


@dataclass
class SubringReport:
    ok: bool
    certificates: Dict[str, object]


def subring_pair(pair: FundamentalPair, a: Polynomial, subring_gens: Sequence[Polynomial], bound: int) -> SubringReport:
    """Check that (a^-1 D, a U) maps each generator back into the subring."""
    if not a:
        raise ValueError("a must be nonzero")
    if pair.D(a) or pair.U(a):
        raise ValueError("a must be annihilated by D and U")
    if set(weighted_components(a)) != {0}:
        raise ValueError("a must have weight 0")
    gens = list(subring_gens)
    certs: Dict[str, object] = {}
    ok = True
    for idx, g in enumerate(gens):
        dg = pair.D(g)
        quotient = dg.exact_divide(a) if dg else dg
        if quotient is None:
            raise SubringDivisionError(f"D(g{idx}) is not divisible by a")
        for label, img in ((f"a^-1 D(g{idx})", quotient), (f"a U(g{idx})", a * pair.U(g))):
            cert = bounded_subalgebra_membership(img, gens, bound)
            certs[label] = cert
            ok = ok and bool(cert)
    return SubringReport(ok, certs)


# -- pair description files --------------------------------------------------

def parse_pair_text(text: str) -> Tuple[Derivation, Derivation, Tuple[int, ...]]:
    """Read a pair description.

    Format::

        ring: x0 x1 x2
        weights: 2 0 -2
        [down]
        x1 -> x0
        x2 -> x1
        [up]
        x0 -> 2*x1
        x1 -> 2*x2
    """
    variables = None
    weights = None
    blocks: Dict[str, List[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("ring:"):
            variables = tuple(line.split(":", 1)[1].replace(",", " ").split())
            current = None
        elif low.startswith("weights:"):
            weights = tuple(int(w) for w in line.split(":", 1)[1].replace(",", " ").split())
            current = None
        elif low in ("[down]", "[up]"):
            current = low.strip("[]")
            blocks[current] = []
        elif current is not None:
            blocks[current].append(line)
        else:
            raise ValueError(f"unexpected line in pair file: {raw!r}")
    if variables is None or weights is None:
        raise ValueError("pair file needs 'ring:' and 'weights:' lines")
    if "down" not in blocks or "up" not in blocks:
        raise ValueError("pair file needs [down] and [up] blocks")
    ring = RingSpec(variables, weights)
    D = parse_derivation("\n".join(blocks["down"]), ring)
    U = parse_derivation("\n".join(blocks["up"]), ring)
    return D, U, weights


def format_pair(pair: FundamentalPair) -> str:
    from .derivation import format_derivation
    lines = ["ring: " + " ".join(pair.variables), "weights: " + " ".join(str(w) for w in pair.weights),
             "[down]", format_derivation(pair.down), "[up]", format_derivation(pair.up)]
    return "\n".join(l for l in lines if l) + "\n"
