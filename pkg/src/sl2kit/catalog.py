"""The example catalog: each entry builds its ring, invariants and extension
data, then runs a battery of exact checks and returns a :class:`Report`.

Statuses are ``pass``, ``fail``, ``unknown-expected`` (a bounded search that
is supposed to come back empty did) and ``unknown-unexpected`` (a bounded
search that should have produced a certificate did not).
"""

from __future__ import annotations

import itertools
import math
import re
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .derivation import Derivation, build_cable, deg_of, transvectant
from .extension import (ExtensionContext, empty_fiber_certificate, extend_by_invariant, extension_kernel_gens,
                        fiber_check, freeness_certificate, local_triviality_certificate, phi_clear,
                        verify_kernel_relation)
from .polyring import (Certificate, Polynomial, RingSpec, SubalgebraOracle, Unknown, bounded_ideal_membership,
                       bounded_subalgebra_membership, linear_kernel_on_slice, span_rank, substitute,
                       weighted_components)
from .slpair import (FundamentalPair, basic_pair, check_fundamental, direct_sum_pair, infer_weights,
                     subring_pair, verify_fundamental)
from .structure import (algebra_ideal_membership, degree_module_generators, image_ideal_generators)

REPORT_VERSION = "1.0"
STATUSES = ("pass", "fail", "unknown-expected", "unknown-unexpected")


class UnknownExampleError(KeyError):
    pass


# -- reports ------------------------------------------------------------------

@dataclass
class CheckRecord:
    id: str
    anchor: str
    status: str
    witness: str
    ms: float


@dataclass
class Report:
    example: str
    checks: List[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status in ("pass", "unknown-expected") for c in self.checks)

    def counts(self) -> Dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_json(self, include_ms: bool = True) -> dict:
        checks = []
        for c in self.checks:
            d = asdict(c)
            if not include_ms:
                d.pop("ms")
            checks.append(d)
        return {"version": REPORT_VERSION, "example": self.example, "checks": checks}

    def to_text(self) -> str:
        lines = [f"== {self.example}"]
        for c in self.checks:
            lines.append(f"  [{c.status:>18}] {c.id}: {c.witness}")
        counts = self.counts()
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in counts.items()))
        return "\n".join(lines)


def _short(text: str, limit: int = 160) -> str:
    text = " ".join(str(text).split())
    return text if len(text) <= limit else text[: limit - 3] + "..."


class Battery:
    """Collects check outcomes for one example run."""

    def __init__(self, example: str):
        self.report = Report(example)

    def check(self, cid: str, anchor: str, fn: Callable, expect: str = "pass") -> object:
        """Run ``fn`` and record its status.

        ``fn`` may return a bool, a ``(bool, witness)`` pair, a Certificate
        or an Unknown.  With ``expect="unknown"`` an Unknown outcome is the
        desired one and a certificate is a failure.
        """
        start = time.perf_counter()
        value = None
        try:
            value = fn()
            status, witness = self._classify(value, expect)
        except Exception as exc:  # a crashing check is a failed check
            status, witness = "fail", f"{type(exc).__name__}: {exc}"
        ms = round((time.perf_counter() - start) * 1000, 3)
        self.report.checks.append(CheckRecord(cid, anchor, status, _short(witness), ms))
        return value

    @staticmethod
    def _classify(value, expect):
        if isinstance(value, Unknown):
            if expect == "unknown":
                return "unknown-expected", f"no certificate up to bound {value.bound}"
            return "unknown-unexpected", f"no certificate up to bound {value.bound}"
        if isinstance(value, Certificate):
            desc = f"certificate at bound {value.bound}: {value.describe()}"
            if expect == "unknown":
                return "fail", "unexpected " + desc
            return "pass", desc
        if isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], bool):
            ok, witness = value
        elif isinstance(value, bool):
            ok, witness = value, ""
        else:
            raise TypeError(f"check returned {type(value).__name__}")
        return ("pass" if ok else "fail"), witness


# -- example data -------------------------------------------------------------

@dataclass
class ExampleData:
    name: str
    module_data: str
    pair: FundamentalPair
    named: Dict[str, Polynomial]
    kernel_gens: List[Tuple[str, int]]
    a0_names: List[str]
    plinth: List[str]
    increments: Dict[int, List[str]]
    shift: Optional[str] = None
    relations: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    bounds: Dict[str, int] = field(default_factory=dict)

    def poly(self, name: str) -> Polynomial:
        return self.named[name]

    def kernel_polys(self) -> List[Polynomial]:
        return [self.named[n] for n, _ in self.kernel_gens]


@dataclass(frozen=True)
class ExampleSpec:
    """Printable description of an example."""

    name: str
    module_data: str
    variables: Tuple[str, ...]
    weights: Tuple[int, ...]
    named_invariants: Tuple[Tuple[str, str], ...]
    kernel_gens: Tuple[Tuple[str, int], ...]
    plinth_gens: Tuple[str, ...]
    degree_module_table: Tuple[Tuple[int, Tuple[str, ...]], ...]
    shift: Optional[str]
    relations: Tuple[str, ...]
    notes: Tuple[str, ...]
    bounds: Tuple[Tuple[str, int], ...]

    def render(self) -> str:
        lines = [f"{self.name}: {self.module_data}",
                 "  ring: " + ", ".join(f"{v}({w:+d})" for v, w in zip(self.variables, self.weights))]
        lines.append("  named polynomials:")
        for k, v in self.named_invariants:
            lines.append(f"    {k} = {v}")
        if self.kernel_gens:
            lines.append("  kernel generators: " + ", ".join(f"{n}(wt {w})" for n, w in self.kernel_gens))
        if self.plinth_gens:
            lines.append("  plinth ideal I_1: (" + ", ".join(self.plinth_gens) + ")")
        for n, gens in self.degree_module_table:
            lines.append(f"  F_{n} increment: " + ", ".join(gens))
        if self.shift:
            lines.append(f"  shift a = {self.shift}")
        for r in self.relations:
            lines.append(f"  relation: {r}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        if self.bounds:
            lines.append("  default bounds: " + ", ".join(f"{k}={v}" for k, v in self.bounds))
        return "\n".join(lines)


def _spec_from_data(data: ExampleData) -> ExampleSpec:
    return ExampleSpec(
        data.name, data.module_data, data.pair.variables, data.pair.weights,
        tuple((k, str(v)) for k, v in data.named.items()),
        tuple(data.kernel_gens), tuple(data.plinth),
        tuple((n, tuple(g)) for n, g in sorted(data.increments.items())),
        data.shift, tuple(data.relations), tuple(data.notes), tuple(sorted(data.bounds.items())))


def _proportional(p: Polynomial, q: Polynomial) -> bool:
    if not p or not q:
        return not p and not q
    exp, c = q.leading_term()
    t = Fraction(p.coefficient(exp)) / Fraction(c)
    return t != 0 and p == q.scale(t)


# -- shared check groups ----------------------------------------------------------

def _check_pair(b: Battery, pair: FundamentalPair):
    def run():
        rep = check_fundamental(pair.down, pair.up, pair.weights)
        return rep.ok, "; ".join(rep.failures) or f"weights {pair.weights}"
    b.check("pair.fundamental", "pair/axioms", run)


def _check_invariants(b: Battery, data: ExampleData):
    pair = data.pair

    def run():
        bad = [n for n, _ in data.kernel_gens if pair.D(data.named[n])]
        bad += [n for n in data.a0_names if pair.U(data.named[n])]
        return not bad, ("not invariant: " + ", ".join(bad)) if bad else f"{len(data.kernel_gens)} kernel generators in ker D; A_0 part in ker U"
    b.check("invariants.annihilated", "kernel/invariants", run)

    def weights():
        bad = [n for n, w in data.kernel_gens if set(weighted_components(data.named[n])) != {w}]
        return not bad, ", ".join(bad) or "declared weights match"
    b.check("invariants.weights", "kernel/grading", weights)


def _check_kernel_oracle(b: Battery, pair: FundamentalPair, gens: Sequence[Polynomial], bound: int, cid="kernel.oracle"):
    def run():
        basis = linear_kernel_on_slice(pair.D, pair.ring, bound)
        oracle = SubalgebraOracle(gens, bound)
        missing = [str(p) for p in basis if not oracle.query(p)]
        if missing:
            return Unknown(reason="basis element outside bounded subalgebra: " + missing[0], bound=bound)
        return True, f"{len(basis)} basis elements of ker D up to degree {bound} expressed in generators"
    b.check(cid, "kernel/oracle", run)


def _check_image_ideals(b: Battery, data: ExampleData, expected: Mapping[int, Sequence[Polynomial]]):
    pair = data.pair
    kg = [(data.named[n], w) for n, w in data.kernel_gens]
    names = [n for n, _ in data.kernel_gens]
    algebra = [p for p, _ in kg]
    computed = {}
    for n, exp_gens in sorted(expected.items()):
        def run(n=n, exp_gens=exp_gens):
            pres = image_ideal_generators(pair, kg, n, names)
            computed[n] = pres
            for g in exp_gens:
                if algebra_ideal_membership(g, list(pres.generators), algebra) is None:
                    return False, f"expected generator {g} not in computed I_{n}"
            for g in pres.generators:
                if algebra_ideal_membership(g, list(exp_gens), algebra) is None:
                    return False, f"computed generator {g} not in expected I_{n}"
            return True, f"I_{n} = (" + ", ".join(pres.labels) + ")"
        b.check(f"image_ideal.I{n}", "structure/image-ideal", run)
    return computed


def _check_increments(b: Battery, data: ExampleData, sources: Mapping[int, Sequence[Polynomial]]):
    """Each listed increment h at level n is proportional to U^n of a source generator."""
    pair = data.pair
    for n, names in sorted(data.increments.items()):
        def run(n=n, names=names):
            pres = degree_module_generators(pair, list(sources[n]), n)
            hs = list(pres.generators)
            unmatched = [nm for nm in names if not any(_proportional(data.named[nm], h) for h in hs)]
            if unmatched:
                return False, "not of the form U^n(g): " + ", ".join(unmatched)
            return True, f"F_{n} increments {', '.join(names)} match U^{n} of I_{n} generators"
        b.check(f"degree_module.F{n}", "structure/degree-module", run)


def _build_extension(data: ExampleData) -> ExtensionContext:
    a = data.named["a"]
    ctx = extend_by_invariant(data.pair, a)
    increments = [(n, [data.named[h] for h in hs]) for n, hs in sorted(data.increments.items())]
    labels = [n for n, _ in data.kernel_gens] + [f"phi{n}({h})" for n, hs in sorted(data.increments.items()) for h in hs]
    return extension_kernel_gens(ctx, data.kernel_polys(), increments, labels)


def _check_extension(b: Battery, data: ExampleData, expected_count: Optional[int]):
    holder = {}

    def build():
        ctx = _build_extension(data)
        holder["ctx"] = ctx
        bad = [lab for lab, g in zip(ctx.kernel_labels, ctx.kernel_gens) if ctx.Dprime(g)]
        return not bad, f"{len(ctx.kernel_gens)} generators, all killed by D'" if not bad else "not killed: " + ", ".join(bad)
    b.check("extension.kernel_gens", "extension/kernel", build)
    ctx = holder.get("ctx")
    if ctx is None:
        return None
    if expected_count is not None:
        b.check("extension.count", "extension/kernel",
                lambda: (len(ctx.kernel_gens) == expected_count, f"{len(ctx.kernel_gens)} generators (expected {expected_count})"))

    def epsilon():
        a = ctx.shift
        levels = [0] * len(data.kernel_gens) + [n for n, hs in sorted(data.increments.items()) for _ in hs]
        bases = data.kernel_polys() + [data.named[h] for n, hs in sorted(data.increments.items()) for h in hs]
        for g, n, f in zip(ctx.kernel_gens, levels, bases):
            if ctx.specialize_u(g) != a ** n * f:
                return False, f"u=0 specialization mismatch for {f}"
        return True, "u=0 gives a^n f for every generator"
    b.check("extension.specialization", "extension/kernel", epsilon)
    return ctx


def _check_relation(b: Battery, cid: str, ctx: Optional[ExtensionContext], relation: str, symbols: Sequence[str],
                    assignment: Sequence[Polynomial], anchor: str = "extension/relation"):
    def run():
        ring = RingSpec(tuple(symbols))
        rel = ring.parse(relation)
        res = verify_kernel_relation(ctx, rel, dict(zip(symbols, assignment)))
        return res.ok, f"{relation} = 0" if res.ok else f"remainder leading term {res.leading_term}"
    b.check(cid, anchor, run)


def _check_local_triviality(b: Battery, ctx: ExtensionContext, plinth: Sequence[Polynomial], bound: int,
                            expect: str = "pass"):
    def run():
        if expect == "unknown":
            result = None
            for k in range(bound + 1):
                result = local_triviality_certificate(ctx, plinth, k)
                if result:
                    return result
            return result
        for k in range(bound + 1):
            cert = local_triviality_certificate(ctx, plinth, k)
            if cert:
                return cert
        return cert
    b.check("extension.local_triviality", "extension/local-triviality", run, expect=expect)


def _check_freeness(b: Battery, ctx: ExtensionContext, bound: int):
    def run():
        cert = None
        for k in range(bound + 1):
            cert = freeness_certificate(ctx, k)
            if cert:
                return cert
        return cert
    b.check("extension.freeness", "extension/freeness", run)


def _check_kernel_generation(b: Battery, ctx: ExtensionContext, bound: int):
    """Bounded check that ker D' in low degree lies in the algebra of the generators."""
    def run():
        basis = linear_kernel_on_slice(ctx.Dprime, ctx.extended_ring, bound)
        oracle = SubalgebraOracle(list(ctx.kernel_gens), bound)
        for p in basis:
            if not oracle.query(p):
                return Unknown(reason=f"{p} not reached", bound=bound)
        return True, f"{len(basis)} basis elements of ker D' up to degree {bound} generated"
    b.check("extension.kernel_generation", "extension/kernel", run)


def _hypersurface_point_checks(b: Battery, cid: str, relation: str, symbols: Sequence[str], point: Sequence,
                               singular: bool):
    ring = RingSpec(tuple(symbols))
    F = ring.parse(relation)
    pt = dict(zip(symbols, point))

    def run():
        on = F.evaluate(pt) == 0
        grad = [F.derivative(s).evaluate(pt) for s in symbols]
        vanishes = all(g == 0 for g in grad)
        ok = on and (vanishes == singular)
        return ok, f"F(p)={F.evaluate(pt)}, grad={grad}"
    b.check(cid, "quotient/singularity", run)


def _smoothness_certificate(relation: str, symbols: Sequence[str], bound: int):
    ring = RingSpec(tuple(symbols))
    F = ring.parse(relation)
    gens = [F] + [F.derivative(s) for s in symbols]
    return bounded_ideal_membership(ring.one(), [g for g in gens if g], bound)


# -- builders ----------------------------------------------------------------

def _v3_polys(R: RingSpec):
    return {
        "T1": R.parse("x0"),
        "T2": R.parse("2*x0*x2 - x1^2"),
        "T3": R.parse("3*x0^2*x3 - 3*x0*x1*x2 + x1^3"),
    }


def build_V1() -> ExampleData:
    pair = basic_pair(1)
    R = pair.ring
    named = {"x0": R.parse("x0"), "x1": R.parse("x1"), "a": R.one()}
    return ExampleData("V1", "V1", pair, named, [("x0", 1)], [], ["x0"], {1: ["x1"]}, "1",
                       notes=["A_0 = k, so a = 1 and K = B"], bounds={"oracle": 5, "search": 2})


def build_V2() -> ExampleData:
    pair = basic_pair(2)
    R = pair.ring
    T2 = R.parse("2*x0*x2 - x1^2")
    named = {"x0": R.parse("x0"), "T2": T2, "x1": R.parse("x1"), "x2": R.parse("x2"), "a": 1 + T2}
    return ExampleData("V2_winkelmann", "V2", pair, named, [("x0", 2), ("T2", 0)], ["T2"], ["x0"],
                       {1: ["x1"], 2: ["x2"]}, "1 + T2",
                       relations=["2*x*w - v^2 - y*(1+y)^2 = 0 with (x,y,v,w) = (x0, T2, phi1(x1), phi2(x2))"],
                       notes=["fiber over the singular point (0,-1,0,0) is two disjoint lines x0 = 0, x1 = +-1"],
                       bounds={"oracle": 6, "search": 4, "kernel": 3})


def _v1v1_pair():
    return direct_sum_pair([basic_pair(1), basic_pair(1)], ["x", "y"])


def build_V1V1(m: int = 1) -> ExampleData:
    pair = _v1v1_pair()
    R = pair.ring
    P = R.parse("x0*y1 - y0*x1")
    named = {"x0": R.parse("x0"), "y0": R.parse("y0"), "P": P, "x1": R.parse("x1"), "y1": R.parse("y1"),
             "a": (1 + P) ** m}
    if m == 1:
        name, shift, rel = "V1V1_smooth", "1 + P", "x*w - y*v - z*(1+z) = 0"
    else:
        name, shift, rel = f"V1V1_singular({m})", f"(1 + P)^{m}", f"x*w - y*v - (1+z)^{m}*z = 0"
    return ExampleData(name, "V1+V1", pair, named, [("x0", 1), ("y0", 1), ("P", 0)], ["P"], ["x0", "y0"],
                       {1: ["x1", "y1"]}, shift,
                       relations=[rel + " with (x,y,z,v,w) = (x0, y0, P, phi1(x1), phi1(y1))"],
                       bounds={"oracle": 6, "search": max(2, 2 * m), "kernel": 3})


def build_V3() -> ExampleData:
    pair = basic_pair(3)
    R = pair.ring
    named = _v3_polys(R)
    T1, T2, T3 = named["T1"], named["T2"], named["T3"]
    H = (T2 ** 3 + T3 ** 2).exact_divide(T1 ** 2)
    named["H"] = H
    U = pair.up
    named["x1"], named["x2"], named["x3"] = R.parse("x1"), R.parse("x2"), R.parse("x3")
    named["P1"] = U(T2).scale(Fraction(1, 2))
    named["P2"] = U.power(T2, 2).scale(Fraction(1, 4))
    named["Q1"] = U(T3).scale(Fraction(1, 3))
    named["Q2"] = U.power(T3, 2).scale(Fraction(1, 12))
    named["Q3"] = U.power(T3, 3).scale(Fraction(1, 36))
    named["a"] = 1 + H
    return ExampleData("V3_finston", "V3", pair, named, [("T1", 3), ("T2", 2), ("T3", 3), ("H", 0)], ["H"],
                       ["T1", "T2", "T3"], {1: ["x1", "P1", "Q1"], 2: ["x2", "P2", "Q2"], 3: ["x3", "Q3"]},
                       "1 + H", relations=["T1^2*H = T2^3 + T3^2"],
                       notes=["as an ideal of A, I_3 = (T1, T3, T2^2); T2^2 lies in (T1, T3)B",
                              "phi_3(U^3 T2^2) is a product of phi_1(P1) and phi_2(P2), so 12 generators suffice"],
                       bounds={"oracle": 6, "search": 4, "ideal": 6})


def _v1v2_pair():
    return direct_sum_pair([basic_pair(1), basic_pair(2)], ["x", "y"])


def build_V1V2() -> ExampleData:
    pair = _v1v2_pair()
    R = pair.ring
    D = pair.down
    x1, y1, y2 = R.parse("x1"), R.parse("y1"), R.parse("y2")
    named = {"x": R.parse("x0"), "y": R.parse("y0"), "z": transvectant(D, x1, y1, 1),
             "v": transvectant(D, y2, y2, 2), "w": transvectant(D, y2, x1 ** 2, 2),
             "x1": x1, "y1": y1, "l": R.parse("2*x0*y2 - x1*y1"), "y2": y2}
    named["a"] = 1 + named["w"]
    return ExampleData("V1V2", "V1+V2", pair, named, [("x", 1), ("y", 2), ("z", 1), ("v", 0), ("w", 0)],
                       ["v", "w"], ["x", "y", "z"], {1: ["x1", "y1", "l"], 2: ["y2"]}, "1 + w",
                       relations=["x^2*v - y*w + z^2 = 0", "D(l) = z"],
                       notes=["z = [x1,y1]_1, v = [y2,y2]_2, w = [y2,x1^2]_2",
                              "I_2 = (y, x^2, x*z) as an A-ideal; z^2 = y*w - x^2*v is redundant",
                              "the F_2 increment y2 is algebra-sufficient: the remaining increments lift to products"],
                       bounds={"oracle": 6, "search": 3})


def _v2v2_pair():
    return direct_sum_pair([basic_pair(2), basic_pair(2)], ["x", "y"])


def build_V2V2() -> ExampleData:
    pair = _v2v2_pair()
    R = pair.ring
    D = pair.down
    g = {v: R.parse(v) for v in R.variables}
    named = {"x": g["x0"], "y": g["y0"], "z": transvectant(D, g["x1"], g["y1"], 1),
             "t": transvectant(D, g["x2"], g["x2"], 2), "v": transvectant(D, g["y2"], g["y2"], 2),
             "w": transvectant(D, g["x2"], g["y2"], 2),
             "x1": g["x1"], "y1": g["y1"], "m1": R.parse("x0*y2 - y0*x2"),
             "x2": g["x2"], "y2": g["y2"], "m2": R.parse("x1*y2 - y1*x2")}
    named["a"] = 1 + named["w"]
    return ExampleData("V2V2", "V2+V2", pair, named,
                       [("x", 2), ("y", 2), ("z", 2), ("t", 0), ("v", 0), ("w", 0)], ["t", "v", "w"],
                       ["x", "y", "z"], {1: ["x1", "y1", "m1"], 2: ["x2", "y2", "m2"]}, "1 + w",
                       relations=["x^2*v + y^2*t + z^2 - 2*x*y*w = 0"],
                       notes=["fiber over t = v = w = -1 (all else 0) is two disjoint planes "
                              "(x0,y0,x1,y1,x2,y2) = (0,0,+-1,+-1,*,*)"],
                       bounds={"oracle": 4, "search": 3})


def _v2v2v2_pair():
    return direct_sum_pair([basic_pair(2), basic_pair(2), basic_pair(2)], ["x", "y", "z"])


def build_V2V2V2() -> ExampleData:
    pair = _v2v2v2_pair()
    R = pair.ring
    D = pair.down
    g = {v: R.parse(v) for v in R.variables}
    named: Dict[str, Polynomial] = {"x0": g["x0"], "y0": g["y0"], "z0": g["z0"]}
    letters = ["x", "y", "z"]
    first = ["x0", "y0", "z0"]
    for p, q in itertools.combinations(letters, 2):
        named[f"b{p}{q}"] = transvectant(D, g[p + "1"], g[q + "1"], 1)
        first.append(f"b{p}{q}")
    second = []
    for p, q in itertools.combinations_with_replacement(letters, 2):
        named[f"t{p}{q}"] = transvectant(D, g[p + "2"], g[q + "2"], 2)
        second.append(f"t{p}{q}")
    M = [[g["x2"], g["y2"], g["z2"]], [g["x1"], g["y1"], g["z1"]], [g["x0"], g["y0"], g["z0"]]]
    delta = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
             + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))
    named["delta"] = delta
    kernel = [(n, 2) for n in first] + [(n, 0) for n in second] + [("delta", 0)]
    U = pair.up
    inc1, inc2 = [], []
    for n in first:
        named[f"U({n})"] = U(named[n])
        named[f"U2({n})"] = U.power(named[n], 2)
        inc1.append(f"U({n})")
        inc2.append(f"U2({n})")
    named["a"] = 1 + delta
    return ExampleData("V2V2V2", "V2+V2+V2", pair, named, kernel, second + ["delta"], first,
                       {1: inc1, 2: inc2}, "1 + delta",
                       notes=["b.. are first transvectants of the x1,y1,z1; t.. second transvectants of the x2,y2,z2",
                              "F_n increments are computed as U^n of the I_1 = I_2 generators"],
                       bounds={"oracle": 3, "search": 3})


def build_V1_sum(m: int = 3) -> ExampleData:
    if m < 1:
        raise ValueError("m must be at least 1")
    names, weights = [], []
    for i in range(1, m + 1):
        names += [f"x{i}", f"y{i}"]
        weights += [1, -1]
    ring = RingSpec(tuple(names), tuple(weights))
    down = {f"y{i}": ring.parse(f"x{i}") for i in range(1, m + 1)}
    up = {f"x{i}": ring.parse(f"y{i}") for i in range(1, m + 1)}
    pair = verify_fundamental(Derivation.from_mapping(ring, down), Derivation.from_mapping(ring, up), weights)
    named: Dict[str, Polynomial] = {}
    kernel = []
    for i in range(1, m + 1):
        named[f"x{i}"] = ring.parse(f"x{i}")
        kernel.append((f"x{i}", 1))
    zs = []
    for i in range(1, m + 1):
        for j in range(1, i):
            named[f"z{i}{j}"] = ring.parse(f"x{i}*y{j} - x{j}*y{i}")
            kernel.append((f"z{i}{j}", 0))
            zs.append(f"z{i}{j}")
    for i in range(1, m + 1):
        named[f"y{i}"] = ring.parse(f"y{i}")
    total = ring.one()
    for z in zs:
        total = total + named[z]
    named["a"] = total
    return ExampleData(f"V1_sum({m})", f"{m} copies of V1", pair, named, kernel, zs,
                       [f"x{i}" for i in range(1, m + 1)], {1: [f"y{i}" for i in range(1, m + 1)]},
                       "1 + sum of z_ij",
                       relations=["x_i*z_kj - x_k*z_ij + x_j*z_ik = 0 for 1 <= j < k < i <= m",
                                  "x_i*phi1(y_j) - x_j*phi1(y_i) = a*z_ij"],
                       notes=["z_ij = x_i*y_j - x_j*y_i = [y_i, y_j]_1 = -[y_j, y_i]_1"],
                       bounds={"oracle": 3 if m <= 3 else 2, "search": 3})


# -- runners ----------------------------------------------------------------

def _apply_bounds(data: ExampleData, override: Optional[Mapping[str, int]]):
    if override:
        for k, v in override.items():
            if k == "*":
                for key in list(data.bounds):
                    data.bounds[key] = v
            else:
                data.bounds[k] = v


def _run_V1(b: Battery, data: ExampleData):
    pair = data.pair
    R = pair.ring
    _check_pair(b, pair)
    _check_invariants(b, data)
    _check_kernel_oracle(b, pair, [data.poly("x0")], data.bounds["oracle"])
    b.check("kernel.A0_trivial", "kernel/invariants",
            lambda: (linear_kernel_on_slice(pair.D, R, data.bounds["oracle"], 0) == [R.one()], "A_0 = k up to the bound"))
    x0 = data.poly("x0")
    _check_image_ideals(b, data, {n: [x0 ** n] for n in (1, 2, 3)})
    _check_increments(b, data, {1: [x0]})
    ctx = _check_extension(b, data, 2)
    if ctx is None:
        return
    b.check("extension.slice", "extension/kernel",
            lambda: (ctx.Dprime(ctx.u) == ctx.extended_ring.one(), "D'u = 1, so u is a slice"))

    def generates_B():
        gens = [ctx.specialize_u(g) for g in ctx.kernel_gens]
        return all(bounded_subalgebra_membership(v, gens, 1) for v in R.gens()), "u=0 images generate B"
    b.check("extension.K_is_B", "extension/kernel", generates_B)
    _check_freeness(b, ctx, data.bounds["search"])


def _run_V2(b: Battery, data: ExampleData):
    pair = data.pair
    R = pair.ring
    _check_pair(b, pair)
    _check_invariants(b, data)
    x0, T2 = data.poly("x0"), data.poly("T2")
    _check_kernel_oracle(b, pair, [x0, T2], data.bounds["oracle"])

    def a0():
        basis = linear_kernel_on_slice(pair.D, R, data.bounds["oracle"], 0)
        oracle = SubalgebraOracle([T2], data.bounds["oracle"])
        return all(oracle.query(p) for p in basis), f"weight-0 kernel slice lies in k[T2] ({len(basis)} elements)"
    b.check("kernel.A0", "kernel/invariants", a0)
    _check_image_ideals(b, data, {1: [x0], 2: [x0]})
    _check_increments(b, data, {1: [x0], 2: [x0]})
    ctx = _check_extension(b, data, 4)
    if ctx is None:
        return
    a = data.poly("a")

    def explicit():
        S = ctx.extended_ring
        sym = {"a": a.embed(S)}
        want = [S.parse(s, sym) for s in ("x0", "2*x0*x2 - x1^2", "a*x1 - x0*u", "a^2*x2 - a*x1*u + 1/2*x0*u^2")]
        return list(ctx.kernel_gens) == want, "generators x0, T2, a*x1 - x0*u, a^2*x2 - a*x1*u + 1/2*x0*u^2"
    b.check("extension.explicit_gens", "extension/kernel", explicit)
    _check_relation(b, "extension.relation", ctx, "2*x*w - v^2 - y*(1+y)^2", "xyvw", ctx.kernel_gens)
    R_gens = [x0, T2, a * data.poly("x1"), a ** 2 * data.poly("x2")]
    _check_relation(b, "subring.relation", None, "2*X*Z - Y^2 - A^2*T", ["X", "Y", "Z", "T", "A"],
                    [R_gens[0], R_gens[2], R_gens[3], T2, a], anchor="subring/relation")
    b.check("subring.pair_closure", "subring/pair",
            lambda: (subring_pair(pair, a, R_gens, 2).ok, "(a^-1 D, a U) preserves k[x0, T2, a x1, a^2 x2]"))
    _check_freeness(b, ctx, 1)
    _check_local_triviality(b, ctx, [x0], data.bounds["search"], expect="unknown")
    _hypersurface_point_checks(b, "quotient.singular_point", "2*x*w - v^2 - y*(1+y)^2", "xyvw", (0, -1, 0, 0), True)

    def fiber():
        P = RingSpec(("t",))
        t = P.var("t")
        fams = [{"x0": P.zero(), "x1": P.const(s), "x2": t} for s in (1, -1)]
        rep = fiber_check(R_gens, (0, -1, 0, 0), fams)
        return rep.ok, f"two lines contained, separated by {rep.separating}" if rep.ok else "; ".join(rep.violations)
    b.check("extension.fiber", "extension/fiber", fiber)
    b.check("extension.empty_fiber", "extension/surjectivity",
            lambda: empty_fiber_certificate(R_gens, (0, -1, 0, 1), 3))
    _check_kernel_generation(b, ctx, data.bounds["kernel"])


def _run_V1V1(b: Battery, data: ExampleData, m: int):
    pair = data.pair
    _check_pair(b, pair)
    _check_invariants(b, data)
    x0, y0, P = data.poly("x0"), data.poly("y0"), data.poly("P")
    _check_kernel_oracle(b, pair, [x0, y0, P], data.bounds["oracle"])
    _check_image_ideals(b, data, {1: [x0, y0]})
    _check_increments(b, data, {1: [x0, y0]})
    ctx = _check_extension(b, data, 5)
    if ctx is None:
        return
    rel = "x*w - y*v - z*(1+z)" if m == 1 else f"x*w - y*v - (1+z)^{m}*z"
    _check_relation(b, "extension.relation", ctx, rel, "xyzvw", ctx.kernel_gens)
    _check_local_triviality(b, ctx, [x0, y0], data.bounds["search"])
    _check_freeness(b, ctx, data.bounds["search"])
    if m == 1:
        b.check("quotient.smooth", "quotient/singularity", lambda: _smoothness_certificate(rel, "xyzvw", 2))
        _check_kernel_generation(b, ctx, data.bounds["kernel"])
    else:
        _hypersurface_point_checks(b, "quotient.singular_point", rel, "xyzvw", (0, 0, -1, 0, 0), True)


def _run_V3(b: Battery, data: ExampleData):
    pair = data.pair
    R = pair.ring
    _check_pair(b, pair)
    _check_invariants(b, data)
    H = data.poly("H")
    T1, T2, T3 = data.poly("T1"), data.poly("T2"), data.poly("T3")
    b.check("invariants.H_formula", "kernel/invariants",
            lambda: (H == R.parse("9*x0^2*x3^2 - 18*x0*x1*x2*x3 + 8*x0*x2^3 + 6*x1^3*x3 - 3*x1^2*x2^2"), str(H)))
    b.check("invariants.relation", "kernel/relation", lambda: (T1 ** 2 * H == T2 ** 3 + T3 ** 2, "T1^2 H = T2^3 + T3^2"))
    expected_forms = {"P1": "3*x0*x3 - x1*x2", "P2": "3*x1*x3 - 2*x2^2", "Q1": "3*x0*x1*x3 - 4*x0*x2^2 + x1^2*x2",
                      "Q2": "3*x1^2*x3 - 3*x0*x2*x3 - x1*x2^2", "Q3": "3*x1*x2*x3 - 3*x0*x3^2 - 4/3*x2^3"}
    b.check("invariants.cable_elements", "kernel/cables",
            lambda: (all(data.poly(k) == R.parse(v) for k, v in expected_forms.items()), "P1, P2, Q1, Q2, Q3 match"))

    def cables():
        chains = [(T1, ["x1", "x2", "x3"]), (T2, ["P1", "P2"]), (T3, ["Q1", "Q2", "Q3"])]
        for root, names in chains:
            cab = build_cable(pair.down, pair.up, root)
            if cab.length != len(names):
                return False, f"cable at {root} has length {cab.length}"
            for v, nm in zip(cab.vertices[1:], names):
                if not _proportional(v, data.poly(nm)):
                    return False, f"vertex {v} not proportional to {nm}"
        return True, "x3->x2->x1->T1, P2->P1->T2, Q3->Q2->Q1->T3 are reversed U-cables"
    b.check("invariants.cables", "kernel/cables", cables)
    _check_kernel_oracle(b, pair, [T1, T2, T3, H], data.bounds["oracle"])
    comp = _check_image_ideals(b, data, {1: [T1, T2, T3], 2: [T1, T2, T3], 3: [T1, T3, T2 ** 2]})

    def i3_two_sided():
        bound = data.bounds["ideal"]
        stated = [T1, T3]
        got = list(comp[3].generators) if 3 in comp else [T1, T3, T2 ** 2]
        for g in stated:
            if not bounded_ideal_membership(g, got, bound):
                return Unknown(bound=bound)
        for g in got:
            if not bounded_ideal_membership(g, stated, bound):
                return Unknown(bound=bound)
        return True, f"(T1, T3)B = I_3 B, both inclusions certified at bound {bound}"
    b.check("image_ideal.I3_two_sided", "structure/image-ideal", i3_two_sided)
    for n in (1, 2):
        def two_sided(n=n):
            bound = data.bounds["ideal"]
            stated = [T1, T2, T3]
            got = list(comp[n].generators) if n in comp else stated
            ok = all(bounded_ideal_membership(g, got, bound) for g in stated) and \
                all(bounded_ideal_membership(g, stated, bound) for g in got)
            return ok, f"I_{n} = (T1, T2, T3) in both directions at bound {bound}"
        b.check(f"image_ideal.I{n}_two_sided", "structure/image-ideal", two_sided)
    _check_increments(b, data, {1: [T1, T2, T3], 2: [T1, T2, T3], 3: [T1, T3]})
    ctx = _check_extension(b, data, 12)
    if ctx is None:
        return

    def closure():
        extra = phi_clear(ctx, pair.up.power(T2 ** 2, 3), 3)
        return bounded_subalgebra_membership(extra, list(ctx.kernel_gens), 2)
    b.check("extension.I3_extra_redundant", "extension/kernel", closure)
    _check_local_triviality(b, ctx, [T1, T2, T3], data.bounds["search"])
    _check_freeness(b, ctx, data.bounds["search"])


def _run_V1V2(b: Battery, data: ExampleData):
    pair = data.pair
    R = pair.ring
    _check_pair(b, pair)
    _check_invariants(b, data)
    x, y, z, v, w = (data.poly(k) for k in "xyzvw")
    b.check("invariants.w_formula", "kernel/invariants",
            lambda: (w == R.parse("2*x0^2*y2 - 2*x0*x1*y1 + y0*x1^2"), str(w)))
    b.check("invariants.relation", "kernel/relation", lambda: (x ** 2 * v - y * w + z ** 2 == 0, "x^2 v - y w + z^2 = 0"))
    b.check("invariants.Dl", "kernel/relation", lambda: (pair.D(data.poly("l")) == z, "D(l) = z"))
    _check_kernel_oracle(b, pair, [x, y, z, v, w], data.bounds["oracle"])

    def independence():
        N = data.bounds["oracle"]
        monos = [v ** i * w ** j for i in range(N + 1) for j in range(N + 1 - i)]
        return span_rank(monos) == len(monos), f"monomials in v, w of degree <= {N} are independent"
    b.check("kernel.A0_independent", "kernel/invariants", independence)
    comp = _check_image_ideals(b, data, {1: [x, y, z], 2: [y, x ** 2, x * z, z ** 2]})
    b.check("image_ideal.I2_minimal", "structure/image-ideal",
            lambda: (2 in comp and len(comp[2].generators) == 3, "minimal A-generators (y, x^2, x*z)"))
    _check_increments(b, data, {1: [x, y, z], 2: [y]})
    ctx = _check_extension(b, data, 9)
    if ctx is None:
        return

    def algebra_sufficient():
        extras = [x ** 2, x * z]
        for g in extras:
            h = pair.up.power(g, 2)
            cert = bounded_subalgebra_membership(phi_clear(ctx, h, 2), list(ctx.kernel_gens), 2)
            if not cert:
                return cert
        return True, "phi_2 of U^2(x^2) and U^2(x z) lie in the algebra of the 9 generators"
    b.check("extension.F2_sufficient", "extension/kernel", algebra_sufficient)
    _check_local_triviality(b, ctx, [x, y, z], data.bounds["search"])
    _check_freeness(b, ctx, data.bounds["search"])


def _run_V2V2(b: Battery, data: ExampleData):
    pair = data.pair
    R = pair.ring
    _check_pair(b, pair)
    _check_invariants(b, data)
    x, y, z, t, v, w = (data.poly(k) for k in "xyztvw")
    b.check("invariants.relation", "kernel/relation",
            lambda: (x ** 2 * v + y ** 2 * t + z ** 2 - 2 * x * y * w == 0, "x^2 v + y^2 t + z^2 - 2xyw = 0"))
    b.check("invariants.w_formula", "kernel/invariants",
            lambda: (w == R.parse("y0*x2 - x1*y1 + x0*y2"), str(w)))
    _check_kernel_oracle(b, pair, [x, y, z, t, v, w], data.bounds["oracle"])
    _check_image_ideals(b, data, {1: [x, y, z], 2: [x, y, z]})
    _check_increments(b, data, {1: [x, y, z], 2: [x, y, z]})
    ctx = _check_extension(b, data, 12)
    if ctx is None:
        return
    _check_local_triviality(b, ctx, [x, y, z], data.bounds["search"], expect="unknown")
    _check_freeness(b, ctx, data.bounds["search"])

    def fiber():
        a = data.poly("a")
        gens = [x, y, z, t, v, w] + [a ** n * data.poly(h) for n, hs in sorted(data.increments.items()) for h in hs]
        point = (0, 0, 0, -1, -1, -1) + (0,) * 6
        P = RingSpec(("s", "r"))
        fams = []
        for sign in (1, -1):
            fams.append({"x0": P.zero(), "y0": P.zero(), "x1": P.const(sign), "y1": P.const(sign),
                         "x2": P.var("s"), "y2": P.var("r")})
        rep = fiber_check(gens, point, fams)
        return rep.ok, f"two planes contained, separated by {rep.separating}" if rep.ok else "; ".join(rep.violations)
    b.check("extension.fiber", "extension/fiber", fiber)


def _run_V2V2V2(b: Battery, data: ExampleData):
    pair = data.pair
    _check_pair(b, pair)
    _check_invariants(b, data)
    delta = data.poly("delta")
    b.check("invariants.delta", "kernel/invariants",
            lambda: (not pair.D(delta) and not pair.U(delta), "D(delta) = U(delta) = 0"))
    first = [data.poly(n) for n in data.plinth]
    _check_kernel_oracle(b, pair, data.kernel_polys(), data.bounds["oracle"])
    _check_image_ideals(b, data, {1: first, 2: first})
    _check_increments(b, data, {1: first, 2: first})
    ctx = _check_extension(b, data, 25)
    if ctx is None:
        return
    b.check("extension.delta_in_I1B", "extension/local-triviality",
            lambda: bounded_ideal_membership(delta, first[:3], 2))
    _check_local_triviality(b, ctx, first, data.bounds["search"])


def _run_V1_sum(b: Battery, data: ExampleData, m: int):
    pair = data.pair
    _check_pair(b, pair)
    _check_invariants(b, data)
    X = {i: data.poly(f"x{i}") for i in range(1, m + 1)}
    Y = {i: data.poly(f"y{i}") for i in range(1, m + 1)}

    def z(i, j):
        return data.poly(f"z{i}{j}") if i > j else -data.poly(f"z{j}{i}")

    def plucker():
        count = 0
        for j, k, i in itertools.combinations(range(1, m + 1), 3):
            if X[i] * z(k, j) - X[k] * z(i, j) + X[j] * z(i, k):
                return False, f"fails for (i,j,k) = ({i},{j},{k})"
            count += 1
        return True, f"{count} relations x_i z_kj - x_k z_ij + x_j z_ik = 0"
    b.check("invariants.plucker", "kernel/relation", plucker)

    def brackets():
        for i in range(1, m + 1):
            for j in range(1, i):
                if transvectant(pair.down, Y[i], Y[j], 1) != z(i, j) or transvectant(pair.down, Y[j], Y[i], 1) != -z(i, j):
                    return False, f"bracket mismatch at ({i},{j})"
        return True, "[y_i, y_j]_1 = z_ij and [y_j, y_i]_1 = -z_ij"
    b.check("invariants.brackets", "kernel/transvectant", brackets)
    _check_kernel_oracle(b, pair, data.kernel_polys(), data.bounds["oracle"])
    _check_image_ideals(b, data, {1: list(X.values())})
    _check_increments(b, data, {1: list(X.values())})
    ctx = _check_extension(b, data, 2 * m + math.comb(m, 2))
    if ctx is None:
        return

    def extra_relations():
        a = ctx.lift(data.poly("a"))
        for i in range(1, m + 1):
            for j in range(1, i):
                lhs = ctx.lift(X[i]) * phi_clear(ctx, Y[j], 1) - ctx.lift(X[j]) * phi_clear(ctx, Y[i], 1)
                if lhs != a * ctx.lift(z(i, j)):
                    return False, f"fails at ({i},{j})"
        return True, "x_i phi1(y_j) - x_j phi1(y_i) = a z_ij"
    b.check("extension.relations", "extension/relation", extra_relations)
    _check_local_triviality(b, ctx, list(X.values()), data.bounds["search"])


# -- surfaces and the quasi-linear example -----------------------------------------

def surface_table(lam) -> Tuple[RingSpec, List[Polynomial]]:
    """Images h_0..h_4 of the V_4 variables in k[x0, x1, x2], equivariant for the V_2 pair."""
    R = basic_pair(2).ring
    h = [R.parse(s) for s in ("6*x0^2", "6*x0*x1", "2*x1^2 + 2*x0*x2", "2*x1*x2", "x2^2")]
    return R, h


def literal_surface_table(lam) -> Tuple[RingSpec, List[Polynomial]]:
    R = basic_pair(2).ring
    lam = Fraction(lam)
    h = [R.parse("x0^2"), R.parse("x0*x1"), R.parse("3*x0*x2") - R.const(lam), R.parse("x1*x2"), R.parse("x2^2")]
    return R, h


def surface_relations(lam) -> List[Tuple[str, Polynomial]]:
    """Relations of the Q_lambda ideal on the V_4 ring: T2-cable minus 2 lambda x0-cable, and T4 - 4 lambda^2."""
    from .determinantal import build_theta
    lam = Fraction(lam)
    th = build_theta(4)
    pair = th.pair
    x0 = pair.ring.parse("x0")
    out = []
    for j in range(5):
        out.append((f"T2^({j}) - 2*lam*U^{j}(x0)", th.vertex(1, j) - pair.up.power(x0, j).scale(2 * lam)))
    out.append(("T4 - 4*lam^2", th.root(2) - pair.ring.const(4 * lam * lam)))
    return out


def surface_reduce(lam, table, bound: int):
    """For each relation, a certificate that its image lies in (2x0x2 - x1^2 - lam), or Unknown."""
    R, h = table
    quadric = R.parse("2*x0*x2 - x1^2") - R.const(Fraction(lam))
    images = {f"x{i}": h[i] for i in range(5)}
    out = []
    for label, rel in surface_relations(lam):
        img = substitute(rel, images, R)
        out.append((label, bounded_ideal_membership(img, [quadric], bound)))
    return out


def run_surfaces(lam=1, bounds: Optional[Mapping[str, int]] = None) -> Report:
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    b = Battery(f"surfaces({lam})")
    base_bound = dict(bounds or {}).get("search", dict(bounds or {}).get("*", 2))
    V2 = basic_pair(2)
    R, h = surface_table(lam)
    quadric = R.parse("2*x0*x2 - x1^2") - R.const(lam)

    def relations():
        for bound in (base_bound, base_bound + 2):
            results = surface_reduce(lam, (R, h), bound)
            bad = [lab for lab, c in results if not c]
            if not bad:
                return True, f"all 6 relations reduce to 0 mod the quadric at bound {bound}"
        return False, "no certificate for " + ", ".join(bad)
    b.check("surfaces.Q_relations", "surfaces/quotient", relations)

    def equivariance():
        for i in range(5):
            down = h[i - 1] if i > 0 else R.zero()
            up = h[i + 1].scale((i + 1) * (4 - i)) if i < 4 else R.zero()
            if V2.D(h[i]) != down or V2.U(h[i]) != up:
                return False, f"h_{i} breaks equivariance"
        return True, "D h_i = h_(i-1), U h_i = (i+1)(4-i) h_(i+1)"
    b.check("surfaces.equivariance", "surfaces/quotient", equivariance)
    b.check("surfaces.delta_h1", "surfaces/quotient", lambda: (V2.D(h[1]) == h[0], "delta h_1 = h_0"))

    def gamma_mu():
        gamma, mu = 2 * lam, 4 * lam * lam
        from .determinantal import invariant_quadric
        T2h = substitute(invariant_quadric(basic_pair(4).ring, 1), {f"x{i}": h[i] for i in range(5)}, R)
        cert = bounded_ideal_membership(T2h.scale(gamma) - h[0].scale(mu), [quadric], base_bound + 2)
        return (gamma * gamma == mu and bool(cert)), f"gamma = {gamma}, mu = {mu}, gamma*T2(h) - mu*h_0 in the ideal"
    b.check("surfaces.gamma_mu", "surfaces/quotient", gamma_mu)

    def invariant_ring():
        basis = linear_kernel_on_slice(V2.D, R, 4)
        oracle = SubalgebraOracle([R.parse("x0"), R.parse("2*x0*x2 - x1^2")], 4)
        return all(oracle.query(p) for p in basis), "ker D on k[x0,x1,x2] is k[x0, f] up to degree 4"
    b.check("surfaces.kernel", "surfaces/S", invariant_ring)
    return b.report


def run_counterexample_quasilinear() -> Report:
    b = Battery("quasilinear")
    pair = _v1v1_pair()
    R = pair.ring
    P = R.parse("x0*y1 - y0*x1")
    delta = pair.down.times(P)
    x1, y1 = R.parse("x1"), R.parse("y1")

    def matrix():
        M = [[R.parse("-x0*y0"), R.parse("x0^2")], [R.parse("-y0^2"), R.parse("x0*y0")]]
        ok = delta(x1) == M[0][0] * x1 + M[0][1] * y1 and delta(y1) == M[1][0] * x1 + M[1][1] * y1
        return ok, "delta (x1, y1)^T = M (x1, y1)^T"
    b.check("quasilinear.matrix", "quasilinear/identity", matrix)
    b.check("quasilinear.deltaP", "quasilinear/identity", lambda: (delta(P) == 0, "delta P = P D P = 0"))
    b.check("quasilinear.images", "quasilinear/identity",
            lambda: (delta(y1) == P * R.parse("y0") and delta(x1) == P * R.parse("x0"), "delta y1 = P y0, delta x1 = P x0"))

    def nilpotent():
        degs = {v: deg_of(delta, R.var(v), 16) for v in R.variables}
        return all(d != float("-inf") for d in degs.values() if d is not None), f"deg_delta on generators {degs}"
    b.check("quasilinear.locally_nilpotent", "quasilinear/identity", nilpotent)

    def candidates():
        cands = {"U": pair.up, "P*U": pair.up.times(P), "2*U": pair.up.scale(2), "U/2": pair.up.scale(Fraction(1, 2)),
                 "-U": pair.up.scale(-1)}
        notes = []
        for label, up in cands.items():
            if infer_weights(delta, up) is not None:
                return False, f"{label} yields a diagonal bracket"
            if check_fundamental(delta, up, pair.weights).ok:
                return False, f"{label} passes the axioms"
            notes.append(label)
        return True, "no candidate partner works: " + ", ".join(notes)
    b.check("quasilinear.not_fundamental", "quasilinear/axioms", candidates)
    return b.report


# -- registry ---------------------------------------------------------------

CATALOG = ("V1", "V2_winkelmann", "V1V1_smooth", "V1V1_singular(m)", "V3_finston", "V1V2", "V2V2", "V2V2V2",
           "V1_sum(m)", "surfaces(lambda)", "quasilinear")

_DEFAULT_PARAMS = {"V1V1_singular": 2, "V1_sum": 3, "surfaces": 1}


def list_examples() -> List[str]:
    return list(CATALOG)


def _parse_name(name: str) -> Tuple[str, Optional[str]]:
    m = re.fullmatch(r"\s*([A-Za-z0-9_]+)\s*(?:\(\s*([^()]*?)\s*\))?\s*", name)
    if not m:
        raise UnknownExampleError(name)
    base, arg = m.groups()
    if arg in ("m", "lambda", "λ", ""):
        arg = None
    return base, arg


def _builder(name: str) -> Tuple[str, Callable[[], ExampleData], Optional[Callable[[Battery, ExampleData], None]]]:
    base, arg = _parse_name(name)
    if base == "V1":
        return base, build_V1, _run_V1
    if base == "V2_winkelmann":
        return base, build_V2, _run_V2
    if base == "V1V1_smooth":
        return base, lambda: build_V1V1(1), lambda b, d: _run_V1V1(b, d, 1)
    if base == "V1V1_singular":
        m = int(arg) if arg else _DEFAULT_PARAMS[base]
        if m < 2:
            raise ValueError("the singular family needs m >= 2")
        return base, lambda: build_V1V1(m), lambda b, d: _run_V1V1(b, d, m)
    if base == "V3_finston":
        return base, build_V3, _run_V3
    if base == "V1V2":
        return base, build_V1V2, _run_V1V2
    if base == "V2V2":
        return base, build_V2V2, _run_V2V2
    if base == "V2V2V2":
        return base, build_V2V2V2, _run_V2V2V2
    if base == "V1_sum":
        m = int(arg) if arg else _DEFAULT_PARAMS[base]
        return base, lambda: build_V1_sum(m), lambda b, d: _run_V1_sum(b, d, m)
    raise UnknownExampleError(name)


def resolve(name: str) -> str:
    """Canonical instance name, e.g. ``V1_sum(m)`` becomes ``V1_sum(3)``."""
    base, arg = _parse_name(name)
    if base in _DEFAULT_PARAMS:
        if arg is None:
            arg = str(_DEFAULT_PARAMS[base])
        if base == "surfaces":
            arg = str(Fraction(arg))
        return f"{base}({arg})"
    if base == "quasilinear" or base in ("V1", "V2_winkelmann", "V1V1_smooth", "V3_finston", "V1V2", "V2V2", "V2V2V2"):
        return base
    raise UnknownExampleError(name)


def describe(name: str) -> ExampleSpec:
    base, arg = _parse_name(name)
    if base == "surfaces":
        lam = Fraction(arg) if arg else Fraction(1)
        R, h = surface_table(lam)
        pair = basic_pair(2)
        named = {f"h{i}": h[i] for i in range(5)}
        named["f"] = R.parse("2*x0*x2 - x1^2")
        data = ExampleData(f"surfaces({lam})", "S_lambda = k[x0,x1,x2]/(f - lambda) and its Z/2 quotient", pair, named,
                           [("x0", 2), ("f", 0)], ["f"], ["x0"], {}, None,
                           relations=["(T2-cable - 2 lambda x0-cable, T4 - 4 lambda^2) vanish on h_0..h_4 modulo f - lambda"],
                           notes=["h_i are the equivariant images of the V_4 variables; delta h1 = h0"])
        named["x0"] = R.parse("x0")
        return _spec_from_data(data)
    if base == "quasilinear":
        pair = _v1v1_pair()
        R = pair.ring
        named = {"P": R.parse("x0*y1 - y0*x1")}
        data = ExampleData("quasilinear", "V1+V1 with delta = P*D", pair, named, [("P", 0)], [], [], {}, None,
                           relations=["delta(x1, y1)^T = [[-x0*y0, x0^2], [-y0^2, x0*y0]] (x1, y1)^T"],
                           notes=["delta is locally nilpotent but has no fundamental partner among the tested candidates"])
        return _spec_from_data(data)
    _, build, _ = _builder(name)
    return _spec_from_data(build())


def run_example(name: str, bounds: Optional[Mapping[str, int]] = None) -> Report:
    base, arg = _parse_name(name)
    if base == "surfaces":
        return run_surfaces(Fraction(arg) if arg else Fraction(1), bounds)
    if base == "quasilinear":
        return run_counterexample_quasilinear()
    canonical = resolve(name)
    _, build, runner = _builder(name)
    b = Battery(canonical)
    try:
        data = build()
    except Exception as exc:
        b.report.checks.append(CheckRecord("build", "catalog/build", "fail", _short(f"{type(exc).__name__}: {exc}"), 0.0))
        return b.report
    _apply_bounds(data, bounds)
    runner(b, data)
    return b.report


def expand_all() -> List[str]:
    return [resolve(n) for n in CATALOG]
