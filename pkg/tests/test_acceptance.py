"""Acceptance criteria 1-11.  Each test prints one PASS/FAIL line."""

import json
import math
import random
import shutil
import subprocess
import sys
import time

import pytest

from sl2kit.catalog import (build_V1, build_V1V1, build_V1V2, build_V1_sum, build_V2, build_V2V2, build_V2V2V2,
                            build_V3, _build_extension)
from sl2kit.derivation import deg_of
from sl2kit.determinantal import (build_theta, jacobian_origin_check, rnc_substitution_check,
                                  verify_theta_equality)
from sl2kit.extension import (extend_by_invariant, fiber_check, freeness_certificate, local_triviality_certificate,
                              phi_clear, verify_kernel_relation)
from sl2kit.polyring import (RingSpec, SubalgebraOracle, Unknown, bounded_ideal_membership,
                             linear_kernel_on_slice)
from sl2kit.slpair import basic_pair, direct_sum_pair, verify_fundamental
from sl2kit.structure import image_ideal_generators, verify_decompositions, verify_updown


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, f"criterion {n}: {detail}"
    return emit


def relation_holds(ctx, relation, symbols, values):
    rel = RingSpec(tuple(symbols)).parse(relation)
    return verify_kernel_relation(ctx, rel, dict(zip(symbols, values))).ok


def test_criterion_01_fundamental_pairs(report):
    t0 = time.perf_counter()
    checked = []
    for n in range(1, 9):
        pair = basic_pair(n)
        verify_fundamental(pair.down, pair.up, pair.weights)
        checked.append(f"V{n}")
    sums = [(1, 1), (1, 2), (2, 2), (1, 1, 1), (2, 2, 2), (1, 3), (3, 4), (1, 6), (2, 5), (1, 1, 1, 1)]
    for parts in sums:
        assert sum(p + 1 for p in parts) <= 9
        pair = direct_sum_pair([basic_pair(p) for p in parts], [chr(ord("a") + i) for i in range(len(parts))])
        assert pair.verified
        checked.append("+".join(f"V{p}" for p in parts))
    dt = time.perf_counter() - t0
    report(1, dt < 10, f"{len(checked)} pairs verified in {dt:.2f}s")


def test_criterion_02_updown(report):
    rng = random.Random(2)
    done = 0
    bad = []
    for k in range(50):
        d = (2, 3, 4)[k % 3]
        pair = basic_pair(d)
        n = rng.randint(1, 3)
        while True:
            t = rng.randint(1, 3)
            w = rng.choice(range(-d * t, d * t + 1, 2))
            basis = [p for p in linear_kernel_on_slice(pair.D, pair.ring, t, w)]
            if basis:
                break
        f = pair.ring.zero()
        while not f:
            for p in basis:
                f = f + p.scale(rng.randint(-3, 3))
        prod = math.prod(j * w - j * (j - 1) for j in range(1, n + 1))
        lhs = pair.down.power(pair.up.power(f, n), n)
        if lhs != f.scale(prod):
            bad.append((d, n, str(f)))
        verify_updown(pair, f, n)
        done += 1
    report(2, not bad and done == 50, f"{done} random kernel elements, {len(bad)} mismatches")


def test_criterion_03_theta(report):
    t0 = time.perf_counter()
    problems = []
    for d in range(2, 9):
        theta = build_theta(d)
        rep = verify_theta_equality(theta)
        if not (rep.rank_minors == rep.rank_vertices == math.comb(d, 2) and rep.equal_span):
            problems.append(f"span d={d}")
        if d >= 3 and not rnc_substitution_check(theta).ok:
            problems.append(f"rnc d={d}")
        if not jacobian_origin_check(theta).ok:
            problems.append(f"jacobian d={d}")
    dt = time.perf_counter() - t0
    report(3, not problems and dt < 30, f"d=2..8 in {dt:.2f}s {problems or ''}")


def test_criterion_04_V3(report):
    t0 = time.perf_counter()
    data = build_V3()
    R = data.pair.ring
    T1, T2, T3, H = (data.named[k] for k in ("T1", "T2", "T3", "H"))
    ok_h = H == R.parse("9*x0^2*x3^2 - 18*x0*x1*x2*x3 + 8*x0*x2^3 + 6*x1^3*x3 - 3*x1^2*x2^2")
    ok_rel = T1 ** 2 * H - T2 ** 3 - T3 ** 2 == R.zero()
    kgens = list(zip(data.kernel_polys(), (3, 2, 3, 0)))
    want = {1: [T1, T2, T3], 2: [T1, T2, T3], 3: [T1, T3]}
    ok_ideals = True
    for n in (1, 2, 3):
        got = list(image_ideal_generators(data.pair, kgens, n).generators)
        ok_ideals &= all(bounded_ideal_membership(g, got, 6) for g in want[n])
        ok_ideals &= all(bounded_ideal_membership(g, want[n], 6) for g in got)
    ctx = _build_extension(data)
    ok_count = len(ctx.kernel_gens) == 12 and not any(ctx.Dprime(g) for g in ctx.kernel_gens)
    cert = None
    for k in range(5):
        cert = local_triviality_certificate(ctx, [T1, T2, T3], k)
        if cert:
            break
    ok_lt = bool(cert) and cert.verify()
    dt = time.perf_counter() - t0
    ok = ok_h and ok_rel and ok_ideals and ok_count and ok_lt and dt < 60
    report(4, ok, f"H={ok_h} relation={ok_rel} ideals={ok_ideals} 12 gens={ok_count} "
                  f"local triviality={ok_lt} ({dt:.2f}s)")


def test_criterion_05_winkelmann(report):
    data = build_V2()
    ctx = _build_extension(data)
    S = ctx.extended_ring
    a = data.named["a"].embed(S)
    want = [S.parse(s, {"a": a}) for s in ("x0", "2*x0*x2 - x1^2", "a*x1 - x0*u", "a^2*x2 - a*x1*u + 1/2*x0*u^2")]
    ok_gens = list(ctx.kernel_gens) == want and not any(ctx.Dprime(g) for g in want)
    ok_rel = relation_holds(ctx, "2*x*w - v^2 - y*(1+y)^2", "xyvw", want)
    free = freeness_certificate(ctx, 1)
    ok_free = bool(free) and free.verify()
    results = [local_triviality_certificate(ctx, [data.named["x0"]], k) for k in range(5)]
    ok_unknown = all(isinstance(r, Unknown) for r in results)
    x0, T2, x1, x2 = (data.named[k] for k in ("x0", "T2", "x1", "x2"))
    A = data.named["a"]
    P = RingSpec(("t",))
    fams = [{"x0": P.zero(), "x1": P.const(s), "x2": P.var("t")} for s in (1, -1)]
    fib = fiber_check([x0, T2, A * x1, A ** 2 * x2], (0, -1, 0, 0), fams)
    ok = ok_gens and ok_rel and ok_free and ok_unknown and fib.ok
    report(5, ok, f"generators={ok_gens} relation={ok_rel} freeness@1={ok_free} "
                  f"local triviality unknown={ok_unknown} two disjoint lines={fib.ok}")


def test_criterion_06_V1V1(report):
    parts = []
    ok = True
    for m, rel in ((1, "x*w - y*v - z*(1+z)"), (2, "x*w - y*v - (1+z)^2*z"), (3, "x*w - y*v - (1+z)^3*z")):
        data = build_V1V1(m)
        ctx = _build_extension(data)
        r = relation_holds(ctx, rel, "xyzvw", ctx.kernel_gens)
        cert = None
        for k in range(2 * m + 1):
            cert = local_triviality_certificate(ctx, [data.named["x0"], data.named["y0"]], k)
            if cert:
                break
        lt = bool(cert) and cert.verify()
        ok &= r and lt
        parts.append(f"m={m}: relation={r} certificate={lt}")
    report(6, ok, "; ".join(parts))


def _v2v2_planes():
    P = RingSpec(("s", "r"))
    return [{"x0": P.zero(), "y0": P.zero(), "x1": P.const(e), "y1": P.const(e), "x2": P.var("s"),
             "y2": P.var("r")} for e in (1, -1)]


def test_criterion_07_counts(report):
    d22 = build_V2V2()
    ctx22 = _build_extension(d22)
    d222 = build_V2V2V2()
    ctx222 = _build_extension(d222)
    n22, n222 = len(ctx22.kernel_gens), len(ctx222.kernel_gens)
    killed = not any(ctx22.Dprime(g) for g in ctx22.kernel_gens) and \
        not any(ctx222.Dprime(g) for g in ctx222.kernel_gens)
    x, y, z, t, v, w = (d22.named[k] for k in "xyztvw")
    ok_rel = x ** 2 * v + y ** 2 * t + z ** 2 - x * y * w * 2 == d22.pair.ring.zero()
    A = d22.named["a"]
    gens = [d22.named[k] for k in "xyztvw"] + [A ** n * d22.named[h] for n, hs in sorted(d22.increments.items())
                                                for h in hs]
    fib = fiber_check(gens, (0, 0, 0, -1, -1, -1) + (0,) * 6, _v2v2_planes())
    ok = n22 == 12 and n222 == 25 and killed and ok_rel and fib.ok
    report(7, ok, f"V2+V2: {n22} generators, V2+V2+V2: {n222} generators, relation={ok_rel}, "
                  f"two disjoint planes={fib.ok}")


def test_criterion_08_oracle(report):
    t0 = time.perf_counter()
    v2, v11, v12 = build_V2(), build_V1V1(1), build_V1V2()
    cases = [("V2", v2.pair, [v2.named[k] for k in ("x0", "T2")]),
             ("V1+V1", v11.pair, [v11.named[k] for k in ("x0", "y0", "P")]),
             ("V1+V2", v12.pair, [v12.named[k] for k in "xyzvw"])]
    parts = []
    ok = True
    for name, pair, gens in cases:
        basis = linear_kernel_on_slice(pair.D, pair.ring, 6)
        oracle = SubalgebraOracle(gens, 6)
        hits = sum(1 for p in basis if oracle.query(p))
        in_kernel = not any(pair.D(g) for g in gens)
        ok &= hits == len(basis) and in_kernel
        parts.append(f"{name} {hits}/{len(basis)}")
    dt = time.perf_counter() - t0
    report(8, ok and dt < 120, ", ".join(parts) + f" ({dt:.2f}s)")


def test_criterion_09_decompositions(report):
    parts = []
    ok = True
    for name, pair in (("V2", basic_pair(2)), ("V3", basic_pair(3)), ("V1+V1", build_V1V1(1).pair)):
        rep = verify_decompositions(pair, 4)
        kinds = {c.claim for c in rep.claims}
        need = {"B=Omega+DB", "D injective", "D surjective", "DB_-2=UB_2"}
        ok &= rep.ok and need <= kinds
        parts.append(f"{name} {len(rep.claims)} claims{'' if rep.ok else ' FAILED'}")
    report(9, ok, ", ".join(parts))


def _random_poly(rng, ring, terms=3, degree=2):
    p = ring.zero()
    while not p:
        for _ in range(terms):
            e = [0] * ring.nvars
            for _ in range(rng.randint(0, degree)):
                e[rng.randrange(ring.nvars)] += 1
            p = p + ring.monomial(tuple(e)).scale(rng.randint(-3, 3))
    return p


PHI_EXAMPLES = [build_V1, build_V2, lambda: build_V1V1(1), lambda: build_V1V1(2), build_V3, build_V1V2,
                build_V2V2, build_V2V2V2, lambda: build_V1_sum(3)]


def test_criterion_10_phi_laws(report):
    rng = random.Random(10)
    total = 0
    bad = []
    for build in PHI_EXAMPLES:
        data = build()
        ctx = extend_by_invariant(data.pair, data.named["a"])
        R, a = data.pair.ring, data.named["a"]
        ui = ctx.extended_ring.index("u")
        for _ in range(30):
            f, g = _random_poly(rng, R), _random_poly(rng, R)
            m, n = deg_of(data.pair.down, f), deg_of(data.pair.down, g)
            pf, pg = phi_clear(ctx, f, m), phi_clear(ctx, g, n)
            if pf * pg != phi_clear(ctx, f * g, m + n):
                bad.append((data.name, "multiplicative"))
            if max(e[ui] for e, _ in pf.items()) != m:
                bad.append((data.name, "u-degree"))
            extra = rng.randint(0, 2)
            if ctx.specialize_u(phi_clear(ctx, f, m + extra)) != a ** (m + extra) * f:
                bad.append((data.name, "epsilon"))
            total += 1
    report(10, not bad, f"{total} instances over {len(PHI_EXAMPLES)} examples, {len(bad)} failures")


def test_criterion_11_cli(report):
    cmd = [shutil.which("sl2kit")] if shutil.which("sl2kit") else [sys.executable, "-m", "sl2kit.cli"]
    t0 = time.perf_counter()
    proc = subprocess.run(cmd + ["examples", "run", "all", "--json"],
                          capture_output=True, text=True, timeout=300)
    dt = time.perf_counter() - t0
    reports = json.loads(proc.stdout)
    statuses = [c["status"] for r in reports for c in r["checks"]]
    bad = sum(1 for s in statuses if s in ("fail", "unknown-unexpected"))
    ok = proc.returncode == 0 and bad == 0 and dt < 300
    report(11, ok, f"{len(reports)} examples, {len(statuses)} checks, {bad} problems, exit {proc.returncode}, "
                   f"{dt:.1f}s")
