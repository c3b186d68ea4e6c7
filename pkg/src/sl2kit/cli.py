"""Command line entry point: ``sl2kit``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import catalog
from .determinantal import (build_theta, jacobian_origin_check, quartic_syzygy, rnc_substitution_check,
                            theta_graded_piece, three_column_syzygy, verify_theta_equality)
from .extension import (ExtensionError, extend_by_invariant, extension_kernel_gens, freeness_certificate,
                        local_triviality_certificate)
from .slpair import check_fundamental, parse_pair_text, verify_fundamental
from .structure import (degree_module_generators, image_ideal_generators, kernel_algebra_generators,
                        verify_decompositions)

EXIT_OK, EXIT_CHECKS_FAILED, EXIT_USAGE = 0, 1, 2


def _emit(payload, as_json: bool, text: str):
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _run_one(args: Tuple[str, Optional[Dict[str, int]]]) -> dict:
    name, bounds = args
    return catalog.run_example(name, bounds).to_json()


# -- examples -------------------------------------------------------------------

def cmd_examples(ns) -> int:
    if ns.action == "list":
        for name in catalog.list_examples():
            print(name)
        return EXIT_OK
    if ns.action == "describe":
        if not ns.name:
            print("examples describe needs a name", file=sys.stderr)
            return EXIT_USAGE
        try:
            spec = catalog.describe(ns.name)
        except (catalog.UnknownExampleError, ValueError) as exc:
            print(f"unknown example: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(spec.render())
        return EXIT_OK
    # run
    if not ns.name:
        print("examples run needs a name or 'all'", file=sys.stderr)
        return EXIT_USAGE
    try:
        names = catalog.expand_all() if ns.name == "all" else [catalog.resolve(ns.name)]
    except (catalog.UnknownExampleError, ValueError) as exc:
        print(f"unknown example: {exc}", file=sys.stderr)
        return EXIT_USAGE
    bounds = {"*": ns.bound} if ns.bound is not None else None
    start = time.perf_counter()
    jobs = [(n, bounds) for n in names]
    if len(jobs) > 1 and ns.jobs != 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    elapsed = time.perf_counter() - start
    bad = sum(1 for r in reports for c in r["checks"] if c["status"] in ("fail", "unknown-unexpected"))
    if ns.json:
        print(json.dumps(reports[0] if len(reports) == 1 else reports, indent=2))
    else:
        for r in reports:
            rep = catalog.Report(r["example"], [catalog.CheckRecord(**c) for c in r["checks"]])
            print(rep.to_text())
        total = sum(len(r["checks"]) for r in reports)
        print(f"{len(reports)} example(s), {total} checks, {bad} problem(s), {elapsed:.1f}s")
    return EXIT_OK if bad == 0 else EXIT_CHECKS_FAILED


# -- verify-pair / structure ------------------------------------------------------

def _load_pair_file(path: str):
    text = Path(path).read_text()
    return parse_pair_text(text)


def cmd_verify_pair(ns) -> int:
    try:
        D, U, weights = _load_pair_file(ns.file)
    except (OSError, ValueError) as exc:
        print(f"cannot read pair file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = check_fundamental(D, U, weights)
    payload = {"ok": rep.ok, "failures": rep.failures, "weights": list(weights),
               "deg_D": rep.d_degrees, "deg_U": rep.u_degrees}
    lines = [f"fundamental pair: {'yes' if rep.ok else 'no'}", f"weights: {list(weights)}",
             f"deg_D on variables: {rep.d_degrees}", f"deg_U on variables: {rep.u_degrees}"]
    lines += [f"  failure: {f}" for f in rep.failures]
    _emit(payload, ns.json, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_CHECKS_FAILED


def cmd_structure(ns) -> int:
    try:
        D, U, weights = _load_pair_file(ns.file)
        pair = verify_fundamental(D, U, weights)
    except (OSError, ValueError) as exc:
        print(f"not a usable fundamental pair: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not pair.is_linear():
        print("structure needs a pair that preserves total degree", file=sys.stderr)
        return EXIT_USAGE
    kg = kernel_algebra_generators(pair, ns.bound)
    names = [f"g{i}" for i in range(len(kg))]
    payload = {"kernel_generators": [{"name": nm, "poly": str(g), "weight": w} for nm, (g, w) in zip(names, kg)],
               "image_ideals": [], "degree_modules": []}
    lines = [f"kernel generators up to degree {ns.bound}:"]
    lines += [f"  {nm} = {g}   (weight {w})" for nm, (g, w) in zip(names, kg)]
    if any(w > 0 for _, w in kg):
        for n in range(1, ns.n + 1):
            pres = image_ideal_generators(pair, kg, n, names)
            mod = degree_module_generators(pair, list(pres.generators), n)
            payload["image_ideals"].append({"n": n, "generators": list(pres.labels)})
            payload["degree_modules"].append({"n": n, "increments": [str(h) for h in mod.generators]})
            lines.append(f"I_{n} = (" + ", ".join(pres.labels) + ")")
            lines.append(f"  F_{n} increment: " + ", ".join(str(h) for h in mod.generators))
    else:
        lines.append("no positive-weight kernel generator: I_1 = 0")
    dec = verify_decompositions(pair, min(ns.bound, 4))
    payload["decompositions_ok"] = dec.ok
    payload["decomposition_failures"] = [f"{c.claim} at weight {c.weight}, degree {c.slice_bound}" for c in dec.failures()]
    lines.append(f"decomposition checks up to degree {min(ns.bound, 4)}: {'pass' if dec.ok else 'FAIL'}")
    _emit(payload, ns.json, "\n".join(lines))
    return EXIT_OK if dec.ok else EXIT_CHECKS_FAILED


# -- extend -----------------------------------------------------------------

_MODULE_EXAMPLES = {"V1": "V1", "V2": "V2_winkelmann", "V3": "V3_finston", "V1+V1": "V1V1_smooth",
                    "V1+V2": "V1V2", "V2+V2": "V2V2", "V2+V2+V2": "V2V2V2"}


def _module_data(module: str):
    key = module.replace(" ", "").replace("(+)", "+")
    if key not in _MODULE_EXAMPLES:
        raise ValueError(f"unsupported module {module!r}; choose from {', '.join(_MODULE_EXAMPLES)}")
    name = _MODULE_EXAMPLES[key]
    _, build, _ = catalog._builder(name)
    return build()


def cmd_extend(ns) -> int:
    try:
        data = _module_data(ns.module)
        base = data.pair.ring
        a = base.parse(ns.shift, {k: v for k, v in data.named.items() if k != "a"})
        ctx = extend_by_invariant(data.pair, a)
        increments = [(n, [data.named[h] for h in hs]) for n, hs in sorted(data.increments.items())]
        labels = [n for n, _ in data.kernel_gens] + [f"phi{n}({h})" for n, hs in sorted(data.increments.items()) for h in hs]
        ctx = extension_kernel_gens(ctx, data.kernel_polys(), increments, labels)
    except (ValueError, ExtensionError) as exc:
        print(f"cannot extend: {exc}", file=sys.stderr)
        return EXIT_USAGE
    killed = all(not ctx.Dprime(g) for g in ctx.kernel_gens)
    levels = [0] * len(data.kernel_gens) + [n for n, hs in sorted(data.increments.items()) for _ in hs]
    bases = data.kernel_polys() + [data.named[h] for _, hs in sorted(data.increments.items()) for h in hs]
    special = all(ctx.specialize_u(g) == ctx.shift ** n * f for g, n, f in zip(ctx.kernel_gens, levels, bases))
    plinth = [data.named[p] for p in data.plinth]
    free = lt = None
    for k in range(ns.bound + 1):
        free = free or freeness_certificate(ctx, k) or None
        lt = lt or local_triviality_certificate(ctx, plinth, k) or None
    payload = {
        "module": ns.module, "shift": str(a),
        "generators": [{"label": lab, "poly": str(g)} for lab, g in zip(ctx.kernel_labels, ctx.kernel_gens)],
        "checks": {"killed_by_Dprime": killed, "u0_specialization": special},
        "freeness_certificate": free.describe() if free else None,
        "local_triviality_certificate": lt.describe() if lt else None,
        "bound": ns.bound,
    }
    lines = [f"extension of {ns.module} by a = {a}: {len(ctx.kernel_gens)} kernel generators"]
    lines += [f"  {lab} = {g}" for lab, g in zip(ctx.kernel_labels, ctx.kernel_gens)]
    lines.append(f"all killed by D': {killed}")
    lines.append(f"u=0 specialization gives a^n f: {special}")
    lines.append("freeness: " + (free.describe() if free else f"unknown up to bound {ns.bound}"))
    lines.append("local triviality: " + (lt.describe() if lt else f"unknown up to bound {ns.bound}"))
    _emit(payload, ns.json, "\n".join(lines))
    return EXIT_OK if killed and special else EXIT_CHECKS_FAILED


# -- theta ------------------------------------------------------------------

def theta_battery(d: int) -> dict:
    theta = build_theta(d)
    eq = verify_theta_equality(theta)
    out = {"d": d, "dimension": eq.expected, "rank_minors": eq.rank_minors, "rank_vertices": eq.rank_vertices,
           "equal_span": eq.equal_span}
    out["cable_lengths"] = [c.length for c in theta.cables]
    out["cable_scalars_ok"] = all(
        list(c.scalars) == [j * (2 * d - 4 * i - j + 1) for j in range(1, c.length + 1)]
        for i, c in enumerate(theta.cables, start=1))
    if d >= 3:
        out["rnc_normalized_ok"] = rnc_substitution_check(theta, True).ok
        out["rnc_literal_ok"] = rnc_substitution_check(theta, False).ok
    out["jacobian_zero"] = jacobian_origin_check(theta).ok
    if d % 2 == 0:
        piece = theta_graded_piece(theta, 0)
        out["weight0_dimension"] = piece.dimension
        out["weight0_ok"] = piece.ok
    if d >= 3:
        triples = [(a, b, c) for a in range(1, d + 1) for b in range(a + 1, d + 1) for c in range(b + 1, d + 1)]
        out["three_column_syzygies"] = len(triples)
        out["three_column_ok"] = all(three_column_syzygy(theta, *t, row=r).ok for t in triples for r in (1, 2))
    if d == 4:
        out["quartic_syzygy_ok"] = quartic_syzygy(theta).ok
    flags = [v for k, v in out.items() if k.endswith("_ok") and k != "rnc_literal_ok"]
    out["ok"] = eq.ok and out["jacobian_zero"] and all(flags)
    return out


def cmd_theta(ns) -> int:
    if ns.d < 2:
        print("d must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    res = theta_battery(ns.d)
    lines = [f"{k}: {v}" for k, v in res.items()]
    _emit(res, ns.json, "\n".join(lines))
    return EXIT_OK if res["ok"] else EXIT_CHECKS_FAILED


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sl2kit", description="Exact checks for fundamental pairs of derivations.")
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("examples", help="list, describe or run catalog examples")
    ex.add_argument("action", choices=["run", "list", "describe"])
    ex.add_argument("name", nargs="?", help="example name, or 'all' with run")
    ex.add_argument("--json", action="store_true")
    ex.add_argument("--bound", type=int, default=None, help="override every degree bound of the example")
    ex.add_argument("--jobs", type=int, default=None, help="worker processes (1 runs serially)")
    ex.set_defaults(func=cmd_examples)

    vp = sub.add_parser("verify-pair", help="check a pair description file")
    vp.add_argument("file")
    vp.add_argument("--json", action="store_true")
    vp.set_defaults(func=cmd_verify_pair)

    st = sub.add_parser("structure", help="kernel generators, image ideals and degree modules of a pair file")
    st.add_argument("file")
    st.add_argument("--n", type=int, default=2)
    st.add_argument("--bound", type=int, default=4)
    st.add_argument("--json", action="store_true")
    st.set_defaults(func=cmd_structure)

    xt = sub.add_parser("extend", help="extend a module's pair by an invariant shift")
    xt.add_argument("--module", required=True)
    xt.add_argument("--shift", required=True)
    xt.add_argument("--bound", type=int, default=4)
    xt.add_argument("--json", action="store_true")
    xt.set_defaults(func=cmd_extend)

    th = sub.add_parser("theta", help="quadric battery for the rational normal cone of degree d")
    th.add_argument("--d", type=int, required=True)
    th.add_argument("--json", action="store_true")
    th.set_defaults(func=cmd_theta)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
