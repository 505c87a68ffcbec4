"""Command-line front end.

Every subcommand produces a report {verdict, witnesses, counts, seed,
runtime_ms, ...}.  Exit codes: 0 verdict produced, 1 negative verdict
(fail / differ / false / not an identity), 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import checker, experiments, fleet
from .checker import report, serialize_assignment
from .freepoly import (PolySyntaxError, format_poly, is_q_stable, parse_poly, project, psi_quotient,
                       regev, regev_form)
from .galg import GradedAlgebra, center, exponent, is_g_division, is_g_simple, trace_radical
from .groups import FiniteGroup, group_build, quotient


class UsageError(ValueError):
    code = "UsageError"


def _resolve_file(ref: str):
    """Parsed JSON for a path or a bundled data file name, else None."""
    if os.path.isfile(ref):
        with open(ref, encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return experiments.load_data(ref)
    except (FileNotFoundError, OSError, ValueError):
        return None


def load_group(ref) -> FiniteGroup:
    if ref is None:
        raise UsageError("--group is required")
    doc = _resolve_file(ref)
    return group_build(doc if doc is not None else ref)


def load_algebra(ref) -> GradedAlgebra:
    if ref is None:
        raise UsageError("--algebra is required")
    if ref in fleet.FLEET:
        return fleet.get(ref)
    doc = _resolve_file(ref)
    if doc is None:
        raise UsageError(f"{ref!r} is neither a file nor a fleet algebra ({', '.join(fleet.FLEET)})")
    return GradedAlgebra.from_json(doc)


def load_poly(ref, G, m):
    if ref is None:
        raise UsageError("--poly is required")
    if os.path.isfile(ref):
        try:
            parse_poly(ref, G, m)
        except Exception:
            pass
        else:
            raise UsageError(f"{ref!r} is both a file and an inline polynomial")
        with open(ref, encoding="utf-8") as fh:
            ref = fh.read().strip()
    return parse_poly(ref, G, m)


def _kernel(G, names):
    if not names:
        raise UsageError("--kernel is required")
    gens = [G.element(x) for x in names.split(",")]
    return quotient(G, G.generated(gens))


def _degrees(G, text):
    if not text:
        raise UsageError("--degrees is required")
    return tuple(G.element(x) for x in text.split(","))


# -- subcommands: each returns (report, exit code, text) ---------------------------

def cmd_group(a):
    G = load_group(a.group)
    info = {"name": G.name, "order": G.order, "elements": list(G.elements), "exponent": G.exponent,
            "abelian": G.is_abelian}
    text = f"{G.name}: order {G.order}, exponent {G.exponent}, elements {' '.join(G.elements)}"
    return {"verdict": "ok", "group": info}, 0, text


def cmd_algebra(a):
    A = load_algebra(a.algebra)
    G = A.group
    Z, Ze = center(A)
    info = {"name": A.name, "dim": A.dim, "m": A.m,
            "components": {G.elements[g]: len(idx) for g, idx in sorted(A.components.items())},
            "center_dim": len(Z), "center_e_dim": len(Ze), "radical_dim": len(trace_radical(A)),
            "g_simple": is_g_simple(A).verdict, "g_division": is_g_division(A, seed=a.seed).is_division}
    if info["radical_dim"] == 0:
        try:
            info["exponent"] = exponent(A)
        except Exception as exc:  # not split over Q(zeta_m)
            info["exponent"] = None
            info["exponent_error"] = getattr(exc, "code", type(exc).__name__)
    text = "\n".join(f"{k}: {v}" for k, v in info.items())
    return {"verdict": "ok", "algebra": info}, 0, text


def cmd_poly(a):
    G = load_group(a.group) if a.group else load_algebra(a.algebra).group
    f = load_poly(a.poly, G, a.m)
    return {"verdict": "ok", "poly": format_poly(f), "terms": len(f)}, 0, format_poly(f)


def _with_algebra(a):
    A = load_algebra(a.algebra)
    return A, load_poly(a.poly, A.group, A.m)


def cmd_check_identity(a):
    A, f = _with_algebra(a)
    v = checker.is_identity(f, A, seed=a.seed)
    wit = [] if v.witness is None else [serialize_assignment(v.witness, A)]
    verdict = "identity" if v.holds else "not_identity"
    rep = {"verdict": verdict, "witnesses": wit, "counts": {"tuples": v.checked}, "method": v.method}
    if v.value is not None:
        rep["value"] = v.value.to_literals()
    return rep, 0 if v.holds else 1, verdict


def cmd_check_central(a):
    A, f = _with_algebra(a)
    cv = checker.is_central(f, A)
    wit = [] if cv.witness is None else [serialize_assignment(cv.witness, A)]
    rep = {"verdict": cv.kind, "witnesses": wit, "counts": {"tuples": cv.checked}}
    if cv.kind == "central":
        rep["rho"] = checker.rho_dichotomy(f, A).kind
    if cv.basis is not None:
        rep["noncommuting_basis"] = cv.basis
    return rep, 1 if cv.kind == "neither" else 0, cv.kind


def cmd_regev(a):
    if a.n < 1:
        raise UsageError("--n must be positive")
    if a.n <= 2:
        text = format_poly(regev(a.n, a.m))
        rep = {"verdict": "ok", "poly": text, "terms": len(regev(a.n, a.m))}
    else:
        f = regev_form(a.n, a.m)
        text = str(f)
        rep = {"verdict": "ok", "poly": text, "terms": f.term_count_bound(), "lazy": True}
    return rep, 0, text


def cmd_project(a):
    G = load_group(a.group)
    f = load_poly(a.poly, G, a.m)
    r = project(f, G.element(a.g))
    return {"verdict": "ok", "poly": format_poly(r)}, 0, format_poly(r)


def cmd_quotient_map(a):
    G = load_group(a.group)
    q = _kernel(G, a.kernel)
    mapping = {G.elements[g]: q.target.elements[q(g)] for g in range(G.order)}
    text = "\n".join(f"{k} -> {v}" for k, v in mapping.items())
    return {"verdict": "ok", "target": q.target.to_json(), "map": mapping}, 0, text


def cmd_q_stable(a):
    G = load_group(a.group)
    q = _kernel(G, a.kernel)
    f = load_poly(a.poly, G, a.m)
    ok = is_q_stable(f, q, all_degrees=a.all_degrees)
    rep = {"verdict": "true" if ok else "false", "psi": format_poly(psi_quotient(f, q))}
    return rep, 0 if ok else 1, rep["verdict"]


def cmd_find_central(a):
    A = load_algebra(a.algebra)
    r = checker.find_e_central(A, budget=a.budget or 10**5)
    rep = {"verdict": "found", "poly": str(r.poly), "n": r.n,
           "degrees": [A.group.elements[g] for g in r.degrees],
           "witnesses": [serialize_assignment(r.certificate, A)], "value": r.value.to_literals(),
           "counts": {"tuples": r.checked}}
    return rep, 0, str(r.poly)


def cmd_idspace(a):
    A = load_algebra(a.algebra)
    sp = checker.multilinear_id_space(A, _degrees(A.group, a.degrees))
    polys = [format_poly(sp.polynomial(v, A.group)) for v in sp.basis]
    rep = {"verdict": "ok", "dim": sp.dim, "basis": polys}
    return rep, 0, "\n".join([f"dim {sp.dim}"] + polys)


def cmd_compare(a):
    A1 = load_algebra(a.algebra)
    A2 = load_algebra(a.algebra2)
    c = checker.compare_id_spaces(A1, A2, a.max_len)
    if c.equal:
        return {"verdict": "equal", "counts": {"degree_tuples": c.checked}}, 0, "equal"
    rep = {"verdict": "differ", "degrees": [A1.group.elements[g] for g in c.degrees],
           "witness_poly": format_poly(c.witness), "identity_of": c.identity_of,
           "counts": {"degree_tuples": c.checked}}
    return rep, 1, f"differ at {rep['degrees']}: {rep['witness_poly']} is an identity of {c.identity_of} only"


def cmd_experiment(a):
    rep = experiments.run(a.name, a.seed)
    return rep, 0 if rep["verdict"] == "pass" else 1, f"{a.name}: {rep['verdict']}"


COMMANDS = {
    "group": cmd_group,
    "algebra": cmd_algebra,
    "poly": cmd_poly,
    "check-identity": cmd_check_identity,
    "check-central": cmd_check_central,
    "regev": cmd_regev,
    "project": cmd_project,
    "quotient-map": cmd_quotient_map,
    "q-stable": cmd_q_stable,
    "find-central": cmd_find_central,
    "idspace": cmd_idspace,
    "compare": cmd_compare,
    "experiment": cmd_experiment,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="gradedpi", description="Graded polynomial identities of finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--group")
        s.add_argument("--algebra")
        s.add_argument("--poly")
        s.add_argument("--out", choices=["json", "text"], default="text")
        s.add_argument("--budget", type=int)
        s.add_argument("--seed", type=int, default=checker.DEFAULT_SEED)
        s.add_argument("--m", type=int, default=1)
        if name == "experiment":
            s.add_argument("name")
        if name == "regev":
            s.add_argument("--n", type=int, required=True)
        if name == "project":
            s.add_argument("--g", required=True)
        if name in ("quotient-map", "q-stable"):
            s.add_argument("--kernel")
        if name == "q-stable":
            s.add_argument("--all-degrees", action="store_true")
        if name == "idspace":
            s.add_argument("--degrees")
        if name == "compare":
            s.add_argument("--algebra2")
            s.add_argument("--max-len", type=int, default=2)
    return p


def _finish(rep, seed, t0):
    base = report(rep.pop("verdict"), rep.pop("witnesses", []), rep.pop("counts", {}), seed, t0)
    base.update(rep)
    return base


def cmd_run(argv) -> int:
    t0 = time.perf_counter()
    out_json = "--out" in argv and "json" in argv
    seed = checker.DEFAULT_SEED
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        seed = args.seed
        out_json = args.out == "json"
        rep, code, text = COMMANDS[args.command](args)
    except Exception as exc:
        code = getattr(exc, "code", None)
        if not isinstance(code, str):
            if not isinstance(exc, (ValueError, KeyError, LookupError, PolySyntaxError)):
                raise
            code = type(exc).__name__
        msg = str(exc.args[0]) if exc.args else str(exc)
        rep = report("error", [], {}, seed, t0)
        rep["error"] = {"code": code, "message": msg}
        if out_json:
            print(json.dumps(rep, sort_keys=True))
        else:
            print(f"error [{code}]: {msg}", file=sys.stderr)
        return 2
    rep = _finish(rep, seed, t0)
    print(json.dumps(rep, sort_keys=True) if out_json else text)
    return code


def main():
    sys.exit(cmd_run(sys.argv[1:]))


if __name__ == "__main__":
    main()
