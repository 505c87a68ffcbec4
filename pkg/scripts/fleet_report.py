"""Structure table of the fleet: dimensions, support, center, exponent, simplicity, Kaplansky ratio."""
import argparse
import json

from gradedpi import fleet
from gradedpi.galg import (center, central_idempotents, exponent, is_g_division, is_g_simple, kaplansky_report,
                           trace_radical)


def row(A):
    G = A.group
    Z, Ze = center(A)
    out = {"algebra": A.name, "group": G.name, "dim": A.dim,
           "support": [G.elements[g] for g in A.support], "dim_Z": len(Z), "dim_Ze": len(Ze)}
    if trace_radical(A):
        out["semisimple"] = False
        return out
    out["exponent"] = exponent(A)
    out["g_simple"] = is_g_simple(A).verdict
    out["g_division"] = is_g_division(A).is_division
    out["mu_e"] = [str(c.mu_e) for c in central_idempotents(A)]
    if out["g_simple"] == "simple":
        out["kaplansky"] = kaplansky_report(A)
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--json", action="store_true")
    a = p.parse_args(argv)
    rows = [row(make()) for make in fleet.FLEET.values()]
    if a.json:
        print(json.dumps(rows, indent=1, default=str))
        return
    for r in rows:
        print(f"{r['algebra']:18s} {r['group']:7s} dim {r['dim']:2d}  Z {r['dim_Z']} Ze {r['dim_Ze']}  "
              f"exp {r.get('exponent', '-')!s:2s} {r.get('g_simple', 'radical')}")


if __name__ == "__main__":
    main()
