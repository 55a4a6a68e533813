"""Print the per-example numbers for every built-in triple.

    python3 scripts/reproduce_tables.py [--ijt-budget N] [--names a,b,...]
"""

import argparse
import time
from fractions import Fraction

from conicbundle import corpus
from conicbundle.bitangents import real_bitangents
from conicbundle.model import quartic_from_triple
from conicbundle.signatures import signature_profile, y_real_components
from conicbundle.topology import isotopy_class
from conicbundle.verdict import classify_with_twist


def describe(name: str, budget: int) -> list[str]:
    T = corpus.get(name)
    P = signature_profile(T)
    f = quartic_from_triple(T).f
    roots = []
    for r in P.branch_points:
        roots.append(str(r.lo) if r.is_exact else f"{float(r.refine(Fraction(1, 10**8)).midpoint()):.4f}")
    v, tv = classify_with_twist(T, ijt_budget=budget)
    ijt = v.analysis.ijt
    lines = [
        f"== {name}: {corpus.note(name)}",
        f"   Gamma: y^2 = {P.gamma.branch_poly}",
        f"   real Weierstrass points ({P.real_weierstrass_count}): {', '.join(roots) or 'none'}",
        "   arcs: " + "  ".join(f"[{a.sample}] {a.signature}" for a in P.arcs),
        f"   components of Y(R): {y_real_components(P)}",
        f"   isotopy: {isotopy_class(f).isotopy_class}, real bitangents: {real_bitangents(f).count}",
        f"   IJT: {ijt.status}" + (f", minor {ijt.witness.determinant.real:.8f} over {ijt.witness.kind} line"
                                  if ijt.witness else ""),
        f"   verdict: {v.status} [{', '.join(r.rule for r in v.reason)}], twist: {tv.status}",
    ]
    return lines


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--ijt-budget", type=int, default=16)
    ap.add_argument("--names", default=None)
    args = ap.parse_args()
    names = args.names.split(",") if args.names else corpus.names()
    t0 = time.perf_counter()
    for name in names:
        print("\n".join(describe(name, args.ijt_budget)))
    print(f"-- {len(names)} triples in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
