#!/usr/bin/env python3
"""End-to-end measure discovery for a field given as JSON (or a corpus name).

Example:
    python scripts/discover_measures.py --system lv_divfree --order 4
    python scripts/discover_measures.py --field myfield.json --order 6 --parity even
"""

import argparse
import json
import sys

from kahan_aromas.cli import render_series, solver_report
from kahan_aromas.corpus import get_system
from kahan_aromas.fields import QuadraticVectorField
from kahan_aromas.solver import first_integrals, solve_darboux


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--field", help="field JSON file")
    parser.add_argument("--system", help="corpus system name")
    parser.add_argument("--order", type=int, default=4)
    parser.add_argument("--parity", default="both", choices=["even", "odd", "both"])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if args.field:
        with open(args.field) as fh:
            field = QuadraticVectorField.from_json(json.load(fh))
    elif args.system:
        field = get_system(args.system, seed=args.seed)
    else:
        parser.error("need --field or --system")

    sol = solve_darboux(field, args.order, parity=args.parity, seed=args.seed)
    report = solver_report(field, sol, args.seed)
    print(f"basis size: {len(report['basis'])}  dropped: {len(report['dropped'])}")
    if not sol.densities:
        print("no aromatic Darboux densities at this order")
        return 1
    for i, gamma in enumerate(sol.gammas):
        print(f"g{i+1} ({sol.parities[i]}): {render_series(gamma)}")
    if len(sol.densities) >= 2:
        try:
            ratios, count = first_integrals(sol, seed=args.seed)
            print(f"first integrals: {len(ratios)} ratios, {count} independent")
        except ValueError as exc:
            print(f"first integrals: {exc}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
