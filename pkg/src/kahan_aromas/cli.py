"""Command-line frontend.

JSON on stdout is the machine format (byte-identical for identical seeds);
--format text renders aromatic series the way the densities are usually
written, e.g. "1 - (1/8) h^2 F(C2(;))"; --format latex emits small tabulars.

Exit codes: 0 success; 1 verification failure or empty result where a
result was required; 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus
from .coalgebra import eta, kahan_coeff, q_matrix
from .fields import KahanMap, QuadraticVectorField, kahan_series
from .graphs import (
    enumerate_aromas,
    enumerate_multisets,
    parse_any,
    parse_multiset,
)
from .poly import Polynomial
from .rationals import Rat, format_rat
from .solver import (
    SolverError,
    conjecture_check,
    first_integrals,
    necessary_conditions,
    solve_darboux,
    verify_density,
)

DEFAULT_ORDER_CAP = 6


class InputError(ValueError):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _load_field(args) -> QuadraticVectorField:
    if getattr(args, "field", None) and getattr(args, "system", None):
        raise InputError("give exactly one field source (--field or --system)")
    if getattr(args, "field", None):
        try:
            return QuadraticVectorField.from_json(_load_json(args.field))
        except (ValueError, TypeError, KeyError) as exc:
            raise InputError(f"malformed field JSON: {exc}") from exc
    if getattr(args, "system", None):
        params = None
        if getattr(args, "params", None):
            try:
                params = json.loads(args.params)
            except json.JSONDecodeError as exc:
                raise InputError(f"malformed --params JSON: {exc}") from exc
        try:
            return corpus.get_system(args.system, params, seed=getattr(args, "seed", 0))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
    raise InputError("a field source is required (--field F.json or --system NAME)")


def _check_order(order: int, cap: int):
    if order > cap:
        raise InputError(
            f"order {order} exceeds the cap {cap}; pass --order-cap {order} to override"
        )
    if order < 0:
        raise InputError("order must be nonnegative")


def _emit(args, payload: dict, text_renderer=None, latex_renderer=None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "text":
        print(text_renderer(payload) if text_renderer else json.dumps(payload, indent=2))
    else:
        print(latex_renderer(payload) if latex_renderer else json.dumps(payload, indent=2))


def render_series(gamma: dict, nv: int | None = None) -> str:
    """Human form of a density given by gamma coordinates (sigma folded in)."""
    entries = []
    for key in sorted(gamma, key=lambda k: (parse_multiset(_multiset_part(k)).order, k)):
        coeff = Rat(gamma[key]) if not isinstance(gamma[key], str) else Rat(gamma[key])
        mset = parse_multiset(_multiset_part(key))
        value = coeff / mset.sigma()
        entries.append((mset.order, key, value))
    pieces = []
    for order, key, value in entries:
        sign = "-" if value < 0 else "+"
        mag = -value if value < 0 else value
        body = ""
        if order:
            body += f"h^{order} " if order > 1 else "h "
        if key != "1":
            body += f"F({key})"
        if not body:
            term = format_rat(mag)
        elif mag == 1:
            term = body.strip()
        else:
            term = f"({format_rat(mag)}) {body}".strip()
        pieces.append((sign, term))
    if not pieces:
        return "0"
    first_sign, first_term = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_term
    for sign, term in pieces[1:]:
        out += f" {sign} {term}"
    return out


def _multiset_part(key: str) -> str:
    # augmented keys look like "label*Ck(...)"; the multiset part starts at C
    if key == "1" or key.startswith("C"):
        return key
    idx = key.find("*")
    return key[idx + 1 :]


def _poly_text(data) -> str:
    return str(Polynomial.from_json(data)) if data else "0"


# ---------------------------------------------------------------------------
# subcommands


def cmd_aromas_enumerate(args) -> int:
    _check_order(args.order, args.order_cap)
    if args.multisets:
        items = [
            m.encoding
            for m in enumerate_multisets(args.order, args.max_indegree)
        ]
        payload = {"order": args.order, "multisets": items}
    else:
        if args.order < 1:
            raise InputError("aroma enumeration needs order >= 1")
        aromas = enumerate_aromas(args.order)
        if args.max_indegree is not None:
            aromas = [a for a in aromas if a.max_indegree() <= args.max_indegree]
        payload = {"order": args.order, "aromas": [a.encoding for a in aromas]}
    _emit(args, payload, text_renderer=lambda p: "\n".join(p.get("aromas", p.get("multisets"))))
    return 0


def cmd_aromas_sigma(args) -> int:
    try:
        obj = parse_any(args.encoding)
    except ValueError as exc:
        raise InputError(f"bad encoding: {exc}") from exc
    payload = {"encoding": obj.encoding, "sigma": obj.sigma(), "order": obj.order}
    _emit(args, payload, text_renderer=lambda p: f"sigma({p['encoding']}) = {p['sigma']}")
    return 0


def cmd_field_eval(args) -> int:
    field = _load_field(args)
    try:
        target = parse_multiset(args.aroma)
    except ValueError as exc:
        raise InputError(f"bad aroma encoding: {exc}") from exc
    poly = field.aroma_function(target)
    payload = {
        "aroma": target.encoding,
        "sigma": target.sigma(),
        "polynomial": poly.to_json(),
        "text": str(poly),
    }
    _emit(args, payload, text_renderer=lambda p: f"F({p['aroma']}) = {p['text']}")
    return 0


def cmd_kahan(args) -> int:
    field = _load_field(args)
    kmap = KahanMap(field)
    if args.kahan_cmd == "map":
        payload = {
            "numerators": [p.to_json() for p in kmap.numerators],
            "denominator": kmap.den.to_json(),
        }
        _emit(
            args,
            payload,
            text_renderer=lambda p: "\n".join(
                f"Phi_{i+1} = ({_poly_text(num)}) / ({_poly_text(p['denominator'])})"
                for i, num in enumerate(p["numerators"])
            ),
        )
    elif args.kahan_cmd == "det":
        dj = kmap.det_jacobian()
        payload = {"num": dj.num.to_json(), "den": dj.den.to_json()}
        _emit(
            args,
            payload,
            text_renderer=lambda p: f"det DPhi = ({_poly_text(p['num'])}) / ({_poly_text(p['den'])})",
        )
    else:
        _check_order(args.order, args.order_cap)
        coeffs = kahan_series(field, args.order)
        payload = {
            "order": args.order,
            "coefficients": [[p.to_json() for p in vec] for vec in coeffs],
        }
        _emit(
            args,
            payload,
            text_renderer=lambda p: "\n".join(
                f"h^{k}: (" + ", ".join(_poly_text(c) for c in vec) + ")"
                for k, vec in enumerate(p["coefficients"])
            ),
        )
    return 0


def cmd_hopf_qtable(args) -> int:
    _check_order(args.order, args.order_cap)
    multisets, rows = q_matrix(args.order)
    payload = {
        "order": args.order,
        "rows": [
            {
                "alpha": alpha.encoding,
                "sigma": alpha.sigma(),
                "entries": {
                    multisets[c].encoding: format_rat(v)
                    for c, v in enumerate(row)
                    if v != 0
                },
            }
            for alpha, row in zip(multisets, rows)
        ],
    }

    def text(p):
        lines = []
        for row in p["rows"]:
            expr = " + ".join(f"({v}) g[{k}]" for k, v in row["entries"].items()) or "0"
            lines.append(f"<Q(g), {row['alpha']}> = {expr}")
        return "\n".join(lines)

    def latex(p):
        lines = [r"\begin{tabular}{c|c}", r"$\alpha$ & $\langle Q(\gamma),\alpha\rangle$\\ \hline"]
        for row in p["rows"]:
            expr = (
                " + ".join(f"({v})\\gamma[{k}]" for k, v in row["entries"].items()) or "0"
            )
            lines.append(f"  {row['alpha']} & ${expr}$\\\\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines)

    _emit(args, payload, text_renderer=text, latex_renderer=latex)
    return 0


def cmd_hopf_newton(args) -> int:
    _check_order(args.order, args.order_cap)
    rows = []
    for mset in enumerate_multisets(args.order):
        if not mset.is_cycle_product():
            continue
        sign = mset.permutation_sign()
        rows.append(
            {
                "alpha": mset.encoding,
                "sigma": mset.sigma(),
                "u_power": mset.order,
                "eta_over_sigma": format_rat(Rat(sign, mset.sigma())),
                "vanishes_beyond_dim": mset.order > args.dim,
            }
        )
    payload = {"order": args.order, "dim": args.dim, "terms": rows}

    def text(p):
        return "\n".join(
            f"h^{r['u_power']} u^{r['u_power']} * ({r['eta_over_sigma']}) F({r['alpha']})"
            + ("   [sums to zero beyond dim]" if r["vanishes_beyond_dim"] else "")
            for r in p["terms"]
        )

    _emit(args, payload, text_renderer=text)
    return 0


def _load_augmenters(path: str):
    data = _load_json(path)
    if isinstance(data, dict):
        items = sorted(data.items())
    else:
        items = [(label, poly) for label, poly in data]
    out = []
    for label, poly_json in items:
        out.append((str(label), Polynomial.from_json(poly_json)))
    return out


def solver_report(field, sol, seed: int) -> dict:
    solutions = []
    for gamma, density, parity in zip(sol.gammas, sol.densities, sol.parities):
        plain = {k: format_rat(v) for k, v in sorted(gamma.items()) if _is_plain(k)}
        aug = {k: format_rat(v) for k, v in sorted(gamma.items()) if not _is_plain(k)}
        solutions.append(
            {
                "gamma": plain,
                "augmenter_coeffs": aug,
                "polynomial": density.to_json(),
                "parity": parity,
                "verified": True,
                "series": render_series(gamma),
            }
        )
    integrals = []
    independence = 0
    if len(sol.densities) >= 2:
        try:
            ratios, independence = first_integrals(sol, seed=seed)
            integrals = [
                {"num": r.num.to_json(), "den": r.den.to_json()} for r in ratios
            ]
        except ValueError:
            integrals = []
    conditions = necessary_conditions(sol.field).to_json()
    return {
        "field": sol.field.to_json(),
        "order": sol.max_order,
        "parity": sol.parity,
        "seed": seed,
        "method": sol.method,
        "basis": sol.basis_keys(),
        "dropped": sol.dropped_keys(),
        "solutions": solutions,
        "first_integrals": integrals,
        "independence_count": independence,
        "conditions": conditions,
    }


def _is_plain(key: str) -> bool:
    return key == "1" or key.startswith("C")


def cmd_darboux_solve(args) -> int:
    _check_order(args.order, args.order_cap)
    field = _load_field(args)
    augmenters = _load_augmenters(args.augment) if args.augment else None
    try:
        sol = solve_darboux(
            field, args.order, parity=args.parity, augmenters=augmenters, seed=args.seed
        )
    except SolverError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    payload = solver_report(field, sol, args.seed)

    def text(p):
        lines = [f"basis ({len(p['basis'])}): {' '.join(p['basis'])}"]
        if p["dropped"]:
            lines.append(f"dropped: {' '.join(p['dropped'])}")
        if not p["solutions"]:
            lines.append("no densities found at this order")
        for i, s in enumerate(p["solutions"]):
            lines.append(f"g{i+1} ({s['parity']}): {s['series']}")
        lines.append(f"independent integrals: {p['independence_count']}")
        return "\n".join(lines)

    def latex(p):
        lines = [r"\begin{align*}"]
        for i, s in enumerate(p["solutions"]):
            lines.append(f"  g_{{{i+1}}} &= {s['series']} \\\\")
        lines.append(r"\end{align*}")
        return "\n".join(lines)

    _emit(args, payload, text_renderer=text, latex_renderer=latex)
    return 0 if payload["solutions"] else 1


def cmd_darboux_verify(args) -> int:
    field = _load_field(args)
    data = _load_json(args.density)
    if isinstance(data, dict):
        data = data.get("terms", data.get("polynomial"))
    try:
        P = Polynomial.from_json(data, field.nvars)
    except (ValueError, TypeError) as exc:
        raise InputError(f"malformed density JSON: {exc}") from exc
    result = verify_density(field, P, seed=args.seed)
    payload = {"verified": result.verified}
    if result.witness:
        xs, h, residual = result.witness
        payload["witness"] = {
            "x": [format_rat(v) for v in xs],
            "h": format_rat(h),
            "residual": format_rat(residual),
        }
    _emit(args, payload)
    return 0 if result.verified else 1


def cmd_check_conditions(args) -> int:
    field = _load_field(args)
    payload = necessary_conditions(field).to_json()
    _emit(args, payload)
    return 0


def cmd_check_conjecture(args) -> int:
    field = _load_field(args)
    try:
        report = conjecture_check(field, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = report.to_json()
    _emit(args, payload)
    if report.hypothesis_holds and not report.singular and report.density_found is False:
        return 1  # potential counterexample: flagged loudly
    return 0


def cmd_corpus_list(args) -> int:
    payload = {
        "systems": [
            {"name": s.name, "description": s.description, "params": s.schema}
            for s in sorted(corpus.SYSTEMS.values(), key=lambda s: s.name)
        ]
    }
    _emit(
        args,
        payload,
        text_renderer=lambda p: "\n".join(
            f"{s['name']}: {s['description']}" for s in p["systems"]
        ),
    )
    return 0


def cmd_corpus_run(args) -> int:
    try:
        checks = corpus.golden_suite(args.name, seed=args.seed)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    payload = {
        "system": args.name,
        "seed": args.seed,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
        ],
        "passed": all(c.passed for c in checks),
    }
    _emit(
        args,
        payload,
        text_renderer=lambda p: "\n".join(
            f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}" for c in p["checks"]
        )
        + f"\n=> {'all passed' if p['passed'] else 'FAILURES'}",
    )
    return 0 if payload["passed"] else 1


# ---------------------------------------------------------------------------


def _add_field_source(sub):
    sub.add_argument("--field", help="path to a field JSON file")
    sub.add_argument("--system", help="corpus system name")
    sub.add_argument("--params", help="JSON object of system parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kahan-aromas",
        description="preserved measures and first integrals of Kahan maps in the span of aromatic functions",
    )
    parser.add_argument(
        "--format", choices=["json", "text", "latex"], default="json", help="output format"
    )
    parser.add_argument(
        "--order-cap",
        type=int,
        default=DEFAULT_ORDER_CAP,
        help="hard cap on expansion orders (override to go above 6; costs grow fast)",
    )
    top = parser.add_subparsers(dest="command", required=True)

    aromas = top.add_parser("aromas", help="enumeration and symmetry of aromas")
    asub = aromas.add_subparsers(dest="aromas_cmd", required=True)
    en = asub.add_parser("enumerate")
    en.add_argument("--order", type=int, required=True)
    en.add_argument("--multisets", action="store_true", help="multisets of order <= N")
    en.add_argument("--max-indegree", type=int, default=None)
    en.set_defaults(func=cmd_aromas_enumerate)
    sg = asub.add_parser("sigma")
    sg.add_argument("encoding")
    sg.set_defaults(func=cmd_aromas_sigma)

    fld = top.add_parser("field", help="evaluate aromatic functions of a field")
    fsub = fld.add_subparsers(dest="field_cmd", required=True)
    ev = fsub.add_parser("eval")
    _add_field_source(ev)
    ev.add_argument("--aroma", required=True, help="aroma or multiset encoding")
    ev.add_argument("--seed", type=int, default=0)
    ev.set_defaults(func=cmd_field_eval)

    kah = top.add_parser("kahan", help="the Kahan map, its determinant, its series")
    ksub = kah.add_subparsers(dest="kahan_cmd", required=True)
    for name in ("map", "det", "series"):
        sp = ksub.add_parser(name)
        _add_field_source(sp)
        sp.add_argument("--seed", type=int, default=0)
        if name == "series":
            sp.add_argument("--order", type=int, default=4)
        sp.set_defaults(func=cmd_kahan)

    hopf = top.add_parser("hopf", help="Q tables and determinant expansions")
    hsub = hopf.add_subparsers(dest="hopf_cmd", required=True)
    qt = hsub.add_parser("q-table")
    qt.add_argument("--order", type=int, default=3)
    qt.set_defaults(func=cmd_hopf_qtable)
    nw = hsub.add_parser("newton")
    nw.add_argument("--order", type=int, required=True)
    nw.add_argument("--dim", type=int, required=True)
    nw.set_defaults(func=cmd_hopf_newton)

    dar = top.add_parser("darboux", help="solve and verify the Darboux equation")
    dsub = dar.add_subparsers(dest="darboux_cmd", required=True)
    so = dsub.add_parser("solve")
    _add_field_source(so)
    so.add_argument("--order", type=int, required=True)
    so.add_argument("--parity", choices=["even", "odd", "both"], default="both")
    so.add_argument("--augment", help="JSON file of labelled augmenter polynomials")
    so.add_argument("--seed", type=int, default=0)
    so.set_defaults(func=cmd_darboux_solve)
    ve = dsub.add_parser("verify")
    _add_field_source(ve)
    ve.add_argument("--density", required=True, help="polynomial JSON file")
    ve.add_argument("--seed", type=int, default=0)
    ve.set_defaults(func=cmd_darboux_verify)

    chk = top.add_parser("check", help="necessary conditions and the conjecture")
    csub = chk.add_subparsers(dest="check_cmd", required=True)
    co = csub.add_parser("conditions")
    _add_field_source(co)
    co.add_argument("--seed", type=int, default=0)
    co.set_defaults(func=cmd_check_conditions)
    cj = csub.add_parser("conjecture")
    _add_field_source(cj)
    cj.add_argument("--seed", type=int, default=0)
    cj.set_defaults(func=cmd_check_conjecture)

    cor = top.add_parser("corpus", help="built-in example systems")
    corsub = cor.add_subparsers(dest="corpus_cmd", required=True)
    corsub.add_parser("list").set_defaults(func=cmd_corpus_list)
    ru = corsub.add_parser("run")
    ru.add_argument("name")
    ru.add_argument("--seed", type=int, default=0)
    ru.set_defaults(func=cmd_corpus_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:  # pragma: no cover
        return 0


if __name__ == "__main__":
    sys.exit(main())
