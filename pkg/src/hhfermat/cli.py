"""Command-line front end: ``hhfermat <command> --spec FILE`` (or --n/--N/--gen).

Every command prints one JSON document (or writes it with --out).  The header
records n, N and L; a coefficient is a list of [e, p, q] triples meaning
sum p/q * z^e with z = exp(2 pi i / L).

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 group too large.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .cuptable import CupEngine
from .expr import ExprError, parse_algebra_element, parse_scalar
from .fixedlocus import AlgebraElement, Fermat, hessian_class, monomial_basis, restrict, sector_vars
from .grading_pairing import bidegree, eta
from .group import Group, GroupError, parse_generator
from .invariants import check_map_pairs, hh_algebra
from .polyring import Poly
from .properties import Context, full_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class JobSpec:
    n: int
    N: int
    groups: dict  # name -> list of generator specs
    L: int | None = None
    golden: list = field(default_factory=list)
    name: str = ""
    require_sl: bool = False

    @classmethod
    def from_dict(cls, d: dict) -> "JobSpec":
        try:
            n, N = int(d["n"]), int(d["N"])
        except (KeyError, TypeError, ValueError):
            raise InputError("spec needs integer fields n and N") from None
        if n < 2 or N < 1:
            raise InputError("need n >= 2 and N >= 1")
        if "groups" in d:
            groups = dict(d["groups"])
        elif "generators" in d:
            groups = {"G": d["generators"]}
        else:
            raise InputError("spec needs 'generators' or 'groups'")
        opts = d.get("options", {})
        return cls(n, N, groups, d.get("L"), d.get("golden", []), d.get("name", ""), bool(opts.get("require_sl", False)))


def header(fm: Fermat, group: Group, name: str) -> dict:
    return {
        "tool": "hhfermat",
        "version": __version__,
        "spec": name,
        "n": fm.n,
        "N": fm.N,
        "L": fm.L,
        "zeta": "z = exp(2*pi*i/L)",
        "coefficients": "[[e, p, q], ...] = sum p/q z^e",
        "group_order": len(group),
    }


def coeff_json(c) -> dict:
    return {"value": c.to_json(), "text": str(c)}


def element_json(a: AlgebraElement) -> dict:
    return {"text": a.render(), "terms": a.to_json()}


# ------------------------------------------------------------------ loading


def load_spec(args) -> JobSpec:
    if args.spec:
        try:
            d = json.loads(Path(args.spec).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read spec {args.spec}: {e}") from None
        spec = JobSpec.from_dict(d)
        spec.name = spec.name or Path(args.spec).stem
    else:
        if args.n is None or args.N is None:
            raise InputError("give --spec FILE or --n, --N and --gen")
        spec = JobSpec(args.n, args.N, {"G": args.gen or []})
    if args.L:
        spec.L = args.L
    return spec


def build_group(spec: JobSpec, name: str | None, cap: int) -> tuple[str, Group]:
    if name is None:
        name = next(iter(spec.groups))
    if name not in spec.groups:
        raise InputError(f"no group {name!r} in spec (have {', '.join(spec.groups)})")
    gens = [parse_generator(g, spec.N, spec.n) for g in spec.groups[name]]
    G = Group(gens, spec.N, spec.n, cap=cap)
    if spec.require_sl and not G.diag_in_sl():
        raise InputError("spec requires G^d in SL_N")
    return name, G


def field_order(spec: JobSpec, G: Group) -> int:
    L = spec.L or G.eigen_order()
    if L % G.eigen_order():
        raise InputError(f"L = {L} must be a multiple of {G.eigen_order()}")
    return L


# ------------------------------------------------------------------ commands


def cmd_closure(spec, G, fm, args) -> tuple[int, dict]:
    return EXIT_OK, {"group": G.to_json(), "classes": [{"rep": str(u), "size": len(c)} for u, c in G.conjugacy_classes], "diag_in_SL": G.diag_in_sl()}


def cmd_sectors(spec, G, fm, args) -> tuple[int, dict]:
    out = []
    for u in G:
        fd = u.fixed_data
        _, lam = hessian_class(fm, u)
        names = sector_vars(u).names(fm.N)
        out.append(
            {
                "element": str(u),
                "d_u": fd.d_u,
                "N_u": fd.N_u,
                "age": str(fd.age),
                "special": fd.special,
                "dim_jac": len(monomial_basis(fm, u)),
                "basis": [Poly.monomial(fm.F, fm.N, m).render(names) for m in monomial_basis(fm, u)],
                "hessian_scalar": coeff_json(lam),
            }
        )
    return EXIT_OK, {"sectors": out, "dimension": sum(s["dim_jac"] for s in out)}


def cmd_product(spec, G, fm, args) -> tuple[int, dict]:
    E = CupEngine(fm)
    if args.basis:
        alg = hh_algebra(G, L=fm.L, engine=E, verify=False)
        i, j = args.basis
        if not (0 <= i < alg.dimension and 0 <= j < alg.dimension):
            raise InputError(f"basis indices must lie in 0..{alg.dimension - 1}")
        a, b = alg.basis[i].element, alg.basis[j].element
        res = E.cup(a, b)
        coords = {str(k): coeff_json(c) for k, c in alg.structure[i][j].items()}
        return EXIT_OK, {"left": alg.basis[i].label, "right": alg.basis[j].label, "result": element_json(res), "coordinates": coords}
    if not (args.left and args.right):
        raise InputError("product needs --left and --right, or --basis I J")
    a, b = parse_algebra_element(args.left, fm), parse_algebra_element(args.right, fm)
    for x in (a, b):
        for u in x.terms:
            if u not in G:
                raise InputError(f"sector {u} is not in the group")
    return EXIT_OK, {"left": element_json(a), "right": element_json(b), "result": element_json(E.cup(a, b))}


def _table_rows(payload) -> list:
    n, N, L, us, elements = payload
    fm = Fermat(n, N, L)
    E = CupEngine(fm)
    rows = []
    for u in us:
        for v in elements:
            s = E.sigma_class(u, v)
            if s:
                names = sector_vars(u * v).names(N)
                rows.append({"u": str(u), "v": str(v), "uv": str(u * v), "sigma": s.render(names), "terms": [{"exps": list(m), "coeff": c.to_json()} for m, c in sorted(s.t.items())]})
    return rows


def cmd_table(spec, G, fm, args) -> tuple[int, dict]:
    els = G.elements
    jobs = max(1, args.jobs)
    chunks = [els[k::jobs] for k in range(jobs)]
    payloads = [(fm.n, fm.N, fm.L, c, els) for c in chunks]
    if jobs == 1:
        rows = _table_rows(payloads[0])
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = [r for part in ex.map(_table_rows, payloads) for r in part]
    order = {str(g): k for k, g in enumerate(els)}
    rows.sort(key=lambda r: (order[r["u"]], order[r["v"]]))
    return EXIT_OK, {"nonzero_sigma": len(rows), "pairs": len(els) ** 2, "table": rows}


def cmd_invariants(spec, G, fm, args) -> tuple[int, dict]:
    alg = hh_algebra(G, L=fm.L)
    return EXIT_OK, alg.to_json()


def cmd_gradings(spec, G, fm, args) -> tuple[int, dict]:
    sectors = []
    for u in G:
        names = sector_vars(u).names(fm.N)
        rows = []
        for m in monomial_basis(fm, u):
            p = Poly.monomial(fm.F, fm.N, m)
            ql, qr = bidegree(fm, u, p)
            rows.append({"class": p.render(names), "q_l": str(ql), "q_r": str(qr)})
        sectors.append({"element": str(u), "bidegrees": rows})
    alg = hh_algebra(G, L=fm.L, verify=False)
    inv = [{"q_l": str(k[0]), "q_r": str(k[1]), "dim": v} for k, v in alg.graded_dims().items()]
    return EXIT_OK, {"sectors": sectors, "invariant_graded_dims": inv}


def run_golden(spec: JobSpec, G: Group, fm: Fermat, cap: int, gname: str | None = None) -> list[dict]:
    """Check every golden entry of the spec that refers to this group (or to none)."""
    out = []
    E = CupEngine(fm)
    alg = None
    for g in spec.golden:
        if gname is not None and g.get("group") not in (None, gname):
            continue
        kind = g.get("kind")
        rec = {"kind": kind, "name": g.get("name", kind), "source": g.get("source", "")}
        try:
            if kind == "dimension":
                alg = alg or hh_algebra(G, L=fm.L, engine=E)
                rec.update(expected=g["value"], got=alg.dimension, passed=alg.dimension == g["value"])
            elif kind == "flags":
                alg = alg or hh_algebra(G, L=fm.L, engine=E)
                rec.update(got=alg.flags, passed=all(alg.flags.get(k) == v for k, v in g["value"].items()))
            elif kind == "product":
                a, b = parse_algebra_element(g["left"], fm), parse_algebra_element(g["right"], fm)
                want = parse_algebra_element(g["expect"], fm) if g["expect"] != "0" else AlgebraElement(fm)
                got = E.cup(a, b)
                rec.update(expected=want.render(), got=got.render(), passed=got == want)
            elif kind == "pairing":
                a, b = parse_algebra_element(g["left"], fm), parse_algebra_element(g["right"], fm)
                got = eta(a, b)
                want = parse_scalar(g["expect"], fm)
                rec.update(expected=str(want), got=str(got), passed=got == want)
            elif kind == "isomorphism":
                _, H = build_group(spec, g["target"], cap)
                L2 = field_order(spec, H)
                if L2 != fm.L:
                    raise InputError("isomorphism check needs both groups over the same L; set L in the spec")
                src = alg or hh_algebra(G, L=fm.L, engine=E)
                dst = hh_algebra(H, L=fm.L)
                pairs = [(parse_algebra_element(p["from"], fm), parse_algebra_element(p["to"], fm)) for p in g["map"]]
                res = check_map_pairs(src, dst, pairs)
                rec.update(got={k: (list(v) if isinstance(v, tuple) else v) for k, v in res.items()}, passed=res["bijective"] and res["multiplicative"])
            else:
                rec.update(passed=False, error=f"unknown golden kind {kind!r}")
        except (ExprError, KeyError) as e:
            rec.update(passed=False, error=str(e))
        out.append(rec)
    return out


def cmd_verify(spec, G, fm, args) -> tuple[int, dict]:
    golden = run_golden(spec, G, fm, args.max_group_order, getattr(args, "group_name", None))
    report: dict = {"golden": golden}
    ok = all(r["passed"] for r in golden)
    if args.verify_level == "full":
        ctx = Context(G, L=fm.L)
        props = [r.to_json() for r in full_suite(ctx, triples=len(ctx.basis) <= 400)]
        if not args.timings:
            for p in props:
                p.pop("seconds", None)
        report["properties"] = props
        ok = ok and all(p["passed"] for p in props)
    report["passed"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), report


COMMANDS = {
    "closure": cmd_closure,
    "sectors": cmd_sectors,
    "product": cmd_product,
    "table": cmd_table,
    "invariants": cmd_invariants,
    "gradings": cmd_gradings,
    "verify": cmd_verify,
}


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hhfermat", description="Hochschild cohomology of Fermat orbifolds, exactly.")
    p.add_argument("--version", action="version", version=f"hhfermat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--spec", help="JSON job spec")
        s.add_argument("--group", help="group name inside the spec (default: the first)")
        s.add_argument("--n", type=int)
        s.add_argument("--N", type=int)
        s.add_argument("--gen", action="append", help="generator, e.g. '(1,2,3)' or '[1,1,1]' (repeatable)")
        s.add_argument("--L", type=int, help="work over Q(zeta_L) (a multiple of the default)")
        s.add_argument("--out", help="write JSON here instead of stdout")
        s.add_argument("--jobs", type=int, default=1, help="worker processes (table only)")
        s.add_argument("--verify-level", choices=("golden", "full"), default="golden")
        s.add_argument("--max-group-order", type=int, default=5000)
        s.add_argument("--timings", action="store_true", help="include wall-clock times (breaks byte-determinism)")
        if name == "product":
            s.add_argument("--left")
            s.add_argument("--right")
            s.add_argument("--basis", type=int, nargs=2, metavar=("I", "J"), help="multiply invariant basis elements")
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        spec = load_spec(args)
        gname, G = build_group(spec, args.group, args.max_group_order)
        args.group_name = gname
        fm = Fermat(spec.n, spec.N, field_order(spec, G))
        code, body = COMMANDS[args.command](spec, G, fm, args)
        doc = {"header": {**header(fm, G, spec.name), "group": gname}, args.command: body}
    except GroupError as e:
        msg = str(e)
        code = EXIT_CAP if "cap" in msg else EXIT_INPUT
        doc = {"error": {"kind": "group", "message": msg}}
    except (InputError, ExprError, ValueError) as e:
        code, doc = EXIT_INPUT, {"error": {"kind": "input", "message": str(e)}}
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if getattr(args, "out", None) and "error" not in doc:
        Path(args.out).write_text(text)
    else:
        (sys.stderr if "error" in doc else sys.stdout).write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
