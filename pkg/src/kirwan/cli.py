"""Command-line interface: classify, reduce, chambers, oracle, verify.

All numeric input is exact ("2/3", never floats).  Output is human-readable
text by default or deterministic JSON with --format json (schema version 1,
stable key order).  Exit codes: 0 success, 1 internal error, 2 domain or
regularity error, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import hypersimplex as hs
from . import oracles
from . import reduction
from .groebner import (DimensionError, GradedPresentation, MonomialOrder, betti,
                       buchberger, default_cache_dir, normal_form)
from .algebra import Polynomial, parse_polynomial

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 3

SCHEMA = 1


class UsageError(Exception):
    pass


def _emit(payload: dict, fmt: str, render) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=1))
    else:
        print(render(payload))


def _parse_xi(text: str) -> tuple[Fraction, ...]:
    try:
        return hs.parse_point(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot parse coordinates {text!r}: {e}") from None


def _paper_name(name: str, n: int) -> str:
    if name == "e1":
        return "sigma1(x1,x2)"
    if name == "e2":
        return "sigma2(x1,x2)"
    if name.startswith("h"):
        return f"sigma{name[1:]}(x3,...,x{n})"
    return name


def _presentation_payload(pres: GradedPresentation, table_betti, n: int | None,
                          paper_names: bool) -> dict:
    names = list(pres.table.names)
    shown = [_paper_name(v, n) if paper_names and n else v for v in names]
    return {
        "schema": SCHEMA,
        "label": pres.label,
        "variables": [{"name": s, "weight": w} for s, w in zip(shown, pres.table.weights)],
        "relations": [str(r) for r in pres.relations],
        "betti": table_betti.to_json(),
        "euler": table_betti.total,
    }


# -- classify ----------------------------------------------------------------

def cmd_classify(args) -> int:
    xi = _parse_xi(args.xi)
    try:
        hs.check_open_slice(xi)
    except hs.DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        chamber = hs.chamber_of(xi)
    except hs.RegularityError as e:
        print(f"not regular: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    chambers = hs.enumerate_chambers(len(xi))
    orbits = hs.orbit_partition(chambers, len(xi))
    rep = next(orbit[0] for orbit in orbits if chamber in orbit)
    payload = {
        "schema": SCHEMA,
        "regular": True,
        "chamber": chamber.to_json(),
        "orbit_representative": rep.to_json(),
    }

    def render(p):
        lines = [f"point {args.xi} is a regular value"]
        signs = p["chamber"]["signs"]
        lines.append("signs: " + " ".join(f"{k}:{v}" for k, v in sorted(signs.items())))
        lines.append("walls (>1 side): " + ", ".join(
            "{" + ",".join(str(i) for i in W) + "}" for W in p["chamber"]["walls"]))
        lines.append("orbit representative signs: " + " ".join(
            f"{k}:{v}" for k, v in sorted(p["orbit_representative"]["signs"].items())))
        return "\n".join(lines)

    _emit(payload, args.format, render)
    return EXIT_OK


# -- reduce -------------------------------------------------------------------

def _reduce_payload(n: int, chamber, args) -> dict:
    ideal = reduction.build_ideal(n, chamber)
    basis = buchberger(list(ideal.generators), MonomialOrder(ideal.table),
                       cache_dir=args.cache_dir)
    table = betti(basis)
    pres = GradedPresentation(ideal.table, ideal.generators, label=f"kirwan(n={n})")
    payload = _presentation_payload(pres, table, n, args.paper_names)
    payload["chamber"] = chamber.to_json()
    if not args.emit_presentation:
        payload.pop("relations")
    return payload


def cmd_reduce(args) -> int:
    if bool(args.xi) == bool(args.hassett):
        raise UsageError("provide exactly one of --xi or --hassett")
    if args.xi:
        xi = _parse_xi(args.xi)
        n = len(xi)
        if args.n is not None and args.n != n:
            raise UsageError(f"--n {args.n} disagrees with {n} coordinates")
        try:
            chamber = hs.chamber_of(xi)
        except hs.DomainError as e:
            print(f"domain error: {e}", file=sys.stderr)
            return EXIT_DOMAIN
        except hs.RegularityError as e:
            print(f"not regular: {e}", file=sys.stderr)
            return EXIT_DOMAIN
    else:
        weights = _parse_xi(args.hassett)
        n = len(weights)
        if args.n is not None and args.n != n:
            raise UsageError(f"--n {args.n} disagrees with {n} weights")
        try:
            chamber = hs.hassett_chamber(weights)
        except hs.WeightError as e:
            print(f"weight error: {e}", file=sys.stderr)
            return EXIT_DOMAIN
    payload = _reduce_payload(n, chamber, args)

    def render(p):
        lines = [f"{p['label']} at chamber with walls " + ", ".join(
            "{" + ",".join(str(i) for i in W) + "}" for W in p["chamber"]["walls"])]
        lines.append("generators: " + ", ".join(
            f"{v['name']} (weight {v['weight']})" for v in p["variables"]))
        if "relations" in p:
            lines.append("relations:")
            lines.extend(f"  {r}" for r in p["relations"])
        lines.append(f"betti: {p['betti']}  euler: {p['euler']}")
        return "\n".join(lines)

    _emit(payload, args.format, render)
    return EXIT_OK


# -- chambers -----------------------------------------------------------------

def cmd_chambers(args) -> int:
    chambers = hs.enumerate_chambers(args.n)
    orbits = hs.orbit_partition(chambers, args.n)
    payload = {
        "schema": SCHEMA,
        "n": args.n,
        "count": len(chambers),
        "orbit_count": len(orbits),
    }
    if args.orbits:
        payload["orbits"] = [[c.to_json() for c in orbit] for orbit in orbits]
    else:
        payload["chambers"] = [c.to_json() for c in chambers]

    def render(p):
        lines = [f"n={p['n']}: {p['count']} maximal chambers in {p['orbit_count']} orbits"]
        if args.orbits:
            for i, orbit in enumerate(p["orbits"]):
                lines.append(f"orbit {i}: {len(orbit)} chambers, representative walls "
                             + ", ".join("{" + ",".join(map(str, W)) + "}"
                                         for W in orbit[0]["walls"]))
        else:
            for c in p["chambers"]:
                lines.append("  signs " + "".join(
                    "+" if v == "+" else "-" for _, v in sorted(c["signs"].items())))
        return "\n".join(lines)

    _emit(payload, args.format, render)
    return EXIT_OK


# -- oracle -------------------------------------------------------------------

def cmd_oracle(args) -> int:
    if args.kind == "keel":
        if args.n is None:
            raise UsageError("oracle keel needs --n")
        pres = oracles.keel_presentation(args.n)
    elif args.kind == "heavylight":
        if args.n is None or args.m is None:
            raise UsageError("oracle heavylight needs --m and --n")
        pres = oracles.heavy_light_presentation(args.m, args.n)
    else:
        pres = oracles.toric_polygon_presentation(args.polygon)
    basis = buchberger(list(pres.relations), MonomialOrder(pres.table),
                       cache_dir=args.cache_dir)
    payload = _presentation_payload(pres, betti(basis), args.n, False)

    def render(p):
        lines = [p["label"]]
        lines.append("generators: " + ", ".join(v["name"] for v in p["variables"]))
        lines.append("relations:")
        lines.extend(f"  {r}" for r in p["relations"])
        lines.append(f"betti: {p['betti']}  euler: {p['euler']}")
        return "\n".join(lines)

    _emit(payload, args.format, render)
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def _check_identities(ideal, texts, cache_dir) -> list[dict]:
    basis = buchberger(list(ideal.generators), MonomialOrder(ideal.table),
                       cache_dir=cache_dir)
    items = []
    for text in texts:
        f = parse_polynomial(ideal.table, text)
        residue = normal_form(f, basis)
        items.append({"identity": f"NF({text})", "residue": str(residue),
                      "ok": residue.is_zero(), "required": True})
    return items


DM_IDENTITIES = [
    "u1^2 - e1*u1 + e2", "u2^2 - e1*u2 + e2", "u3^2 - e1*u3 + e2",
    "u4^2 - e1*u4 + e2", "u5^2 - e1*u5 + e2",
    "u1*u2 - u3*u4", "u1*u3 - u2*u4", "u1*u4 - u2*u3",
    "u2*u3 - u4*u5", "u1*u5 - u2*u3",
    "u1*e1", "u2*e1", "u3*e1", "u4*e1", "u5*e1",
    "u1^2 + 4*u1*u2", "e1^2 - u1*u2", "e1^3", "e2 - 4*u1*u2",
]

LM_IDENTITIES = [
    "e1 - u1 - u2",
    "u2*u3 - u2*u4", "u2*u3 - u2*u5",
    "u3*u4 + 9*u2*u3", "u3*u5 + 9*u2*u3", "u4*u5 + 9*u2*u3",
    "u2^2 - 11*u2*u3",
    "u3^2 - 16*u2*u3", "u3^2 - u4^2", "u3^2 - u5^2",
    "u2*u3^2",
]


def _verify_single_chamber(task):
    n, signs, cache_dir = task
    chambers = hs.enumerate_chambers(n)
    chamber = next(c for c in chambers if c.signs == signs)
    ideal = reduction.build_ideal(n, chamber)
    basis = buchberger(list(ideal.generators), MonomialOrder(ideal.table),
                       cache_dir=cache_dir)
    return signs, betti(basis).to_json()


def _verify_n4(args) -> tuple[list[dict], dict]:
    chambers = hs.enumerate_chambers(4)
    orbits = hs.orbit_partition(chambers, 4)
    items = [
        {"identity": "enumerate_chambers(4) == 8 chambers", "ok": len(chambers) == 8,
         "residue": str(len(chambers)), "required": True},
        {"identity": "orbit count == 2", "ok": len(orbits) == 2,
         "residue": str(len(orbits)), "required": True},
    ]
    tasks = [(4, c.signs, args.cache_dir) for c in chambers]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = sorted(pool.map(_verify_single_chamber, tasks))
    else:
        results = sorted(map(_verify_single_chamber, tasks))
    for signs, table in results:
        items.append({
            "identity": "betti " + "".join("+" if s > 0 else "-" for s in signs),
            "ok": table == {"0": 1, "2": 1}, "residue": json.dumps(table, sort_keys=True),
            "required": True})
    return items, {"chambers": len(chambers), "orbits": len(orbits)}


def _verify_point(args, xi_text, identities, expected_betti):
    xi = hs.parse_point(xi_text)
    chamber = hs.chamber_of(xi)
    ideal = reduction.build_ideal(len(xi), chamber)
    basis = buchberger(list(ideal.generators), MonomialOrder(ideal.table),
                       cache_dir=args.cache_dir)
    table = betti(basis).to_json()
    items = [{"identity": f"betti at ({xi_text})", "ok": table == expected_betti,
              "residue": json.dumps(table, sort_keys=True), "required": True}]
    items.extend(_check_identities(ideal, identities, args.cache_dir))
    return items


def _verify_orbits4(args):
    import random
    rng = random.Random(4)
    chambers = hs.enumerate_chambers(4)
    items = []
    for _ in range(4):
        chamber = rng.choice(chambers)
        sigma = tuple(rng.sample(range(1, 5), 4))
        moved = hs.act_chamber(sigma, chamber)
        ideal = reduction.build_ideal(4, chamber)
        moved_ideal = reduction.build_ideal(4, moved)
        transported = reduction.transport_ideal(ideal, sigma)
        basis = buchberger(list(moved_ideal.generators), MonomialOrder(ideal.table),
                           cache_dir=args.cache_dir)
        basis_t = buchberger(list(transported), MonomialOrder(ideal.table),
                             cache_dir=args.cache_dir)
        mutual = all(normal_form(g, basis).is_zero() for g in transported) and \
            all(normal_form(g, basis_t).is_zero() for g in moved_ideal.generators)
        items.append({
            "identity": f"equivariance sigma={''.join(map(str, sigma))} "
                        f"signs={''.join('+' if s > 0 else '-' for s in chamber.signs)}",
            "ok": mutual and betti(basis).dims == betti(basis_t).dims,
            "residue": "", "required": True})
    return items


def _verify_oracles(args):
    dm = hs.chamber_of(hs.parse_point("2/5,2/5,2/5,2/5,2/5"))
    lm = hs.chamber_of(hs.parse_point("2/3,2/3,2/9,2/9,2/9"))
    items = []
    tables = {}
    for label, gens, tab in [
        ("kirwan DM", reduction.build_ideal(5, dm), None),
        ("kirwan LM", reduction.build_ideal(5, lm), None),
        ("keel(5)", oracles.keel_presentation(5), None),
        ("heavylight(2,5)", oracles.heavy_light_presentation(2, 5), None),
        ("toric hexagon", oracles.toric_polygon_presentation("hexagon"), None),
        ("toric heptagon", oracles.toric_polygon_presentation("heptagon"), None),
    ]:
        rels = gens.generators if isinstance(gens, reduction.KirwanIdeal) else gens.relations
        basis = buchberger(list(rels), MonomialOrder(gens.table), cache_dir=args.cache_dir)
        tables[label] = betti(basis).to_json()
    dm_expect = {"0": 1, "2": 5, "4": 1}
    lm_expect = {"0": 1, "2": 4, "4": 1}
    for label in ("kirwan DM", "keel(5)", "toric heptagon"):
        items.append({"identity": f"{label} betti == (1,5,1)", "ok": tables[label] == dm_expect,
                      "residue": json.dumps(tables[label], sort_keys=True), "required": True})
    for label in ("kirwan LM", "heavylight(2,5)", "toric hexagon"):
        items.append({"identity": f"{label} betti == (1,4,1)", "ok": tables[label] == lm_expect,
                      "residue": json.dumps(tables[label], sort_keys=True), "required": True})

    # informational identification-lemma reports
    lm_ideal = reduction.build_ideal(5, lm)
    hl = oracles.heavy_light_presentation(2, 5)
    mapping = lm_heavy_light_map(lm_ideal.table)
    report = oracles.verify_identification(mapping, hl, lm_ideal, cache_dir=args.cache_dir)
    items.append({"identity": "heavy/light -> LM lemma map", "ok": report.all_ok,
                  "residue": "; ".join(f"{it.relation} -> {it.residue}"
                                       for it in report.failures()) or "0",
                  "required": False})
    hexagon = oracles.toric_polygon_presentation("hexagon")
    report2 = oracles.verify_identification(toric_lm_map(lm_ideal.table), hexagon, lm_ideal,
                                            cache_dir=args.cache_dir)
    items.append({"identity": "toric hexagon -> LM lemma map", "ok": report2.all_ok,
                  "residue": "; ".join(f"{it.relation} -> {it.residue}"
                                       for it in report2.failures()) or "0",
                  "required": False})
    return items


def lm_heavy_light_map(table) -> dict[str, Polynomial]:
    """The paper's D^S -> u images for the Losev-Manin comparison."""
    p = lambda s: parse_polynomial(table, s)
    return {
        "D23": p("u2 - u3"),
        "D24": p("u2 - u4"),
        "D25": p("u2 - u5"),
        "D234": p("-u2 - u3 - u4 - 2*u5"),
        # the two remaining generators follow from the linear relations
        "D235": p("-u2 - u3 - 2*u4 - u5"),
        "D245": p("-u2 - 2*u3 - u4 - u5"),
    }


def toric_lm_map(table) -> dict[str, Polynomial]:
    p = lambda s: parse_polynomial(table, s)
    return {
        "v1": p("u2 - u3"),
        "v3": p("u2 - u4"),
        "v5": p("u2 - u5"),
        "v2": p("-u2 - u3 - u4 - 2*u5"),
        "v4": p("-u2 - 2*u3 - u4 - u5"),
        "v6": p("-u2 - u3 - 2*u4 - u5"),
    }


def cmd_verify(args) -> int:
    if args.case == "n4":
        items, extra = _verify_n4(args)
    elif args.case == "dm5":
        items = _verify_point(args, "2/5,2/5,2/5,2/5,2/5", DM_IDENTITIES,
                              {"0": 1, "2": 5, "4": 1})
        extra = {}
    elif args.case == "lm5":
        items = _verify_point(args, "2/3,2/3,2/9,2/9,2/9", LM_IDENTITIES,
                              {"0": 1, "2": 4, "4": 1})
        extra = {}
    elif args.case == "orbits4":
        items = _verify_orbits4(args)
        extra = {}
    elif args.case == "oracles":
        items = _verify_oracles(args)
        extra = {}
    else:
        raise UsageError(f"unknown verify case {args.case!r}")
    ok = all(item["ok"] for item in items if item["required"])
    payload = {"schema": SCHEMA, "case": args.case, "ok": ok, "items": items, **extra}

    def render(p):
        lines = [f"verify {p['case']}: " + ("PASS" if p["ok"] else "FAIL")]
        for item in p["items"]:
            mark = "ok" if item["ok"] else ("FAIL" if item["required"] else "info")
            suffix = "" if item["ok"] else f"  [{item['residue']}]"
            lines.append(f"  [{mark:4}] {item['identity']}{suffix}")
        return "\n".join(lines)

    _emit(payload, args.format, render)
    return EXIT_OK if ok else EXIT_INTERNAL


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kirwan",
        description="Cohomology of symplectic torus reductions of G(n,2), exactly.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--cache-dir", default=None,
                        help="Groebner cache directory (default: KIRWAN_CACHE_DIR "
                             "or ~/.cache/kirwan; empty string disables)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="chamber of a regular value")
    p.add_argument("--xi", required=True, help="comma-separated exact fractions")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="presentation and Betti numbers of a reduction")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--xi", default=None)
    p.add_argument("--hassett", default=None, help="weight vector a_1,...,a_n")
    p.add_argument("--emit-presentation", action="store_true")
    p.add_argument("--paper-names", action="store_true",
                   help="render e/h generators as sigma_i(...) for side-by-side reading")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("chambers", help="enumerate maximal chambers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orbits", action="store_true")
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("oracle", help="independent presentations")
    p.add_argument("kind", choices=("keel", "heavylight", "toric"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--polygon", default="hexagon")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a named identity suite")
    p.add_argument("--case", required=True,
                   choices=("n4", "dm5", "lm5", "orbits4", "oracles"))
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    if args.cache_dir is None:
        base = default_cache_dir()
        args.cache_dir = str(base) if base is not None else ""
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (hs.DomainError, hs.RegularityError, hs.WeightError, DimensionError) as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
