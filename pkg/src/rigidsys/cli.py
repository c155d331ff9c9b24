"""Command-line front end.

Every subcommand prints JSON (or TSV for list results).  Exit status is 0 on
success, 2 for invalid input and 1 when two independent computations disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .alcove import AlcovePoint, LineBundleData, kappa, parse_fraction_list
from .classical import (
    HypergeomData,
    PochhammerData,
    hypergeom_exponents,
    hypergeom_katz_lower,
    hypergeom_to_classes,
    hypergeom_unitary,
    pochhammer_exponents,
    pochhammer_unitary,
)
from .divisors import CycleData, FaceData, build_Daj, divisor_class, wall_slack
from .fusion import FusionAlgebra, h0, verlinde_rank, witten_rank
from .induction import LeviBundle, face_decompose, induce, pic_prime_test
from .kz import KZSystem, kz_exponents, kz_match
from .partitions import SchubertIndex
from .polytope import (
    bundle_points,
    canonical_bundle,
    central_points,
    dd_vertex_enumeration,
    f_line_bundles,
    f_vertex_orbits,
    f_vertices,
    facets,
    membership,
)
from .qschubert import GrassmannianRing, GWQuery, gw_generalized, gw_invariant
from .strangedual import ConjClassTuple, classify, from_bundle, galois_test, rigidity_numerics


class ValidationError(ValueError):
    pass


def jsonable(obj: Any) -> Any:
    """Convert results to plain JSON, with rationals as ``"p/q"`` strings."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, AlcovePoint):
        return [str(x) for x in obj.coords]
    if isinstance(obj, SchubertIndex):
        return list(obj.elems)
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(x) for x in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda x: json.dumps(x, sort_keys=True))
        return items
    return obj


def _load(text: str) -> Any:
    """Parse a JSON argument; ``@path`` reads the JSON from a file."""
    try:
        if text.startswith("@"):
            return json.loads(Path(text[1:]).read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read JSON: {exc}") from exc


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise ValidationError(f"expected integers: {text!r}") from exc


def _fractions(text: str) -> tuple[Fraction, ...]:
    try:
        return parse_fraction_list(text.replace(",", " ").split())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"expected rationals: {text!r}") from exc


def _points(obj) -> tuple[AlcovePoint, ...]:
    pts = []
    for p in obj:
        coords = parse_fraction_list(p)
        pts.append(AlcovePoint(len(coords), coords))
    return tuple(pts)


def _query(obj: dict) -> GWQuery:
    return GWQuery(int(obj["r"]), int(obj["n"]), int(obj.get("d", 0)), tuple(tuple(i) for i in obj["indices"]), int(obj.get("D", 0)))


# subcommands


def cmd_gw(args) -> Any:
    q = _query(_load(args.query))
    value = gw_generalized(q)
    out = {"value": value}
    if args.check:
        oracle = witten_rank(q)
        out["verlinde"] = oracle
        if oracle != value:
            raise AssertionError(f"GW disagreement: quantum ring gives {value}, Verlinde gives {oracle}")
    return out


def cmd_qmul(args) -> Any:
    ring = GrassmannianRing(args.r, args.n)
    prod = ring.schubert(_ints(args.a)) * ring.schubert(_ints(args.b))
    terms = sorted(prod.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    return [{"partition": list(p), "q_degree": d, "coefficient": c} for (p, d), c in terms]


def cmd_fusion(args) -> Any:
    weights = [tuple(w) for w in _load(args.weights)]
    return {"rank": verlinde_rank(FusionAlgebra(args.r, args.k), weights)}


def cmd_h0(args) -> Any:
    L = LineBundleData.from_json(_load(args.bundle))
    return {"h0": h0(L, check=args.check)}


def cmd_facets(args) -> Any:
    return [f.to_json() for f in facets(args.n, args.s, args.d_max)]


def cmd_fvertices(args) -> Any:
    if args.orbits:
        return [{"bundle": L, "point": bundle_points(L)} for L in f_vertex_orbits(args.n, args.s, args.min_level)]
    return [c for c in f_vertices(args.n, args.s, with_facets=not args.no_facets) if c.bundle.level >= args.min_level]


def cmd_member(args) -> Any:
    return {"member": membership(_points(_load(args.points)), check=not args.no_check)}


def _classes(text: str) -> ConjClassTuple:
    return ConjClassTuple.from_json(_load(text))


def cmd_classify(args) -> Any:
    return classify(_classes(args.classes))


def _rigid_entry(L: LineBundleData) -> dict:
    A = from_bundle(L)
    return {"classes": A, "rank": A.rank, "dual_bundle": L, "numerics": list(rigidity_numerics(A))}


def cmd_rigids(args) -> Any:
    orbits = f_vertex_orbits(args.n, args.s, args.min_level)
    if args.threads > 1:
        with ProcessPoolExecutor(args.threads) as pool:
            return list(pool.map(_rigid_entry, orbits))
    return [_rigid_entry(L) for L in orbits]


def cmd_galois(args) -> Any:
    A = _classes(args.classes)
    return {"finite_monodromy": galois_test(A)}


def cmd_kz_match(args) -> Any:
    c = CycleData.from_json(_load(args.cycle))
    m = kz_match(c)
    return {
        "match": m.ok,
        "rank_kz": m.rank_kz,
        "rank_dual": m.rank_dual,
        "kz_points": [sorted((str(k), v) for k, v in p.items()) for p in m.kz_points],
        "dual_points": [sorted((str(k), v) for k, v in p.items()) for p in m.dual_points],
        "kz_infinity": m.kz_infinity,
        "dual_infinity": m.dual_infinity,
    }


def cmd_kz_exponents(args) -> Any:
    obj = _load(args.system)
    sys_ = KZSystem(int(obj["r"]), int(obj["k"]), tuple(tuple(w) for w in obj["weights"]))
    t = kz_exponents(sys_)
    return {"rank": sys_.rank, "points": [[[e, m] for e, m in pt] for pt in t.points], "infinity": t.infinity}


def _table(t) -> list:
    return [{"point": lab, "exponents": [[e, m] for e, m in pt]} for lab, pt in zip(t.labels, t.points)]


def cmd_hypergeom(args) -> Any:
    h = HypergeomData(_fractions(args.alpha), _fractions(args.beta))
    out = {"unitary": hypergeom_unitary(h), "irreducible": h.is_irreducible(), "exponents": _table(hypergeom_exponents(h))}
    if args.lower:
        low = hypergeom_katz_lower(h)
        out["lowered"] = {"alpha": list(low.alpha), "beta": list(low.beta), "unitary": hypergeom_unitary(low)}
    if args.n:
        out["classes"] = hypergeom_to_classes(h, args.n)
    return out


def cmd_pochhammer(args) -> Any:
    p = PochhammerData(_fractions(args.lam), Fraction(args.rho))
    return {"unitary": pochhammer_unitary(p), "rho_prime": p.rho_prime, "exponents": _table(pochhammer_exponents(p))}


def cmd_divisor_class(args) -> Any:
    c = CycleData.from_json(_load(args.cycle))
    L = divisor_class(c)
    return {"bundle": L, "fund": [list(w.fund) for w in L.weights], "wall_slack": wall_slack(L, c.J, c.d)}


def cmd_daj(args) -> Any:
    f = FaceData.from_json(_load(args.face)).validate()
    c, L = build_Daj(f, args.a, args.j)
    return {"cycle": c, "bundle": L, "fund": [list(w.fund) for w in L.weights]}


def cmd_face_decompose(args) -> Any:
    f = FaceData.from_json(_load(args.face)).validate()
    return face_decompose(LineBundleData.from_json(_load(args.bundle)), f)


def cmd_induce(args) -> Any:
    f = FaceData.from_json(_load(args.face)).validate()
    L = induce(LeviBundle.from_json(_load(args.levi)), f)
    return {"bundle": L, "fund": [list(w.fund) for w in L.weights], "pic_prime": pic_prime_test(L, f)}


def cmd_polytope_oracle(args) -> Any:
    verts = dd_vertex_enumeration(args.n, args.s)
    expected = {bundle_points(L) for L in f_line_bundles(args.n, args.s)} | central_points(args.n, args.s)
    if verts != expected:
        raise AssertionError(f"vertex disagreement: DD finds {len(verts)}, F-vertices plus centres give {len(expected)}")
    return {"vertices": len(verts), "points": verts}


# reproductions of the worked examples


def _rigid_summary(L: LineBundleData) -> dict:
    A = from_bundle(L)
    lhs, rhs, ok = rigidity_numerics(A)
    return {"classes": A.classes, "rigidity": [lhs, rhs, ok]}


def repro_oldie() -> dict:
    four = gw_invariant(GWQuery(2, 4, 0, ((2, 4),) * 4))
    f = FaceData(1, 2, 4, ((1, 4), (1, 3), (1, 3)))
    c, L = build_Daj(f, 4, 1)
    return {
        "lines_through_four_lines": four,
        "face_gw": f.gw(),
        "cycle": c,
        "bundle": L,
        "point": [kappa(w, L.level) for w in L.weights],
        "rigid": _rigid_summary(L),
        "kz_match": kz_match(c).ok,
    }


def repro_thaddeus() -> dict:
    f = FaceData(2, 4, 8, ((2, 3, 4, 7), (1, 3, 4, 7), (1, 3, 4, 7)))
    c, L = build_Daj(f, 2, 1)
    report = classify(from_bundle(L))
    return {
        "face_gw": f.gw(),
        "cycle": c,
        "bundle": L,
        "fund": [w.fund for w in L.weights],
        "point": [kappa(w, L.level) for w in L.weights],
        "rigid": _rigid_summary(L),
        "finite_monodromy": report.finite_monodromy,
        "kz_match": kz_match(c).ok,
    }


def repro_wilson() -> dict:
    c = CycleData(0, 3, 9, ((2, 6, 9), (3, 6, 9), (3, 6, 9)))
    L = divisor_class(c)
    face = FaceData(1, 3, 9, ((1, 2, 6), (3, 6, 9), (3, 6, 9)))
    _, L11 = build_Daj(face, 1, 1)
    return {
        "bundle": L,
        "fund": [w.fund for w in L.weights],
        "wall_slack": wall_slack(L, c.J, c.d),
        "rigid": _rigid_summary(L),
        "same_as_D11": L11 == L,
        "kz_match": kz_match(c).ok,
    }


def repro_ko(max_k: int = 4) -> dict:
    out = {}
    for k in range(2, max_k + 1):
        n = 3 * k - 1
        I1 = tuple(range(2, n + 1, 3))
        I2 = (k,) + tuple(range(2 * k + 1, n + 1))
        f = FaceData(0, k, n, (I1, I2, I1))
        _, L = build_Daj(f, 2 * k + 1, 2)
        out[str(k)] = {"level": L.level, "fund": [w.fund for w in L.weights], "rigid": _rigid_summary(L)}
    return out


def repro_rex() -> dict:
    f = FaceData(0, 3, 9, ((3, 7, 8), (3, 6, 9), (3, 6, 9)))
    L = induce(LeviBundle(((1, 1, 0),) * 3, 1), f)
    dec = face_decompose(L, f)
    return {
        "face_gw": f.gw(),
        "induced": L,
        "fund": [w.fund for w in L.weights],
        "ray_coefficients": dec.coefficients,
        "pure_f2": all(b == 0 for b in dec.coefficients),
        "h0": h0(L),
    }


def repro_smalln() -> dict:
    out = {}
    for n in range(2, 7):
        bundles = f_line_bundles(n, 3)
        catalog = set(bundles)
        orbits = f_vertex_orbits(n, 3)
        out[str(n)] = {
            "f_line_bundles": len(bundles),
            "orbits": [canonical_bundle(L) for L in orbits],
            "finite_monodromy": [galois_test(from_bundle(L), catalog) for L in orbits],
        }
    hyper = [("1/6 5/6", "0 4/6"), ("1/6 5/6", "0 3/6"), ("1/6 3/6 5/6", "0 2/6 4/6")]
    out["hypergeometric"] = [
        hypergeom_unitary(HypergeomData(_fractions(a), _fractions(b))) for a, b in hyper
    ]
    return out


REPRO: dict[str, Callable[[], dict]] = {
    "oldie": repro_oldie,
    "thaddeus": repro_thaddeus,
    "wilson": repro_wilson,
    "ko": repro_ko,
    "rex": repro_rex,
    "smalln": repro_smalln,
}


def fixtures_dir() -> Path:
    env = os.environ.get("RIGIDSYS_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "fixtures" / "golden"


def _diff(expected: Any, actual: Any, path: str = "") -> list[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual)):
            if k not in actual:
                out.append(f"{path}/{k}: missing from result")
            elif k not in expected:
                out.append(f"{path}/{k}: not in golden file")
            else:
                out += _diff(expected[k], actual[k], f"{path}/{k}")
        return out
    if expected != actual:
        return [f"{path}: golden {json.dumps(expected)} but computed {json.dumps(actual)}"]
    return []


def cmd_repro(args) -> Any:
    if args.name not in REPRO:
        raise ValidationError(f"unknown example {args.name!r}; choose from {', '.join(sorted(REPRO))}")
    result = jsonable(REPRO[args.name]())
    path = (Path(args.fixtures) if args.fixtures else fixtures_dir()) / f"{args.name}.json"
    if args.update:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(result, indent=1, sort_keys=True) + "\n")
        return {"written": str(path)}
    if not path.exists():
        raise ValidationError(f"no golden file at {path}")
    problems = _diff(json.loads(path.read_text()), result)
    if problems:
        raise AssertionError("repro mismatch:\n" + "\n".join(problems))
    return {"example": args.name, "match": True}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rigidsys", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("gw", cmd_gw, "generalized GW number")
    sp.add_argument("--query", required=True, help='JSON {"r","n","d","D","indices"}')
    sp.add_argument("--check", action="store_true", help="compare with the Verlinde formula")

    sp = add("qmul", cmd_qmul, "quantum product of two Schubert classes")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", required=True, help="partition, e.g. 2,1")
    sp.add_argument("--b", required=True)

    sp = add("fusion", cmd_fusion, "conformal block rank")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--weights", required=True, help="JSON list of row vectors")

    sp = add("h0", cmd_h0, "sections of a parabolic line bundle")
    sp.add_argument("--bundle", required=True)
    sp.add_argument("--check", action="store_true")

    for name, func, help_ in (
        ("facets", cmd_facets, "inequalities of the polytope"),
        ("fvertices", cmd_fvertices, "F-vertices with certificates"),
        ("rigids", cmd_rigids, "rigid unitary tuples, one per orbit"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--s", type=int, default=3)
        if name == "facets":
            sp.add_argument("--d-max", type=int, default=None)
        else:
            sp.add_argument("--min-level", type=int, default=2 if name == "rigids" else 1)
        if name == "fvertices":
            sp.add_argument("--orbits", action="store_true", help="one representative per symmetry orbit")
            sp.add_argument("--no-facets", action="store_true")
        if name == "rigids":
            sp.add_argument("--threads", type=int, default=1)

    sp = add("member", cmd_member, "membership of a tuple of alcove points")
    sp.add_argument("--points", required=True, help='JSON list of points, e.g. [["1/2","-1/2"], ...]')
    sp.add_argument("--no-check", action="store_true")

    for name, func, help_ in (("classify", cmd_classify, "classify conjugacy-class data"), ("galois", cmd_galois, "finite monodromy test")):
        sp = add(name, func, help_)
        sp.add_argument("--classes", required=True, help='JSON {"n","rank","classes"}')

    sp = add("kz-match", cmd_kz_match, "KZ exponents against the strange dual")
    sp.add_argument("--cycle", required=True)
    sp = add("kz-exponents", cmd_kz_exponents, "local exponents of a KZ system")
    sp.add_argument("--system", required=True, help='JSON {"r","k","weights"}')

    sp = add("hypergeom", cmd_hypergeom, "hypergeometric data")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--lower", action="store_true")
    sp.add_argument("--n", type=int, default=None, help="also print the classes as n-th root exponents")

    sp = add("pochhammer", cmd_pochhammer, "Pochhammer data")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--rho", required=True)

    sp = add("divisor-class", cmd_divisor_class, "class of a codimension-one cycle")
    sp.add_argument("--cycle", required=True)

    sp = add("daj", cmd_daj, "basic ray D(a, j) of a face")
    sp.add_argument("--face", required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)

    sp = add("face-decompose", cmd_face_decompose, "split a bundle on a face")
    sp.add_argument("--face", required=True)
    sp.add_argument("--bundle", required=True)

    sp = add("induce", cmd_induce, "induce Levi data onto a face")
    sp.add_argument("--face", required=True)
    sp.add_argument("--levi", required=True)

    sp = add("polytope-oracle", cmd_polytope_oracle, "exact vertex enumeration cross-check")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, default=3)

    sp = add("repro", cmd_repro, "replay a worked example against its golden file")
    sp.add_argument("name")
    sp.add_argument("--update", action="store_true", help="rewrite the golden file")
    sp.add_argument("--fixtures", default=None, help="directory of golden files")
    return p


def _emit(result: Any, fmt: str) -> str:
    data = jsonable(result)
    if fmt == "tsv" and isinstance(data, list) and data and all(isinstance(x, dict) for x in data):
        keys = list(data[0])
        lines = ["\t".join(keys)]
        for row in data:
            lines.append("\t".join(v if isinstance(v, str) else json.dumps(v, sort_keys=True) for v in (row.get(k) for k in keys)))
        return "\n".join(lines)
    return json.dumps(data, indent=1, sort_keys=True)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        result = args.func(args)
    except AssertionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError, IndexError, ZeroDivisionError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    print(_emit(result, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
