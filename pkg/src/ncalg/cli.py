"""Command-line front end.

Exit codes: 0 for success and positive verdicts, 1 for negative
mathematical verdicts (violations, inequivalence, counterexamples,
split), 2 for usage or parse errors.  Identical invocations produce
byte-identical output; `--json` wraps results in a schema-versioned
object with floats at 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import hopf as hopfmod
from . import parsing
from . import quaternion as quat
from . import rep as repmod
from .errors import NcalgError, ParseError
from .freealg import NcPoly
from .linalg import Matrix
from .parsing import (
    SCHEMA_VERSION,
    format_ncpoly,
    format_scalar,
    matrices_from_json,
    parse_expression,
    parse_field,
    parse_presentation,
    parse_scalar,
)
from .rewrite import (
    Presentation,
    basis_up_to_degree,
    check_local_confluence,
    ideal_preserved_by_linear_map,
    preset,
)
from .scalars import QQ, Qq

_PRESET_ALIASES = {
    "weyl1": ("weyl", {"m": 1}),
    "weyl2": ("weyl", {"m": 2}),
    "qweyl2": ("qweyl", {"m": 2}),
    "dual": ("dual_numbers", {}),
}


def _load_presentation(args) -> Presentation:
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    if getattr(args, "preset", None):
        return _build_preset(args.preset, getattr(args, "q", None),
                             getattr(args, "field", None))
    raise ParseError("need --preset or --file")


def _build_preset(spec: str, q_text, field_text) -> Presentation:
    name = spec.strip().lower()
    extra = {}
    if name in _PRESET_ALIASES:
        name, extra = _PRESET_ALIASES[name]
    field = parse_field(field_text) if field_text else None
    kwargs = dict(extra)
    if name in ("kq_poly", "qweyl1", "qweyl", "hq"):
        q = parse_scalar(q_text, field or Qq) if q_text else Qq.q()
        kwargs["q"] = q
    elif name == "quat":
        kwargs.setdefault("a", QQ.from_int(-1))
        kwargs.setdefault("b", QQ.from_int(-1))
    elif name in ("weyl", "dual_numbers", "free"):
        if field is not None:
            kwargs["field"] = field
    return preset(name, **kwargs)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, **payload}
        sys.stdout.write(parsing.dump_json(payload) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _floats(text: str):
    return tuple(float(x) for x in text.split(","))


def _fmt_float(x: float) -> str:
    return format(x, ".17g")


def _fmt_vec(v) -> str:
    return ",".join(_fmt_float(x) for x in v)


# ---------------------------------------------------------------------------
# subcommand handlers (each returns the exit code)
# ---------------------------------------------------------------------------

def cmd_nf(args) -> int:
    pres = _load_presentation(args)
    p = parse_expression(args.expr, pres.alphabet, pres.field)
    out = pres.normal_form(p)
    _emit(args, {"command": "nf", "input": args.expr,
                 "normal_form": format_ncpoly(out)}, format_ncpoly(out))
    return 0


def cmd_basis(args) -> int:
    pres = _load_presentation(args)
    rs = pres.rewrite_system()
    check_local_confluence(rs, max(2 * args.maxdeg,
                                   max((len(r.lhs) for r in rs.rules), default=1)))
    res = basis_up_to_degree(rs, args.maxdeg)
    words = [parsing._format_word(pres.alphabet, w) for w in res.words]
    _emit(args, {"command": "basis", "maxdeg": args.maxdeg,
                 "provisional": res.provisional, "words": words},
          " ".join(words) + ("  (provisional)" if res.provisional else ""))
    return 0


def cmd_confluence(args) -> int:
    pres = _load_presentation(args)
    rs = pres.rewrite_system()
    res = check_local_confluence(rs, args.maxdeg)
    if res.locally_confluent:
        _emit(args, {"command": "confluence", "maxdeg": args.maxdeg,
                     "locally_confluent": True},
              f"locally confluent up to degree {args.maxdeg}")
        return 0
    w, t1, t2 = res.counterexample
    word = parsing._format_word(pres.alphabet, w)
    _emit(args, {"command": "confluence", "maxdeg": args.maxdeg,
                 "locally_confluent": False, "overlap_word": word,
                 "reducts": [format_ncpoly(t1), format_ncpoly(t2)]},
          f"counterexample at {word}: {format_ncpoly(t1)} != {format_ncpoly(t2)}")
    return 1


def _parse_inline_matrix(text: str, field) -> Matrix:
    rows = [[parse_scalar(e.strip(), field) for e in row.split(",")]
            for row in text.split(";")]
    return Matrix(field, rows)


def cmd_ideal_map(args) -> int:
    pres = _load_presentation(args)
    g = _parse_inline_matrix(args.matrix, pres.field)
    res = ideal_preserved_by_linear_map(pres, g)
    if res.preserved:
        lam = format_scalar(res.lam) if res.lam is not None else None
        coeffs = [[format_scalar(c) for c in row] for row in res.coefficients]
        _emit(args, {"command": "ideal-map", "preserved": True,
                     "lambda": lam, "coefficients": coeffs},
              "preserved" + (f" with lambda = {lam}" if lam else ""))
        return 0
    ridx, image = res.witness
    _emit(args, {"command": "ideal-map", "preserved": False,
                 "relation_index": ridx, "image": format_ncpoly(image)},
          f"not preserved: relation {ridx} maps to {format_ncpoly(image)}")
    return 1


def _quat_params(args):
    a = parse_scalar(args.a) if args.a else QQ.from_int(-1)
    b = parse_scalar(args.b) if args.b else QQ.from_int(-1)
    return quat.QuatParams(a, b)


def _parse_quat(params, text: str) -> quat.QuatElem:
    parts = [parse_scalar(p.strip(), params.field) for p in text.split(",")]
    if len(parts) != 4:
        raise ParseError("quaternion needs 4 comma-separated coefficients")
    return quat.QuatElem(params, *parts)


def cmd_quat_mul(args) -> int:
    params = _quat_params(args)
    x = _parse_quat(params, args.x)
    y = _parse_quat(params, args.y)
    z = quat.qmul(x, y)
    coeffs = [format_scalar(c) for c in z.coeffs]
    _emit(args, {"command": "quat mul", "result": coeffs}, ",".join(coeffs))
    return 0


def cmd_quat_norm(args) -> int:
    params = _quat_params(args)
    x = _parse_quat(params, args.x)
    n = x.norm()
    _emit(args, {"command": "quat norm", "norm": format_scalar(n)},
          format_scalar(n))
    return 0


def cmd_quat_split_test(args) -> int:
    a, b = Fraction(args.a), Fraction(args.b)
    res = quat.is_division_over_Q(a, b)
    symbols = {str(k): v for k, v in sorted(res.local_symbols.items(), key=str)}
    if res.is_division:
        _emit(args, {"command": "quat split-test", "a": str(a), "b": str(b),
                     "verdict": "division", "local_symbols": symbols},
              "division")
        return 0
    witness = ",".join(str(c) for c in res.witness) if res.witness else None
    _emit(args, {"command": "quat split-test", "a": str(a), "b": str(b),
                 "verdict": "split", "local_symbols": symbols,
                 "norm_zero_witness": witness},
          f"split (norm-zero witness {witness})")
    return 1


def cmd_quat_rotate(args) -> int:
    u = quat.axis_angle_to_versor(args.angle, _floats(args.axis))
    out = quat.rotate_vector(u, _floats(args.vec))
    _emit(args, {"command": "quat rotate", "result": [_fmt_float(c) for c in out]},
          _fmt_vec(out))
    return 0


def cmd_quat_matrix(args) -> int:
    u = _floats(args.versor)
    m = quat.versor_to_matrix(u)
    _emit(args, {"command": "quat matrix",
                 "rows": [[_fmt_float(x) for x in row] for row in m]},
          "\n".join(_fmt_vec(row) for row in m))
    return 0


def _load_matrices(args, pres):
    with open(args.matrices, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return matrices_from_json(obj, pres.field)


def cmd_rep_verify(args) -> int:
    pres = _load_presentation(args)
    mats = _load_matrices(args, pres)
    res = repmod.verify_representation(pres, mats)
    if res.ok:
        _emit(args, {"command": "rep verify", "verified": True}, "verified")
        return 0
    rel, residual = res.violations[0]
    _emit(args, {"command": "rep verify", "verified": False,
                 "relation": format_ncpoly(rel),
                 "residual": [[format_scalar(x) for x in row]
                              for row in residual.rows]},
          f"violation: {format_ncpoly(rel)} does not vanish")
    return 1


def cmd_rep_irreducible(args) -> int:
    pres = _load_presentation(args)
    rep = repmod.MatRep(pres, _load_matrices(args, pres))
    ver = repmod.verify_representation(pres, rep)
    if not ver.ok:
        _emit(args, {"command": "rep irreducible", "verified": False},
              "not a representation")
        return 1
    res = repmod.is_irreducible(rep)
    payload = {"command": "rep irreducible",
               "absolutely_irreducible": res.absolutely_irreducible,
               "commutant_dim": res.commutant_dim,
               "image_algebra_dim": res.image_algebra_dim}
    if res.absolutely_irreducible:
        _emit(args, payload, "absolutely irreducible (commutant dimension 1)")
        return 0
    _emit(args, payload,
          f"not absolutely irreducible (commutant dimension {res.commutant_dim})")
    return 1


def cmd_rep_equivalent(args) -> int:
    pres = _load_presentation(args)
    r1 = repmod.MatRep(pres, _load_matrices(args, pres))
    with open(args.matrices2, "r", encoding="utf-8") as fh:
        r2 = repmod.MatRep(pres, matrices_from_json(json.load(fh), pres.field))
    res = repmod.are_equivalent(r1, r2)
    payload = {"command": "rep equivalent", "status": res.status}
    if res.status == "equivalent":
        payload["intertwiner"] = [[format_scalar(x) for x in row]
                                  for row in res.intertwiner.rows]
        _emit(args, payload, "equivalent")
        return 0
    _emit(args, payload, res.status)
    return 1


def cmd_rep_classify(args) -> int:
    grid = None
    if args.grid:
        field = repmod.cyclotomic_field(args.order)
        grid = [parse_scalar(g.strip(), field) for g in args.grid.split(",")]
    sweep = tuple(int(c) for c in args.sweep.split(",")) if args.sweep else (0, 1, -1)
    report = repmod.classify_a1q_irreducibles(
        args.order, grid=grid, sweep=sweep, seed=args.seed,
        extra_dim=args.extra_dim)
    payload = parsing.classification_report_to_json(report)
    if args.json:
        sys.stdout.write(parsing.dump_json(payload) + "\n")
    else:
        lines = [f"order {report.order}: "
                 f"{len(report.representatives)} classes, "
                 f"dimensions {report.dimensions_found}"]
        for fam in report.families:
            lines.append(f"family: {fam['description']} "
                         f"[value {format_scalar(fam['product_value'])}]")
        for claim in report.claims:
            lines.append(claim)
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_rep_weyl_obstruction(args) -> int:
    cert = repmod.weyl_trace_obstruction(args.n, seed=args.seed)
    text = (f"tr(PQ-QP)={format_scalar(cert.lhs_trace)} != "
            f"{format_scalar(cert.rhs_trace)}=tr(I); no {args.n}-dimensional "
            f"solution exists")
    _emit(args, {"command": "rep weyl-obstruction", "n": args.n,
                 "lhs_trace": format_scalar(cert.lhs_trace),
                 "rhs_trace": format_scalar(cert.rhs_trace),
                 "contradiction": cert.contradiction}, text)
    return 0


def cmd_rep_weyl_truncate(args) -> int:
    P, Q, defect = repmod.truncated_weyl_rep(args.n)
    entries = [(i, j, format_scalar(defect[i, j]))
               for i in range(args.n) for j in range(args.n)
               if not defect[i, j].is_zero()]
    _emit(args, {"command": "rep weyl-truncate", "n": args.n,
                 "defect_nonzero_entries": [[i, j, v] for i, j, v in entries]},
          "; ".join(f"defect[{i},{j}] = {v}" for i, j, v in entries))
    return 0


def _load_hopf(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        return parsing.parse_hopf_file(fh.read())


def cmd_hopf_check(args) -> int:
    H = _load_hopf(args)
    results = hopfmod.check_bialgebra(H, args.maxdeg)
    rows = []
    ok = True
    for res in results:
        rows.append({"check": res.kind, "ok": res.ok, "maxdeg": res.maxdeg})
        ok = ok and res.ok
    text = "\n".join(
        f"{row['check']}: {'OK' if row['ok'] else 'VIOLATION'}"
        + (f" (degree <= {row['maxdeg']})" if row["maxdeg"] else "")
        for row in rows
    )
    _emit(args, {"command": "hopf check", "results": rows, "ok": ok}, text)
    return 0 if ok else 1


def cmd_hopf_act(args) -> int:
    H = _load_hopf(args)
    if args.target_preset != "kq_poly":
        raise ParseError("only the quantum-plane action is built in")
    q = parse_scalar(args.q, H.pres.field) if args.q else Qq.q()
    target = preset("kq_poly", q=q)
    spec = hopfmod.hq_action_on_quantum_plane(H, target, q)
    h = parse_expression(args.h, H.pres.alphabet, H.pres.field)
    a = parse_expression(args.a, target.alphabet, target.field)
    out = hopfmod.act(spec, h, a)
    _emit(args, {"command": "hopf act", "result": format_ncpoly(out)},
          format_ncpoly(out))
    return 0


def _load_single_matrix(path: str) -> Matrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parsing.matrix_from_json(json.load(fh))


def cmd_hopf_hecke(args) -> int:
    M = _load_single_matrix(args.matrix)
    q = parse_scalar(args.q, M.field)
    res = hopfmod.check_hecke(M, q)
    _emit(args, {"command": "hopf hecke", "ok": res.ok},
          "OK" if res.ok else f"violation ({res.witness[0]})")
    return 0 if res.ok else 1


def cmd_hopf_braid(args) -> int:
    M = _load_single_matrix(args.matrix)
    res = hopfmod.check_braid(M)
    _emit(args, {"command": "hopf braid", "ok": res.ok},
          "OK" if res.ok else "violation")
    return 0 if res.ok else 1


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _add_presentation_source(sp):
    sp.add_argument("--preset", help="preset name (e.g. weyl1, kq_poly, quat)")
    sp.add_argument("--file", help="presentation file")
    sp.add_argument("--q", help="parameter q for q-dependent presets")
    sp.add_argument("--field", help="field for parameter parsing (Q, Qq, cyclo N)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncalg",
                                 description="exact engine for finitely "
                                             "presented noncommutative algebras")
    ap.add_argument("--json", action="store_true", help="JSON output")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("nf", help="normal form of an expression")
    _add_presentation_source(sp)
    sp.add_argument("--expr", required=True)
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("basis", help="monomial basis up to a degree")
    _add_presentation_source(sp)
    sp.add_argument("--maxdeg", type=int, default=4)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("confluence", help="local confluence check")
    _add_presentation_source(sp)
    sp.add_argument("--maxdeg", type=int, default=4)
    sp.set_defaults(func=cmd_confluence)

    sp = sub.add_parser("ideal-map", help="quadratic ideal preservation")
    _add_presentation_source(sp)
    sp.add_argument("--matrix", required=True,
                    help="generator images, rows separated by ';'")
    sp.set_defaults(func=cmd_ideal_map)

    qp = sub.add_parser("quat", help="quaternion operations")
    qsub = qp.add_subparsers(dest="subcommand", required=True)

    sp = qsub.add_parser("mul")
    sp.add_argument("--a", help="structure constant a (default -1)")
    sp.add_argument("--b", help="structure constant b (default -1)")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.set_defaults(func=cmd_quat_mul)

    sp = qsub.add_parser("norm")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--x", required=True)
    sp.set_defaults(func=cmd_quat_norm)

    sp = qsub.add_parser("split-test")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_quat_split_test)

    sp = qsub.add_parser("rotate")
    sp.add_argument("--axis", required=True)
    sp.add_argument("--angle", type=float, required=True)
    sp.add_argument("--vec", required=True)
    sp.set_defaults(func=cmd_quat_rotate)

    sp = qsub.add_parser("matrix")
    sp.add_argument("--versor", required=True)
    sp.set_defaults(func=cmd_quat_matrix)

    rp = sub.add_parser("rep", help="representation operations")
    rsub = rp.add_subparsers(dest="subcommand", required=True)

    sp = rsub.add_parser("verify")
    _add_presentation_source(sp)
    sp.add_argument("--matrices", required=True, help="matrix JSON file")
    sp.set_defaults(func=cmd_rep_verify)

    sp = rsub.add_parser("irreducible")
    _add_presentation_source(sp)
    sp.add_argument("--matrices", required=True)
    sp.set_defaults(func=cmd_rep_irreducible)

    sp = rsub.add_parser("equivalent")
    _add_presentation_source(sp)
    sp.add_argument("--matrices", required=True)
    sp.add_argument("--matrices2", required=True)
    sp.set_defaults(func=cmd_rep_equivalent)

    sp = rsub.add_parser("classify-a1q")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--grid", help="comma-separated scalars")
    sp.add_argument("--sweep", help="comma-separated integer coefficients")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--extra-dim", type=int, default=1)
    sp.set_defaults(func=cmd_rep_classify)

    sp = rsub.add_parser("weyl-obstruction")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_rep_weyl_obstruction)

    sp = rsub.add_parser("weyl-truncate")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_rep_weyl_truncate)

    hp = sub.add_parser("hopf", help="Hopf structure operations")
    hsub = hp.add_subparsers(dest="subcommand", required=True)

    sp = hsub.add_parser("check")
    sp.add_argument("--file", required=True)
    sp.add_argument("--maxdeg", type=int, default=6)
    sp.set_defaults(func=cmd_hopf_check)

    sp = hsub.add_parser("act")
    sp.add_argument("--file", required=True)
    sp.add_argument("--h", required=True, help="acting element of H")
    sp.add_argument("--a", required=True, help="target element")
    sp.add_argument("--q", help="quantum parameter (default generic q)")
    sp.add_argument("--target-preset", default="kq_poly")
    sp.set_defaults(func=cmd_hopf_act)

    sp = hsub.add_parser("hecke")
    sp.add_argument("--matrix", required=True, help="matrix JSON file")
    sp.add_argument("--q", required=True)
    sp.set_defaults(func=cmd_hopf_hecke)

    sp = hsub.add_parser("braid")
    sp.add_argument("--matrix", required=True, help="matrix JSON file")
    sp.set_defaults(func=cmd_hopf_braid)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except NcalgError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
