"""Command-line entry point: ``twistder <subcommand> ...``.

Exit status is 0 when every verdict passes, 1 when some verification fails
(the report carries the witness) and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import catalog
from .bialgebra import Bialgebra, FormatError, PreconditionError, verify_bialgebra
from .cohochschild import TensorTooLarge, cohomology
from .io import (
    dumps,
    emit_algebra,
    loads,
    parse_algebra,
    polynomial_tensor_from_json,
    report_document,
    tensor_from_json,
)
from .lie.algebra import LieAlgebra, exterior_invariants, outer_derivations, schouten, semidirect_outder_tw, verify_lie, wedge_from_vec
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_algebra(path: str, kind: type | None = None):
    text = _read(path)
    a = parse_algebra(text)
    if kind is not None and not isinstance(a, kind):
        want = "bialgebra" if kind is Bialgebra else "lie_algebra"
        raise InputError(f"{path} does not describe a {want}")
    return a, text


def _json_arg(value: str) -> tuple[Any, str]:
    """Inline JSON when the argument looks like JSON, otherwise a file path."""
    text = value if value.lstrip()[:1] in "[{" else _read(value)
    return loads(text), text


def _derivation_dict(b: Bialgebra, t) -> dict:
    cols = t.d.columns()
    return {
        "d": {b.basis_names[i]: b.pretty(cols[i]) for i in range(b.dim) if cols[i]},
        "phi": t.phi.pretty(b.basis_names),
    }


# ---------------------------------------------------------------------------
# Subcommands: each returns (input text, reports, results)
# ---------------------------------------------------------------------------


def cmd_verify(args) -> tuple[str, list[Report], dict]:
    a, text = _load_algebra(args.file)
    rep = verify_bialgebra(a) if isinstance(a, Bialgebra) else verify_lie(a)
    return text, [rep], {"kind": "bialgebra" if isinstance(a, Bialgebra) else "lie_algebra", "dim": a.dim}


def cmd_cohomology(args) -> tuple[str, list[Report], dict]:
    b, text = _load_algebra(args.file, Bialgebra)
    top = args.max_degree if args.max_degree is not None else args.degree
    if args.degree < 1 or top < args.degree:
        raise InputError("degrees must satisfy 1 <= degree <= max-degree")
    out = []
    for n in range(args.degree, top + 1):
        res = cohomology(b, n)
        out.append({
            "degree": n,
            "dim": res.dim,
            "cocycle_dim": res.cocycle_dim,
            "coboundary_dim": res.coboundary_dim,
            "representatives": [r.pretty(b.basis_names) for r in res.representatives],
        })
    return text, [], {"cohomology": out}


def cmd_twisted(args) -> tuple[str, list[Report], dict]:
    from .twisted.crossed import crossed_module
    from .twisted.derivations import outer_quotients, separate, twisted_derivation_space

    b, text = _load_algebra(args.file, Bialgebra)
    ders = twisted_derivation_space(b)
    reports: list[Report] = []
    results: dict = {"der_tw_dim": len(ders), "der_tw_basis": [_derivation_dict(b, t) for t in ders]}
    if args.crossed_module or args.jacobiator:
        cm = crossed_module(b)
        m = cm.module
        reports.append(m.verify_axioms())
        results["pi0_dim"] = m.pi0_dim
        results["pi1_dim"] = m.pi1.dim
        results["pi0_structure_constants"] = m.pi0_structure_constants
        results["pi0_representatives"] = [_derivation_dict(b, t) for t in cm.pi0_representatives]
        results["pi1_basis"] = [b.pretty(v) for v in cm.pi1_elements]
        if args.jacobiator:
            results["jacobiator"] = {str(k): b.pretty(cm.element(v)) for k, v in sorted(m.jacobiator_table.items())}
            results["jacobiator_is_zero"] = m.jacobiator_is_zero()
    if args.separate_all:
        reports.append(outer_quotients(b))
        sep = []
        for t in ders:
            s = separate(b, t)
            sep.append(None if s is None else {"gauge": b.pretty(s[0]), "separated": _derivation_dict(b, s[1])})
        results["separations"] = sep
    return text, reports, results


def cmd_rmatrix(args) -> tuple[str, list[Report], dict]:
    from .twisted.derivations import twisted_derivation_space
    from .twisted.quasitriangular import module_check, r_matrix_verify, stabilizer_der, tangent_r_space

    b, text = _load_algebra(args.file, Bialgebra)
    obj, rtext = _json_arg(args.R)
    R = tensor_from_json(obj, b.basis_names, degree=2)
    reports = [r_matrix_verify(b, R, args.convention)]
    results: dict = {"convention": args.convention}
    if args.tangent:
        T = tangent_r_space(b, R, args.convention)
        results["tangent_dim"] = T.dim
        reports.append(module_check(b, R, twisted_derivation_space(b), args.convention))
    if args.stabilizer:
        S = stabilizer_der(b, R, args.stabilizer_convention)
        from .twisted.derivations import TwistedDerivation

        results["stabilizer_convention"] = args.stabilizer_convention
        results["stabilizer_dim"] = S.dim
        results["stabilizer_basis"] = [_derivation_dict(b, TwistedDerivation.from_vec(v, b.dim)) for v in S.basis]
    return text + rtext, reports, results


def cmd_lie(args) -> tuple[str, list[Report], dict]:
    g, text = _load_algebra(args.file, LieAlgebra)
    reports = [verify_lie(g)]
    results: dict = {}
    if args.outder:
        od = outer_derivations(g)
        results["derivations_dim"] = od.derivations.dim
        results["inner_dim"] = od.inner.dim
        results["outer_dim"] = od.dim
        results["outer_structure_constants"] = od.structure_constants
    if args.exterior_invariants is not None:
        space, basis = exterior_invariants(g, args.exterior_invariants)
        results["exterior_invariants_dim"] = space.dim
        results["exterior_invariants"] = [_pretty_wedge(g, wedge_from_vec(v, basis)) for v in space.basis]
    if args.schouten:
        space, basis = exterior_invariants(g, 2)
        wedges = [wedge_from_vec(v, basis) for v in space.basis]
        rep = Report("Schouten bracket on (Λ²g)^g")
        bad = next(((i, j) for i, X in enumerate(wedges) for j, Y in enumerate(wedges) if schouten(g, X, Y)), None)
        rep.add("[X, Y] = 0 for invariant bivectors", bad is None, bad)
        reports.append(rep)
    if args.semidirect:
        from .lie.tdu import compare_with_gl2, tdu_structural_check

        sd = semidirect_outder_tw(g)
        results["semidirect_dim"] = sd.dim
        results["semidirect_structure_constants"] = sd.structure_constants
        reports.append(tdu_structural_check(g))
        if g.dim == 2 and g.is_abelian():
            reports.append(compare_with_gl2(g))
    return text, reports, results


def _pretty_wedge(g: LieAlgebra, X) -> str:
    terms = []
    for key, c in sorted(X.items()):
        body = "∧".join(g.basis_names[i] for i in key)
        terms.append(body if c == 1 else f"{c}*{body}")
    return " + ".join(terms) or "0"


def cmd_ug(args) -> tuple[str, list[Report], dict]:
    from .lie.pbw import ug_invariant_twist_check
    from .lie.symcoalg import alternation_class_map, graded_cohomology, invariant_graded_cohomology

    g, text = _load_algebra(args.file, LieAlgebra)
    reports: list[Report] = []
    results: dict = {}
    if args.graded_cohomology is not None:
        n, N = args.graded_cohomology, args.trunc
        if n < 0 or N < n:
            raise InputError("need 0 <= n <= trunc")
        coh = (invariant_graded_cohomology if args.invariant else graded_cohomology)(g, N, n)
        results["graded_cohomology"] = {"invariant": bool(args.invariant), **coh.to_dict()}
        if not args.invariant and n >= 1:
            reports.append(alternation_class_map(g, N, n))
    if args.twist_check is not None:
        obj, etext = _json_arg(args.twist_check)
        phi = tensor_from_json(obj, g.basis_names, degree=2)
        reports.append(ug_invariant_twist_check(g, dict(phi.items())))
        text += etext
    if not reports and not results:
        raise InputError("ug needs --graded-cohomology or --twist-check")
    return text, reports, results


def cmd_ediff(args) -> tuple[str, list[Report], dict]:
    from .ediff import build_e, separability, verify_e_bialgebra, verify_twisted_derivation_of_e

    names = tuple(s.strip() for s in args.base.split(",") if s.strip())
    if not names or len(set(names)) != len(names):
        raise InputError("base must be a comma-separated list of distinct generator names")
    obj, ptext = _json_arg(args.phi)
    phi = polynomial_tensor_from_json(obj, names)
    e = build_e(names, phi, args.weight)
    results: dict = {"generators": list(names), "weight_cap": args.weight, "dims_by_weight": e.dims()}
    results["coproducts"] = {e.word_name((l,)): e.pretty(e.delta_letter(l)) for l in e.letters()}
    reports: list[Report] = []
    if args.verify:
        reports += [verify_e_bialgebra(e), verify_twisted_derivation_of_e(e)]
        sep = separability(e)
        results["non_separated_witness"] = reports[-1].data.get("non_separated_witness")
        results["separability"] = sep.data
    return args.base + "\n" + ptext, reports, results


def cmd_catalog(args) -> tuple[str, list[Report], dict] | str:
    if args.action == "list":
        return "\n".join(catalog.NAMES) + "\n"
    if not args.name:
        raise InputError("catalog emit needs a name")
    try:
        return emit_algebra(catalog.get(args.name))
    except KeyError as exc:
        raise InputError(exc.args[0]) from exc


# ---------------------------------------------------------------------------
# Parser and driver
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistder", description="Exact computations with twisted derivations of bialgebras.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check the axioms of a bialgebra or Lie algebra file ('-' reads stdin)")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("cohomology", help="co-Hochschild cohomology")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--max-degree", type=int)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("twisted", help="twisted derivations and their crossed module")
    s.add_argument("file")
    s.add_argument("--crossed-module", action="store_true")
    s.add_argument("--jacobiator", action="store_true")
    s.add_argument("--separate-all", action="store_true")
    s.set_defaults(func=cmd_twisted)

    s = sub.add_parser("rmatrix", help="R-matrix axioms, tangent space and stabilizer")
    s.add_argument("file")
    s.add_argument("--R", required=True, help="tensor JSON file or inline JSON")
    s.add_argument("--convention", choices=("printed", "hexagon"), default="printed")
    s.add_argument("--tangent", action="store_true")
    s.add_argument("--stabilizer", action="store_true")
    s.add_argument("--stabilizer-convention", choices=("printed", "derived"), default="printed")
    s.set_defaults(func=cmd_rmatrix)

    s = sub.add_parser("lie", help="Lie algebra computations")
    s.add_argument("file")
    s.add_argument("--outder", action="store_true")
    s.add_argument("--exterior-invariants", type=int, metavar="N")
    s.add_argument("--schouten", action="store_true")
    s.add_argument("--semidirect", action="store_true")
    s.set_defaults(func=cmd_lie)

    s = sub.add_parser("ug", help="U(g) twist checks and graded S(g) cohomology")
    s.add_argument("file")
    s.add_argument("--graded-cohomology", type=int, metavar="N")
    s.add_argument("--trunc", type=int, default=3)
    s.add_argument("--invariant", action="store_true")
    s.add_argument("--twist-check", metavar="ELEMENT")
    s.set_defaults(func=cmd_ug)

    s = sub.add_parser("ediff", help="free differential bialgebra E(k[x1..xk])")
    s.add_argument("base", help="comma-separated generator names, e.g. x,y")
    s.add_argument("--phi", required=True, help='JSON list of [monomial, monomial, "p/q"], e.g. [[["x"],["y"],"1"]]')
    s.add_argument("--weight", type=int, default=4)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_ediff)

    s = sub.add_parser("catalog", help="built-in algebras")
    s.add_argument("action", choices=("list", "emit"))
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)
    return p


def _text(doc: dict) -> str:
    lines = []
    for v in doc["verdicts"]:
        rep = Report(v["title"])
        for c in v["checks"]:
            rep.add(c["name"], c["passed"], c.get("witness"))
        lines.append(str(rep))
    for k, v in doc["results"].items():
        lines.append(f"{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    func: Callable = args.func
    try:
        out = func(args)
    except (InputError, FormatError, PreconditionError, TensorTooLarge, ValueError, KeyError) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(out, str):
        sys.stdout.write(out)
        return EXIT_OK
    text, reports, results = out
    doc = report_document([args.command] + argv[argv.index(args.command) + 1 :], text, reports, results)
    sys.stdout.write(dumps(doc) if args.format == "json" else _text(doc))
    return EXIT_OK if doc["ok"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
