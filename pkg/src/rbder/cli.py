"""Command line front end: ``rbder verify|cohomology|deform|skew FILE``.

Exit codes: 0 success, 1 a verification or deformation check failed,
2 unreadable or malformed input, 3 an internal invariant was breached.
JSON reports are written with sorted keys so equal inputs give equal bytes.
"""

from __future__ import annotations

import argparse
import sys
import time
from types import SimpleNamespace

from . import __version__
from .ass_cohomology import ASS_DEGREE_CAP, cohomology_ass
from .deformation import (
    DeformationError,
    apply_equivalence,
    check_equivalence,
    check_order,
    cohomologous_test,
    infinitesimal,
    is_two_cocycle,
    rigidity_probe,
)
from .io import InputDocument, InputError, RepBlock, dumps_json, load_document
from .lie_cohomology import LIE_DEGREE_CAP, cohomology
from .linalg import DimensionError, InconsistencyError, Matrix, format_rational
from .structures import (
    AssBimodule,
    LieRep,
    RBAssDerRep,
    RBLieDerRep,
    StructureError,
    Verdict,
    check_bider,
    check_bider_rep,
    check_rbassder_rep,
    check_rblieder_rep,
    first_failure,
    induced_bracket,
    induced_product,
    skew_symmetrize_algebra,
    verify_rbassder_pair,
    verify_rblieder_pair,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class CheckFailed(Exception):
    """Carries a partial report when a precondition check fails."""

    def __init__(self, report: dict):
        super().__init__(report.get("error", "check failed"))
        self.report = report


# ---- serialization helpers ------------------------------------------------


def _residual(r):
    if r is None:
        return None
    if isinstance(r, Matrix):
        return [[format_rational(v) for v in row] for row in r.tolist()]
    return [format_rational(v) for v in r]


def _names(doc: InputDocument, witness) -> list:
    return [doc.basis[i] if isinstance(i, int) and 0 <= i < doc.dim else str(i) for i in witness]


def verdict_dict(v: Verdict, doc: InputDocument, index_witness: bool = True) -> dict:
    out = {"check": v.check, "ok": v.ok}
    if not v.ok:
        out["axiom"] = v.axiom
        out["witness"] = _names(doc, v.witness) if index_witness else [str(w) for w in v.witness]
        out["residual"] = _residual(v.residual)
    return out


def _matrix_json(m: Matrix | None):
    return None if m is None else _residual(m)


# ---- shared steps -----------------------------------------------------------


def _raw_pair(doc: InputDocument):
    return SimpleNamespace(algebra=doc.algebra(), delta=doc.delta, R=doc.R, weight=doc.weight)


def _rep_object(doc: InputDocument, algebra):
    blk = doc.representation
    if blk is None or blk == "adjoint":
        if doc.is_lie:
            return RBLieDerRep(LieRep.adjoint(algebra), doc.delta, doc.R)
        return RBAssDerRep(AssBimodule.regular(algebra), doc.delta, doc.R)
    m = blk.space_dim
    if doc.is_lie:
        return RBLieDerRep(LieRep(algebra, list(blk.actions), m), blk.delta_V, blk.T)
    return RBAssDerRep(AssBimodule(algebra, list(blk.left), list(blk.right), m), blk.delta_V, blk.T)


def _verify_verdicts(doc: InputDocument) -> list:
    raw = _raw_pair(doc)
    if doc.is_lie:
        verdicts = verify_rblieder_pair(raw.algebra, doc.delta, doc.R, doc.weight)
    else:
        verdicts = verify_rbassder_pair(raw.algebra, doc.delta, doc.R, doc.weight)
    if first_failure(verdicts) is None:
        pair = doc.pair()
        try:
            if doc.is_lie:
                induced_bracket(pair)
            else:
                induced_product(pair)
            verdicts.append(Verdict("induced_structure", True))
        except StructureError as exc:
            verdicts.append(Verdict("induced_structure", False, exc.verdict.axiom, exc.verdict.witness, exc.verdict.residual))
    if doc.representation is not None:
        rep = _rep_object(doc, raw.algebra)
        verdicts.append(check_rblieder_rep(raw, rep) if doc.is_lie else check_rbassder_rep(raw, rep))
    if doc.bider is not None:
        try:
            verdicts.append(check_bider(raw.algebra, doc.bider.delta1, doc.bider.delta2))
        except StructureError as exc:
            verdicts.append(exc.verdict)
        if doc.bider.phi1 is not None:
            rep = _rep_object(doc, raw.algebra).rep
            bp = SimpleNamespace(algebra=raw.algebra, delta1=doc.bider.delta1, delta2=doc.bider.delta2)
            verdicts.append(check_bider_rep(bp, rep, doc.bider.phi1, doc.bider.phi2))
    return verdicts


def _require_pair(doc: InputDocument, command: str):
    verdicts = _verify_verdicts(doc)
    bad = [v for v in verdicts if not v.ok]
    if bad:
        raise CheckFailed(
            {
                "command": command,
                "document": doc.name,
                "error": "document does not verify",
                "checks": [verdict_dict(v, doc) for v in verdicts],
            }
        )
    pair = doc.pair()
    return pair, _rep_object(doc, pair.algebra)


# ---- commands ---------------------------------------------------------------


def cmd_verify(doc: InputDocument) -> tuple[dict, int]:
    verdicts = _verify_verdicts(doc)
    report = {
        "command": "verify",
        "document": doc.name,
        "kind": doc.kind,
        "checks": [verdict_dict(v, doc, v.check != "commute") for v in verdicts],
        "ok": all(v.ok for v in verdicts),
    }
    return report, EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_cohomology(doc: InputDocument, max_degree: int = 3) -> tuple[dict, int]:
    cap = LIE_DEGREE_CAP if doc.is_lie else ASS_DEGREE_CAP
    if not 1 <= max_degree <= cap:
        raise InputError(f"--max-degree must lie in 1..{cap} for {doc.kind} documents")
    pair, rep = _require_pair(doc, "cohomology")
    fn = cohomology if doc.is_lie else cohomology_ass
    rows = []
    for n in range(1, max_degree + 1):
        r = fn(pair, rep, n)
        rows.append({"n": n, "cochains": r.dim_cochains, "cocycles": r.dim_cocycles, "coboundaries": r.dim_coboundaries, "H": r.dim_H})
    report = {
        "command": "cohomology",
        "document": doc.name,
        "kind": doc.kind,
        "representation": "adjoint" if doc.representation in (None, "adjoint") else "given",
        "rows": rows,
    }
    return report, EXIT_OK


def _order_dict(rep, doc) -> dict:
    out = {"order": rep.order, "clean": rep.clean, "commutes": rep.commutes}
    if rep.failures:
        out["failures"] = [verdict_dict(v, doc) for v in rep.failures]
    if not rep.commutes:
        out["commute_residual"] = _residual(rep.commute_residual)
    return out


def cmd_deform(
    doc: InputDocument,
    check_order_k: int | None = None,
    rigidity: bool = False,
    compare: InputDocument | None = None,
) -> tuple[dict, int]:
    if doc.deformation is None:
        raise InputError(f"{doc.name or 'document'}: deform needs a deformation block")
    pair, _ = _require_pair(doc, "deform")
    dfm = doc.formal_deformation(pair)
    if check_order_k is not None and not 0 <= check_order_k <= dfm.order:
        raise InputError(f"--check-order {check_order_k} outside 0..{dfm.order}")
    orders = [check_order_k] if check_order_k is not None else list(range(dfm.order + 1))
    reports = [check_order(dfm, n) for n in orders]
    report = {"command": "deform", "document": doc.name, "kind": doc.kind, "order": dfm.order, "orders": [_order_dict(r, doc) for r in reports]}
    ok = all(r.clean for r in reports)

    low_clean = dfm.order >= 1 and all(check_order(dfm, n).clean for n in (0, 1))
    if low_clean:
        v = is_two_cocycle(pair, infinitesimal(dfm))
        report["infinitesimal"] = {"two_cocycle": v.ok}
        if not v.ok:
            raise InconsistencyError("linear term of a deformation clean at order 1 is not a 2-cocycle")
    else:
        report["infinitesimal"] = {"two_cocycle": None, "note": "not clean through order 1"}

    all_clean = all(check_order(dfm, n).clean for n in range(dfm.order + 1))
    if doc.equivalence is not None:
        eq = doc.equivalence_data()
        conj = apply_equivalence(dfm, eq)
        checks = [check_equivalence(dfm, conj, eq, n).ok for n in range(dfm.order + 1)]
        entry = {
            "morphism_identities": checks,
            "conjugated_clean": all(check_order(conj, n).clean for n in range(conj.order + 1)),
            "conjugated_trivial": conj.is_trivial(),
        }
        if low_clean:
            phi1 = cohomologous_test(dfm, conj)
            entry["cohomologous"] = phi1 is not None
            entry["phi1"] = _matrix_json(phi1)
        report["equivalence"] = entry
        ok = ok and all(checks)

    if rigidity:
        if not all_clean:
            report["rigidity"] = {"success": False, "note": "deformation not clean at every order"}
            ok = False
        else:
            res = rigidity_probe(pair, dfm)
            report["rigidity"] = {
                "success": res.success,
                "steps": [{"order": k, "phi": _matrix_json(phi)} for k, phi in res.steps],
                "obstruction_order": res.obstruction_order,
            }
            ok = ok and res.success

    if compare is not None:
        if compare.deformation is None:
            raise InputError(f"{compare.name or 'comparison document'}: needs a deformation block")
        other_pair, _ = _require_pair(compare, "deform")
        if other_pair != pair:
            raise InputError("--compare document deforms a different pair")
        other = compare.formal_deformation(other_pair)
        try:
            phi1 = cohomologous_test(dfm, other)
        except DeformationError as exc:
            report["compare"] = {"cohomologous": None, "note": str(exc)}
            ok = False
        else:
            report["compare"] = {"document": compare.name, "cohomologous": phi1 is not None, "phi1": _matrix_json(phi1)}
            ok = ok and phi1 is not None

    report["ok"] = ok
    return report, EXIT_OK if ok else EXIT_FAIL


def skew_document(doc: InputDocument) -> InputDocument:
    """The commutator Lie document of an associative one."""
    if doc.is_lie:
        raise InputError("skew needs an assoc document")
    pair, rep = _require_pair(doc, "skew")
    lie = skew_symmetrize_algebra(pair).algebra
    blk = doc.representation
    if isinstance(blk, RepBlock):
        blk = RepBlock(blk.space_dim, actions=tuple(l - r for l, r in zip(blk.left, blk.right)), delta_V=blk.delta_V, T=blk.T)
    return InputDocument(
        "lie", doc.dim, doc.basis, tuple(lie.upper_quads()), doc.weight, doc.delta, doc.R, blk, name=doc.name
    )


# ---- text rendering -----------------------------------------------------------


def _fmt_vec(v):
    if v is None:
        return "-"
    if v and isinstance(v[0], list):
        return "[" + "; ".join(" ".join(row) for row in v) + "]"
    return "(" + ", ".join(v) + ")"


def _verdict_line(c: dict) -> str:
    if c["ok"]:
        return f"PASS {c['check']}"
    return f"FAIL {c['check']} [{c['axiom']}] at ({', '.join(c['witness'])}): residual {_fmt_vec(c['residual'])}"


def render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report.get('document') or '-'}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for c in report.get("checks", []):
        lines.append(_verdict_line(c))
    if "rows" in report:
        lines.append(f"representation: {report['representation']}")
        lines.append(f"{'n':>3} {'cochains':>9} {'cocycles':>9} {'coboundaries':>13} {'H':>4}")
        for r in report["rows"]:
            lines.append(f"{r['n']:>3} {r['cochains']:>9} {r['cocycles']:>9} {r['coboundaries']:>13} {r['H']:>4}")
    for o in report.get("orders", []):
        state = "clean" if o["clean"] else "FAIL"
        extra = "" if o["commutes"] else " (R_t and delta_t do not commute)"
        lines.append(f"order {o['order']}: {state}{extra}")
        for c in o.get("failures", []):
            lines.append("  " + _verdict_line(c))
    if "infinitesimal" in report:
        tc = report["infinitesimal"]["two_cocycle"]
        lines.append(f"infinitesimal 2-cocycle: {'-' if tc is None else ('yes' if tc else 'no')}")
    if "equivalence" in report:
        e = report["equivalence"]
        lines.append(f"equivalence identities: {' '.join('ok' if x else 'FAIL' for x in e['morphism_identities'])}")
        lines.append(f"conjugated deformation clean: {'yes' if e['conjugated_clean'] else 'no'}")
        lines.append(f"conjugated deformation trivial: {'yes' if e['conjugated_trivial'] else 'no'}")
        if "cohomologous" in e:
            lines.append(f"conjugate cohomologous: {'yes' if e['cohomologous'] else 'no'}")
    if "rigidity" in report:
        r = report["rigidity"]
        for s in r.get("steps", []):
            lines.append(f"rigidity: cleared order {s['order']} with phi = {_fmt_vec(s['phi'])}")
        if r.get("obstruction_order") is not None:
            lines.append(f"rigidity: obstruction at order {r['obstruction_order']}")
        lines.append(f"rigidity: {'trivial' if r['success'] else 'not trivialized'}")
    if "compare" in report:
        c = report["compare"]
        verdict = {True: "cohomologous", False: "not cohomologous", None: "undecided"}[c["cohomologous"]]
        lines.append(f"compare: {verdict}" + (f", phi1 = {_fmt_vec(c['phi1'])}" if c.get("phi1") else ""))
    if "ok" in report:
        lines.append("result: " + ("ok" if report["ok"] else "FAILED"))
    if "elapsed_s" in report:
        lines.append(f"elapsed: {report['elapsed_s']:.3f}s")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps_json(report)
    return render_text(report)


# ---- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rbder", description="Weighted Rota-Baxter LieDer/AssDer pairs: axioms, cohomology, deformations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("path", help="JSON problem document")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--timing", action="store_true", help="append wall-clock time to the report")

    common(sub.add_parser("verify", help="check every axiom the document declares"))
    sp = sub.add_parser("cohomology", help="cohomology table of the combined complex")
    common(sp)
    sp.add_argument("--max-degree", type=int, default=3)
    sp = sub.add_parser("deform", help="order-by-order analysis of the deformation block")
    common(sp)
    sp.add_argument("--check-order", type=int, metavar="K")
    sp.add_argument("--rigidity", action="store_true", help="try to conjugate the deformation to the trivial one")
    sp.add_argument("--compare", metavar="OTHER", help="test whether OTHER's linear term is cohomologous")
    sp = sub.add_parser("skew", help="write the commutator Lie document of an assoc document")
    sp.add_argument("path")
    sp.add_argument("-o", "--output", help="write here instead of stdout")
    return p


def _run(args) -> tuple[str, int]:
    doc = load_document(args.path)
    if args.command == "skew":
        out = skew_document(doc).dumps()
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(out)
            return "", EXIT_OK
        return out, EXIT_OK
    start = time.perf_counter()
    if args.command == "verify":
        report, code = cmd_verify(doc)
    elif args.command == "cohomology":
        report, code = cmd_cohomology(doc, args.max_degree)
    else:
        other = load_document(args.compare) if args.compare else None
        report, code = cmd_deform(doc, args.check_order, args.rigidity, other)
    if args.timing:
        report["elapsed_s"] = round(time.perf_counter() - start, 6)
    return render(report, args.format), code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "text")
    try:
        out, code = _run(args)
    except CheckFailed as exc:
        sys.stdout.write(render(exc.report, fmt))
        return EXIT_FAIL
    except (InputError, DimensionError) as exc:
        print(f"rbder: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"rbder: invariant breached: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
