"""Command-line front end.

Exit codes: 0 success, 1 domain failure, 2 usage or parse error, 3 internal
invariant violation.  Every numeric value in the output is exact.
"""

import argparse
import logging
import sys
from fractions import Fraction
from importlib import resources

from . import euler, hodge, relations
from .algebra import LinForm
from .errors import InternalConsistencyError, K3Error, ParseError, UsageError
from .k3data import NAMESPACES, ORDERS, parse_invariants, serialize_invariants
from .render import dumps, latex, latex_relations, rational_json, text, value_json

EXAMPLE_PREFIX = "example:"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--input", metavar="PATH", help=f"invariant document, or {EXAMPLE_PREFIX}NAME for a bundled one")
    p.add_argument("--order", type=int, choices=ORDERS)
    p.add_argument("--level", type=int, metavar="N")
    p.add_argument("--strict", action="store_true", help="treat underdetermined or non-member outcomes as failures")
    return p


def build_parser():
    common = _common()
    parser = _Parser(prog="k3borcea", description="Hodge data and invariant relations for Borcea-Voisin towers Y_{d,n}.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("diamond", parents=[common], help="Hodge diamond of Y_{d,n} with a Calabi-Yau shape check")

    p = sub.add_parser("euler", parents=[common], help="Euler characteristic by several routes")
    p.add_argument("--route", choices=euler.ROUTES + ("all",), default="all")

    sub.add_parser("validate", parents=[common], help="residuals of every catalogued relation")

    p = sub.add_parser("solve", parents=[common], help="complete a partial assignment")
    p.add_argument("--given", default="", help='comma separated, e.g. "k=2,gD=0"')
    p.add_argument("--minimal", action="store_true", help="also list the minimal sufficient input sets")
    p.add_argument("--write", metavar="PATH", help="write the completed invariant document here")

    p = sub.add_parser("derive", parents=[common], help="re-derive relations from two Euler routes")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--alias", help="alias hypothesis label (default: first consistent one)")

    sub.add_parser("crosscheck", parents=[common], help="all routes and shape checks for n = 1..level")

    sub.add_parser("examples", parents=[common], help="list the bundled invariant documents")
    return parser


# input -------------------------------------------------------------------


def example_names():
    return sorted(
        f.name[: -len(".json")] for f in resources.files(__package__).joinpath("data").iterdir()
        if f.name.endswith(".json")
    )


def load_example(name):
    path = resources.files(__package__).joinpath("data", f"{name}.json")
    if not path.is_file():
        raise UsageError(f"no bundled example named {name!r} (have: {', '.join(example_names())})")
    return parse_invariants(path.read_text())


def _read_input(args, required=True):
    if args.input is None:
        if required:
            raise UsageError("--input is required")
        return None
    if args.input.startswith(EXAMPLE_PREFIX):
        inv = load_example(args.input[len(EXAMPLE_PREFIX):])
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                document = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc.strerror or exc}") from exc
        inv = parse_invariants(document)
    if args.order is not None and args.order != inv.order:
        raise UsageError(f"--order {args.order} does not match the document order {inv.order}")
    return inv


def _order(args, inv=None):
    if inv is not None:
        return inv.order
    if args.order is None:
        raise UsageError("--order is required without --input")
    return args.order


def _level(args, default):
    n = default if args.level is None else args.level
    if n < 1:
        raise UsageError("--level must be ≥ 1")
    return n


def parse_given(spec):
    """``"k=2,gD=0"`` -> {"k": Fraction(2), "gD": Fraction(0)}."""
    out = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"bad assignment {item!r}; expected symbol=value")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad value in {item!r}") from exc
    return out


def _show(value, d):
    if isinstance(value, LinForm):
        return text(value, d)
    return str(value)


# commands ----------------------------------------------------------------


def cmd_diamond(args, out):
    inv = _read_input(args)
    n = _level(args, 1)
    diamond = hodge.hodge_diamond(inv.order, n, inv)
    shape = hodge.verify_cy_shape(diamond)
    if args.format == "json":
        doc = diamond.to_json()
        doc.update(order=inv.order, level=n, checks=shape.to_json()["checks"], passed=shape.passed)
        out.write(dumps(doc))
    elif args.format == "latex":
        out.write(_latex_diamond(diamond))
    else:
        out.write(f"Y_{{{inv.order},{n}}} (dimension {diamond.dim})\n{diamond}\n")
        out.write(f"euler characteristic: {diamond.euler()}\n")
        for check, bad in shape.checks.items():
            status = "ok" if not bad else "FAIL at " + ", ".join(map(str, bad))
            out.write(f"  {check}: {status}\n")
    return 0 if shape.passed else 1


def _latex_diamond(diamond):
    dim = diamond.dim
    width = 2 * dim + 1
    lines = [r"\begin{array}{" + "c" * width + "}"]
    for s in range(2 * dim, -1, -1):
        cells = [""] * width
        for p in range(dim, -1, -1):
            q = s - p
            if 0 <= q <= dim:
                cells[dim + q - p] = str(diamond.h[p][q])
        lines.append(" & ".join(cells) + r" \\")
    lines.append(r"\end{array}")
    return "\n".join(lines) + "\n"


def cmd_euler(args, out):
    inv = _read_input(args, required=False)
    d = _order(args, inv)
    n = _level(args, 1)
    routes = euler.ROUTES if args.route == "all" else (args.route,)
    report = euler.crosscheck(d, n, inv, routes)
    _emit_euler(args, out, [report])
    if report.errors:
        return 1
    if inv is not None and not report.agree():
        return 1
    return 0


def _euler_json(report):
    return {
        "order": report.order,
        "level": report.level,
        "symbolic": report.symbolic,
        "values": {k: value_json(v) for k, v in report.values.items()},
        "errors": dict(report.errors),
        "residuals": {k: value_json(v) for k, v in report.residuals.items()},
        "agreement": dict(report.agreement),
    }


def _emit_euler(args, out, reports):
    if args.format == "json":
        docs = [_euler_json(r) for r in reports]
        out.write(dumps(docs[0] if len(docs) == 1 else docs))
        return
    for report in reports:
        d = report.order
        out.write(f"e(Y_{{{d},{report.level}}})\n")
        for route, value in report.values.items():
            shown = latex(value, d) if args.format == "latex" and isinstance(value, LinForm) else _show(value, d)
            out.write(f"  {route:<10} {shown}\n")
        for route, err in report.errors.items():
            out.write(f"  {route:<10} error: {err}\n")
        for pair, ok in report.agreement.items():
            extra = "" if ok else f"  (difference {_show(report.residuals[pair], d)})"
            out.write(f"  {pair}: {'agree' if ok else 'DIFFER'}{extra}\n")


def _validation_json(report, name=None):
    return {
        "order": report.order,
        "name": name,
        "passed": report.passed,
        "failed": report.failed,
        "residuals": {k: rational_json(v) for k, v in report.residuals.items()},
        "skipped": dict(report.skipped),
        "problems": list(report.problems),
        "notes": list(report.notes),
    }


def cmd_validate(args, out):
    inv = _read_input(args)
    report = relations.validate(inv)
    if inv.order == 6:
        report.problems.extend(relations.riemann_hurwitz_check(inv).problems)
    if args.format == "json":
        out.write(dumps(_validation_json(report, inv.name)))
    else:
        system = relations.known_relations(inv.order)
        out.write(f"order {inv.order} invariants{': ' + inv.name if inv.name else ''}\n")
        for name, res in report.residuals.items():
            form = system.get(name).form
            shown = latex(form, inv.order) if args.format == "latex" else text(form, inv.order)
            out.write(f"  [{name}] {'ok  ' if not res else 'FAIL'} residual {res}   0 = {shown}\n")
        for name, notice in report.skipped.items():
            out.write(f"  [{name}] skipped: {notice}\n")
        for problem in report.problems:
            out.write(f"  problem: {problem}\n")
        for note in report.notes:
            out.write(f"  note: {note}\n")
        out.write("PASS\n" if report.passed else "FAIL: " + ", ".join(report.failed + ["integrality"] * bool(report.problems)) + "\n")
    return 0 if report.passed else 1


def cmd_solve(args, out):
    d = _order(args)
    result = relations.solve_partial(d, parse_given(args.given))
    minimal = relations.minimal_sufficient_sets(d) if args.minimal else None
    if args.write and result.status == "complete":
        with open(args.write, "w", encoding="utf-8") as fh:
            fh.write(serialize_invariants(result.invariants(name="[DERIVED] solve_partial completion")))
    if args.format == "json":
        doc = {
            "order": d,
            "status": result.status,
            "rank": result.rank,
            "values": {k: rational_json(v) for k, v in result.values.items()},
            "free": list(result.free),
            "certificate": result.certificate,
        }
        if minimal is not None:
            doc["minimal_sufficient_sets"] = [list(s) for s in minimal]
        out.write(dumps(doc))
    else:
        out.write(f"order {d}: {result.status} (rank {result.rank} over {len(NAMESPACES[d])} symbols)\n")
        for name, value in result.values.items():
            out.write(f"  {name} = {value}\n")
        if result.free:
            out.write(f"  free: {', '.join(result.free)}\n")
        if result.certificate:
            out.write(f"  certificate: {result.certificate}\n")
        if minimal is not None:
            out.write(f"  minimal sufficient sets ({len(minimal)}, size {len(minimal[0]) if minimal else 0}):\n")
            for combo in minimal:
                out.write(f"    {{{', '.join(combo)}}}\n")
    if result.status == "infeasible":
        return 1
    if result.status == "underdetermined" and args.strict:
        return 1
    return 0


def cmd_derive(args, out):
    d = _order(args)
    result = relations.derive_relations_from_euler(d, args.nmax, alias=args.alias)
    labelled = result.labelled_forms()
    if args.format == "json":
        out.write(dumps(_derivation_json(result, labelled)))
    elif args.format == "latex":
        forms = [r.form for r in result.new_relations]
        out.write(f"% order {d}, alias {result.alias}: relations found beyond the known ones\n")
        out.write(latex_relations(forms, d) + "\n" if forms else "% none\n")
        claimed = [relations.known_relations(d).get(name).normalized(d) for name in result.certificates]
        if claimed:
            out.write("% catalogued relations with membership certificates\n")
            out.write(latex_relations(claimed, d) + "\n")
    else:
        out.write(f"order {d}, n = 1..{result.nmax}\n")
        for rep in result.alias_reports:
            out.write(f"  alias {rep.hypothesis!r}: {'consistent' if rep.consistent else 'inconsistent'}\n")
        out.write(f"  chosen alias: {result.alias}\n")
        out.write(f"  rank of known relations {result.base_rank}, with D_n {result.span_rank}\n")
        if result.adds_nothing:
            out.write("  the Euler comparison adds no new relations\n")
        for rel in result.new_relations:
            out.write(f"  new: 0 = {text(rel.form, d)}   ({rel.name})\n")
        for name, cert in result.certificates.items():
            if cert.member:
                combo = " + ".join(f"({c}){label}" for label, c in cert.combination)
                ok = cert.verify(labelled)
                out.write(f"  [{name}] in span{'' if ok else ' (VERIFY FAILED)'}: {combo}\n")
            else:
                out.write(f"  [{name}] NOT in span\n")
        for convention, bad in result.table_convention.items():
            out.write(f"  printed table {convention}: mismatches at n = {bad or 'none'}\n")
    if any(c.member and not c.verify(labelled) for c in result.certificates.values()):
        raise InternalConsistencyError("membership certificate does not reproduce its target")
    if args.strict and not all(c.member for c in result.certificates.values()):
        return 1
    return 0


def _derivation_json(result, labelled):
    d = result.order
    return {
        "order": d,
        "nmax": result.nmax,
        "alias": result.alias,
        "alias_reports": [
            {"hypothesis": r.hypothesis, "consistent": r.consistent} for r in result.alias_reports
        ],
        "differences": [value_json(f) for f in result.differences],
        "base_rank": result.base_rank,
        "span_rank": result.span_rank,
        "basis": [value_json(f) for f in result.basis],
        "new_relations": [
            {"name": r.name, "tag": r.tag, "form": value_json(r.form)} for r in result.new_relations
        ],
        "certificates": {
            name: {
                "member": c.member,
                "verified": c.member and c.verify(labelled),
                "combination": [[label, rational_json(v)] for label, v in c.combination],
            }
            for name, c in result.certificates.items()
        },
        "table_mismatches": result.table_convention,
    }


def cmd_crosscheck(args, out):
    inv = _read_input(args, required=False)
    d = _order(args, inv)
    top = _level(args, 6)
    reports = [euler.crosscheck(d, n, inv) for n in range(1, top + 1)]
    if args.format != "json":
        _emit_euler(args, out, reports)
    shape_failures = {}
    if inv is not None:
        for n in range(1, top + 1):
            if "diamond" in reports[n - 1].errors:
                continue
            shape = hodge.verify_cy_shape(hodge.hodge_diamond(d, n, inv))
            if not shape.passed:
                shape_failures[n] = shape.failures()
    if args.format == "json":
        out.write(dumps({
            "reports": [_euler_json(r) for r in reports],
            "shape_failures": {str(n): {k: [list(x) for x in v] for k, v in f.items()} for n, f in shape_failures.items()},
        }))
    else:
        for n, failures in shape_failures.items():
            out.write(f"  shape check failed at n = {n}: {', '.join(failures)}\n")
    bad = any(r.errors for r in reports) or shape_failures
    if inv is not None:
        bad = bad or not all(r.agree() for r in reports)
    return 1 if bad else 0


def cmd_examples(args, out):
    names = example_names()
    if args.format == "json":
        out.write(dumps({name: load_example(name).to_document() for name in names}))
    else:
        for name in names:
            inv = load_example(name)
            out.write(f"{EXAMPLE_PREFIX}{name}  (order {inv.order})  {inv.name or ''}\n")
    return 0


COMMANDS = {
    "diamond": cmd_diamond,
    "euler": cmd_euler,
    "validate": cmd_validate,
    "solve": cmd_solve,
    "derive": cmd_derive,
    "crosscheck": cmd_crosscheck,
    "examples": cmd_examples,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except K3Error as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
