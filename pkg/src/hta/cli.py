"""Command-line interface.

Exit codes: 0 success, 1 negative verdict (identities fail, not isomorphic),
2 input error, 3 inconclusive isomorphism or enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence, TextIO

from . import documents as doc
from .algebra import Algebra, Constants2D, binary_is_zero, constants2d
from .classify import Inconclusive, IsoWitness, classify, classify_bol, classify_lta, find_isomorphism
from .connection import WORKED_EXAMPLE_CLAIMED, ConnectionData, algebra_from_connection, audit_connection_example
from .errors import BudgetExceeded, HtaError, NotValidHta, Unclassifiable
from .explorer import GridSpec, enumerate_grid, oracle_isomorphic
from .fixtures import FIXTURES, get_fixture
from .identities import CHECK_SETS, all_pass

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(source: str) -> tuple[str, object]:
    """Read FILE or a fixture name; returns (kind, value) with kind "algebra" or "connection"."""
    if os.path.exists(source):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
        if doc.looks_like_connection(text):
            return "connection", doc.parse_connection(text)
        return "algebra", doc.parse_algebra(text)
    if source in FIXTURES:
        value = FIXTURES[source].value
        return ("connection" if isinstance(value, ConnectionData) else "algebra"), value
    raise InputError(f"{source}: no such file or fixture (see `hta example --list`)")


def _load_algebra(source: str) -> Algebra:
    kind, value = _load(source)
    return algebra_from_connection(value) if kind == "connection" else value


def _k8_text(k8: Constants2D) -> str:
    return " ".join(f"{n}={doc.fmt(v)}" for n, v in k8.as_dict().items())


def _vec_text(v) -> str:
    return "(" + ", ".join(doc.fmt(x) for x in v) + ")"


def _mat_text(P) -> str:
    return "[" + ", ".join("[" + ", ".join(doc.fmt(x) for x in row) + "]" for row in P) + "]"


TEXT_VIOLATIONS = 8


def _print_reports(reports, out: TextIO, indent: str = "") -> None:
    for r in reports:
        if r.passed:
            print(f"{indent}{r.identity:<5} pass  ({r.tuples_checked} tuples)", file=out)
            continue
        print(f"{indent}{r.identity:<5} FAIL  {r.violation_count}/{r.tuples_checked} tuples violate", file=out)
        for v in r.violations[:TEXT_VIOLATIONS]:
            args = ",".join(str(i + 1) for i in v.args) if v.args else "-"
            print(f"{indent}        at basis ({args}): residual {_vec_text(v.value)}", file=out)
        if len(r.violations) > TEXT_VIOLATIONS:
            print(f"{indent}        ... {len(r.violations) - TEXT_VIOLATIONS} more (see --json)", file=out)


# -- subcommands ------------------------------------------------------------------


def cmd_check(ns, out: TextIO) -> int:
    alg = _load_algebra(ns.file)
    reports = CHECK_SETS[ns.set](alg)
    passed = all_pass(reports)
    if ns.json:
        out.write(doc.dumps({"set": ns.set, "passed": passed, "reports": [doc.check_report_to_dict(r) for r in reports]}))
    else:
        _print_reports(reports, out)
        print(f"{ns.set}: {'PASS' if passed else 'FAIL'}", file=out)
    return EXIT_OK if passed else EXIT_NEGATIVE


def _special_template(alg: Algebra):
    fn = None
    if binary_is_zero(alg.star):
        fn = classify_lta
    elif binary_is_zero(alg.dot):
        fn = classify_bol
    if fn is None:
        return None
    try:
        return fn(alg)
    except (HtaError, Unclassifiable):
        return None


def cmd_classify(ns, out: TextIO) -> int:
    alg = _load_algebra(ns.file)
    try:
        res = classify(alg)
    except NotValidHta as exc:
        print(f"not classified: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    special = _special_template(alg)
    if ns.json:
        d = doc.classification_to_dict(res)
        d["special_template"] = doc.template_to_dict(special) if special else None
        out.write(doc.dumps(d))
        return EXIT_OK
    print(f"theorem type: ({res.theorem_type})", file=out)
    print(f"family:       {res.family}", file=out)
    print(f"canonical:    {_k8_text(res.canonical_constants)}", file=out)
    print(f"witness P:    {_mat_text(res.witness)}", file=out)
    inv = res.invariants
    print(
        f"invariants:   star_zero={inv.star_zero} dot_zero={inv.dot_zero} triple_zero={inv.triple_zero} "
        f"trace_T={doc.fmt(inv.trace_T)} sign_det_T={inv.sign_det_T} form_sign={inv.form_sign}",
        file=out,
    )
    labels = ", ".join(t.label for t in res.matched_templates) or "none"
    print(f"templates matching as given: {labels}", file=out)
    if special is not None:
        where = " after normalization" if special.witness is not None else ""
        print(f"special template: {special.label}{where}", file=out)
    return EXIT_OK


def cmd_iso(ns, out: TextIO) -> int:
    A, B = _load_algebra(ns.file1), _load_algebra(ns.file2)
    try:
        verdict = find_isomorphism(A, B)
    except NotValidHta as exc:
        print(f"not comparable: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    if isinstance(verdict, IsoWitness):
        print(f"isomorphic: change_basis(A, P) = B with P = {_mat_text(verdict.P)}", file=out)
        code = EXIT_OK
    elif isinstance(verdict, Inconclusive):
        print(f"inconclusive: {verdict.reason}", file=out)
        code = EXIT_UNDECIDED
    else:
        print("not isomorphic: the invariants differ", file=out)
        code = EXIT_NEGATIVE
    if ns.oracle:
        P = oracle_isomorphic(A, B)
        if P is None:
            print("oracle: no witness with entries in {-2..2}", file=out)
        else:
            print(f"oracle: witness {_mat_text(P)}", file=out)
            if verdict is None:
                print("oracle contradicts the invariant verdict", file=sys.stderr)
    return code


def cmd_enumerate(ns, out: TextIO) -> int:
    try:
        grid = GridSpec(ns.min, ns.max, ns.den)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        rep = enumerate_grid(grid, jobs=ns.jobs)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    text = doc.emit_enumeration(rep)
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{rep.total} points, {rep.valid} valid; report written to {ns.out}", file=out)
    else:
        out.write(text)
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_example(ns, out: TextIO) -> int:
    if ns.list or ns.name is None:
        for f in FIXTURES.values():
            tag = "audit" if f.audit else f.checker
            print(f"{f.name:<20} {tag:<6} {f.note}", file=out)
        return EXIT_OK
    try:
        f = get_fixture(ns.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if isinstance(f.value, ConnectionData):
        out.write(doc.emit_connection(f.value))
    else:
        out.write(doc.emit_algebra(f.value))
    return EXIT_OK


def cmd_from_connection(ns, out: TextIO) -> int:
    kind, data = _load(ns.file)
    if kind != "connection":
        raise InputError(f"{ns.file} is not a connection document")
    if not ns.audit:
        out.write(doc.emit_algebra(algebra_from_connection(data)))
        return EXIT_OK
    stated = WORKED_EXAMPLE_CLAIMED if ns.file == "section2-connection" else None
    if ns.stated:
        stated = constants2d(_load_algebra(ns.stated))
    audit = audit_connection_example(data, stated)
    if ns.json:
        out.write(doc.dumps(doc.audit_to_dict(audit)))
    else:
        for r in audit.readings:
            kind = f"valid, type ({r.theorem_type})" if r.valid else "not valid"
            print(f"[{r.name}] {_k8_text(r.constants)}: {kind}", file=out)
            _print_reports(r.reduced, out, indent="  ")
        print("each row is reported as computed; none is taken as authoritative", file=out)
    return EXIT_OK if audit.literal.valid else EXIT_NEGATIVE


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hta", description="Exact checks and classification of hyporeductive triple algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check an identity set")
    c.add_argument("file", help="algebra document, connection document, or fixture name")
    c.add_argument("--set", choices=sorted(CHECK_SETS), default="hta")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("classify", help="classify a valid 2D algebra")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("iso", help="decide isomorphism of two 2D algebras")
    c.add_argument("file1")
    c.add_argument("file2")
    c.add_argument("--oracle", action="store_true", help="also search small integer basis changes")
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("enumerate", help="sweep a grid of 2D constants")
    c.add_argument("--min", type=int, default=-1)
    c.add_argument("--max", type=int, default=1)
    c.add_argument("--den", type=int, default=1)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("example", help="print a built-in fixture")
    c.add_argument("name", nargs="?")
    c.add_argument("--list", action="store_true")
    c.set_defaults(func=cmd_example)

    c = sub.add_parser("from-connection", help="algebra of pointwise connection data")
    c.add_argument("file")
    c.add_argument("--audit", action="store_true", help="compare sign readings and check each")
    c.add_argument("--stated", help="algebra to audit alongside the computed ones")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_from_connection)
    return p


def run_command(argv: Sequence[str], out: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return ns.func(ns, out)
    except (InputError, HtaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
