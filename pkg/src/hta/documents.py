"""JSON documents for algebras, connection data and reports.

Rationals always travel as strings ("3", "-1/2"), never as JSON numbers.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict
from fractions import Fraction
from typing import Any

from .algebra import Algebra, Constants2D, constants2d, from_constants2d, make_algebra
from .classify import ClassificationResult, InvariantRecord, TemplateId
from .connection import ConnectionAudit, ConnectionData
from .errors import ParseError
from .explorer import EnumerationReport
from .identities import CheckReport

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def parse_rational(s: Any, where: str) -> Fraction:
    if not isinstance(s, str):
        raise ParseError(where, f"rationals must be strings, got {type(s).__name__} {s!r}")
    if not _RATIONAL.fullmatch(s):
        raise ParseError(where, f"malformed rational {s!r} (expected an integer or p/q)")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ParseError(where, "zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def fmt(q: Fraction) -> str:
    return str(Fraction(q))


def _nested(data: Any, depth: int, where: str):
    if depth == 0:
        return parse_rational(data, where)
    if not isinstance(data, list):
        raise ParseError(where, "expected an array")
    return [_nested(x, depth - 1, f"{where}[{i}]") for i, x in enumerate(data)]


def _nested_out(data, depth: int):
    if depth == 0:
        return fmt(data)
    return [_nested_out(x, depth - 1) for x in data]


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError("$", "document must be a JSON object")
    return doc


def _dim(doc: dict) -> int:
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError("$.dim", "dim must be a positive integer")
    return dim


_FLAT_ARRAY = re.compile(r'\[\s+("[^"\n]*"(?:,\s+"[^"\n]*")*)\s+\]')


def _dump(doc: dict) -> str:
    # innermost arrays of strings go on one line; everything else indented
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    text = _FLAT_ARRAY.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text)
    return text + "\n"


# -- algebras -------------------------------------------------------------------

TABLE_KEYS = ("dot", "star", "triple")


def algebra_from_dict(doc: dict) -> Algebra:
    dim = _dim(doc)
    extra = set(doc) - {"dim", "constants2d", *TABLE_KEYS}
    if extra:
        raise ParseError("$", f"unknown keys {sorted(extra)}")
    has_tables = [k for k in TABLE_KEYS if k in doc]
    if ("constants2d" in doc) == bool(has_tables):
        raise ParseError("$", "give exactly one of constants2d or the full tables dot/star/triple")
    if "constants2d" in doc:
        if dim != 2:
            raise ParseError("$.constants2d", "constants2d shorthand requires dim 2")
        k = doc["constants2d"]
        if not isinstance(k, dict):
            raise ParseError("$.constants2d", "expected an object")
        if set(k) != set(Constants2D.NAMES):
            raise ParseError("$.constants2d", f"keys must be exactly {', '.join(Constants2D.NAMES)}")
        return from_constants2d(Constants2D(**{n: parse_rational(k[n], f"$.constants2d.{n}") for n in Constants2D.NAMES}))
    missing = [k for k in TABLE_KEYS if k not in doc]
    if missing:
        raise ParseError("$", f"missing tables {missing}")
    dot = _nested(doc["dot"], 3, "$.dot")
    star = _nested(doc["star"], 3, "$.star")
    triple = _nested(doc["triple"], 4, "$.triple")
    return make_algebra(dim, dot, star, triple)


def parse_algebra(text: str) -> Algebra:
    """Exact parse of an algebra document; raises ParseError, SkewViolation, DimensionMismatch."""
    return algebra_from_dict(_load(text))


def algebra_to_dict(alg: Algebra) -> dict:
    if alg.dim == 2:
        return {"dim": 2, "constants2d": constants_to_dict(constants2d(alg))}
    return {
        "dim": alg.dim,
        "dot": _nested_out(alg.dot, 3),
        "star": _nested_out(alg.star, 3),
        "triple": _nested_out(alg.triple, 4),
    }


def emit_algebra(alg: Algebra) -> str:
    return _dump(algebra_to_dict(alg))


def constants_to_dict(k8: Constants2D) -> dict[str, str]:
    return {n: fmt(v) for n, v in k8.as_dict().items()}


# -- connection data --------------------------------------------------------------


def parse_connection(text: str) -> ConnectionData:
    doc = _load(text)
    dim = _dim(doc)
    keys = ("bracket", "a_tensor", "dT")
    if set(doc) != {"dim", *keys}:
        raise ParseError("$", f"connection documents have exactly the keys dim, {', '.join(keys)}")
    return ConnectionData.build(
        dim,
        bracket=_nested(doc["bracket"], 3, "$.bracket"),
        a_tensor=_nested(doc["a_tensor"], 3, "$.a_tensor"),
        dT=_nested(doc["dT"], 4, "$.dT"),
    )


def connection_to_dict(data: ConnectionData) -> dict:
    return {
        "dim": data.dim,
        "bracket": _nested_out(data.bracket, 3),
        "a_tensor": _nested_out(data.a_tensor, 3),
        "dT": _nested_out(data.dT, 4),
    }


def emit_connection(data: ConnectionData) -> str:
    return _dump(connection_to_dict(data))


def looks_like_connection(text: str) -> bool:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return False
    return isinstance(doc, dict) and "bracket" in doc


# -- reports ------------------------------------------------------------------------


def matrix_to_list(P) -> list[list[str]]:
    return [[fmt(x) for x in row] for row in P]


def check_report_to_dict(r: CheckReport) -> dict:
    return {
        "identity": r.identity,
        "passed": r.passed,
        "tuples_checked": r.tuples_checked,
        "violation_count": r.violation_count,
        "violations": [{"args": list(v.args), "value": [fmt(x) for x in v.value]} for v in r.violations],
    }


def template_to_dict(t: TemplateId) -> dict:
    out = {
        "catalog": t.catalog,
        "index": t.index,
        "bindings": {n: fmt(v) for n, v in t.bindings.items()},
        "side_conditions": list(t.side_conditions),
    }
    if t.witness is not None:
        out["witness"] = matrix_to_list(t.witness)
    return out


def invariants_to_dict(inv: InvariantRecord) -> dict:
    d = asdict(inv)
    d["trace_T"] = fmt(inv.trace_T)
    return d


def classification_to_dict(res: ClassificationResult) -> dict:
    return {
        "family": res.family,
        "theorem_type": res.theorem_type,
        "canonical_constants": constants_to_dict(res.canonical_constants),
        "witness": matrix_to_list(res.witness),
        "invariants": invariants_to_dict(res.invariants),
        "matched_templates": [template_to_dict(t) for t in res.matched_templates],
    }


def enumeration_to_dict(rep: EnumerationReport) -> dict:
    return {
        "grid": {"min": rep.grid.min, "max": rep.grid.max, "denominator": rep.grid.denominator},
        "total": rep.total,
        "valid": rep.valid,
        "per_family": rep.per_family,
        "per_theorem_type": rep.per_theorem_type,
        "per_template_given_basis": rep.per_template,
        "lemma_mismatches": rep.lemma_mismatches,
        "predicate_mismatches": rep.predicate_mismatches,
        "unclassified": rep.unclassified,
    }


def emit_enumeration(rep: EnumerationReport) -> str:
    return _dump(enumeration_to_dict(rep))


def audit_to_dict(audit: ConnectionAudit) -> dict:
    rows = []
    for r in audit.readings:
        rows.append({
            "reading": r.name,
            "constants2d": constants_to_dict(r.constants),
            "valid_hta": r.valid,
            "theorem_type": r.theorem_type,
            "reduced": [check_report_to_dict(x) for x in r.reduced],
            "failed_identities": [x.identity for x in r.hta if not x.passed],
        })
    return {"readings": rows}


def dumps(doc: dict) -> str:
    return _dump(doc)
