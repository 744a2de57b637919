"""Named built-in algebras and connection data.

Template fixtures use each template's default parameters.  The two
``section2-*`` entries reproduce a worked example whose published values do
not survive checking; they are flagged ``audit`` and carry no expected
verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import Algebra, Constants2D, from_constants2d, zero_algebra
from .connection import WORKED_EXAMPLE_CLAIMED, ConnectionData, worked_example_connection
from .templates import CATALOGS, template


@dataclass(frozen=True)
class Fixture:
    name: str
    value: Union[Algebra, ConnectionData]
    checker: Optional[str]  # "hta", "lta", "bol" or None for audit fixtures
    note: str = ""

    @property
    def audit(self) -> bool:
        return self.checker is None


def _k(*values) -> Algebra:
    return from_constants2d(Constants2D.of(values))


def _build() -> dict[str, Fixture]:
    out: dict[str, Fixture] = {}

    def add(name, value, checker, note=""):
        out[name] = Fixture(name, value, checker, note)

    add("zero", zero_algebra(2), "hta", "all products zero")
    add("type-I-hyperbolic", _k(0, 0, 0, 0, 1, 0, 0, -1), "hta", "T = diag(1, -1), det T < 0")
    add("type-I-elliptic", _k(0, 0, 0, 0, 0, 1, -1, 0), "hta", "T = [[0, -1], [1, 0]], det T > 0")
    add("type-I-nilpotent", _k(0, 0, 0, 0, 0, 0, 1, 0), "hta", "T = [[0, 1], [0, 0]]")
    for t in CATALOGS["THEOREM"]:
        add(f"type-{t.name}", from_constants2d(t.default_constants()), "hta", f"template {t.label}")
    for t in CATALOGS["T"]:
        add(t.name, from_constants2d(t.default_constants()), "lta", f"Lie triple algebra template {t.name}")
    for t in CATALOGS["B"]:
        add(t.name, from_constants2d(t.default_constants()), "bol", f"Bol algebra template {t.name}")
    for name in ("A8", "A9", "A11", "A12"):
        add(name, from_constants2d(template(name).default_constants()), "hta", f"intermediate type {name}")
    add("ref3-example", _k(1, 0, 0, 1, 0, 0, -1, 0), "hta", "x1.x2 = x1, x1*x2 = x2, <x2;x1,x2> = -x1")
    add("section2-connection", worked_example_connection(), None, "connection data of the worked example")
    add("section2-claimed", from_constants2d(WORKED_EXAMPLE_CLAIMED), None, "constants as published for the worked example")
    return out


FIXTURES: dict[str, Fixture] = _build()


def fixture_names() -> list[str]:
    return list(FIXTURES)


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}") from None
