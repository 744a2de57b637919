"""Template catalogs for two-dimensional algebras.

Four catalogs, keyed by the eight constants (a, b, c, d, e, f, k, l):

* ``THEOREM`` - the eight canonical types I..VIII,
* ``A``       - the intermediate types A1..A16 of the case analysis
                (A1, A4, A5, A10, A13, A16 are eliminated there and are
                marked ``cancelled``),
* ``T``       - Lie triple algebra types T1..T4 (star product zero),
* ``B``       - Bol algebra types B1..B19 (dot product zero).

Each template fixes some constants, optionally ties l = -e, and carries its
side conditions as written, each as (text, predicate).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import Constants2D
from .errors import UnsatisfiableConstraint

Condition = tuple[str, Callable[[dict], bool]]

NAMES = Constants2D.NAMES


def _nz(*names: str) -> list[Condition]:
    return [(f"{n}≠0", (lambda n: lambda v: v[n] != 0)(n)) for n in names]


CD_NONZERO: Condition = ("(c,d)≠(0,0)", lambda v: v["c"] != 0 or v["d"] != 0)
AF_BE: Condition = ("af-be=0", lambda v: v["a"] * v["f"] - v["b"] * v["e"] == 0)
BK_AE: Condition = ("bk+ae=0", lambda v: v["b"] * v["k"] + v["a"] * v["e"] == 0)
BK_AL: Condition = ("bk-al=0", lambda v: v["b"] * v["k"] - v["a"] * v["l"] == 0)
K_NOT_MINUS_E: Condition = ("k≠-e", lambda v: v["k"] != -v["e"])
L_NOT_MINUS_E: Condition = ("l≠-e", lambda v: v["l"] != -v["e"])

# solved forms used when sampling: f from af-be=0, k from bk+ae=0 or bk-al=0
F_FROM_AF_BE = {"f": lambda v: v["b"] * v["e"] / v["a"]}
K_FROM_BK_AE = {"k": lambda v: -v["a"] * v["e"] / v["b"]}
K_FROM_BK_AL = {"k": lambda v: v["a"] * v["l"] / v["b"]}


@dataclass(frozen=True)
class Template:
    name: str
    catalog: str
    fixed: dict[str, Fraction]
    l_minus_e: bool = False
    conditions: tuple[Condition, ...] = ()
    derived: dict[str, Callable[[dict], Fraction]] = field(default_factory=dict)
    aliases: dict[str, str] = field(default_factory=dict)
    defaults: dict[str, int] = field(default_factory=dict)
    cancelled: bool = False

    @property
    def label(self) -> str:
        return self.name if self.catalog != "THEOREM" else f"({self.name})"

    @property
    def free(self) -> tuple[str, ...]:
        """Constants not pinned by the template pattern."""
        tied = {"l"} if self.l_minus_e else set()
        return tuple(n for n in NAMES if n not in self.fixed and n not in tied)

    @property
    def side_conditions(self) -> tuple[str, ...]:
        return tuple(text for text, _ in self.conditions)

    def matches(self, k8: Constants2D) -> bool:
        v = k8.as_dict()
        if any(v[n] != x for n, x in self.fixed.items()):
            return False
        if self.l_minus_e and v["l"] != -v["e"]:
            return False
        return all(pred(v) for _, pred in self.conditions)

    def bindings(self, k8: Constants2D) -> dict[str, Fraction]:
        v = k8.as_dict()
        return {self.aliases.get(n, n): v[n] for n in self.free}

    def instantiate(self, values: dict) -> Constants2D:
        v = {n: Fraction(0) for n in NAMES}
        v.update(self.fixed)
        v.update({n: Fraction(x) for n, x in values.items()})
        for n, fn in self.derived.items():
            if n not in values:
                v[n] = fn(v)
        if self.l_minus_e:
            v["l"] = -v["e"]
        return Constants2D(**v)

    def default_constants(self) -> Constants2D:
        k8 = self.instantiate(self.defaults)
        if not self.matches(k8):
            raise UnsatisfiableConstraint(f"default parameters of {self.label} violate its side conditions")
        return k8

    def sample(self, rng: random.Random, tries: int = 2000) -> Constants2D:
        """Random constants satisfying the pattern and every side condition exactly."""
        draw_names = [n for n in self.free if n not in self.derived]
        for _ in range(tries):
            values = {n: _random_rational(rng) for n in draw_names}
            try:
                k8 = self.instantiate(values)
            except ZeroDivisionError:
                continue
            if self.matches(k8):
                return k8
        raise UnsatisfiableConstraint(f"could not satisfy the side conditions of {self.label}")


def _random_rational(rng: random.Random) -> Fraction:
    if rng.random() < 0.15:
        return Fraction(0)
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def _t(name, catalog, zero="", fixed=None, l_minus_e=False, conditions=(), derived=None,
       aliases=None, defaults=None, cancelled=False) -> Template:
    pins = {n: Fraction(0) for n in zero}
    pins.update({n: Fraction(x) for n, x in (fixed or {}).items()})
    return Template(name, catalog, pins, l_minus_e, tuple(conditions), derived or {},
                    aliases or {}, defaults or {}, cancelled)


THEOREM_TEMPLATES = (
    _t("I", "THEOREM", zero="abcd", l_minus_e=True, defaults=dict(e=1, f=2, k=3)),
    _t("II", "THEOREM", zero="bcdefl", conditions=_nz("a"), defaults=dict(a=1, k=1)),
    _t("III", "THEOREM", zero="cdefkl", conditions=_nz("a", "b"), defaults=dict(a=1, b=1)),
    _t("IV", "THEOREM", zero="cd", l_minus_e=True,
       conditions=[*_nz("a", "b", "e", "f"), K_NOT_MINUS_E, AF_BE, BK_AE],
       derived={**F_FROM_AF_BE, **K_FROM_BK_AE}, defaults=dict(a=1, b=2, e=1)),
    _t("V", "THEOREM", zero="ab", l_minus_e=True, conditions=[CD_NONZERO],
       defaults=dict(c=1, d=2, e=1, f=3, k=5)),
    _t("VI", "THEOREM", zero="befl", conditions=[*_nz("a"), CD_NONZERO],
       defaults=dict(a=1, c=1, d=1, k=1)),
    _t("VII", "THEOREM", l_minus_e=True,
       conditions=[*_nz("a", "b", "e", "f", "k"), CD_NONZERO, AF_BE, BK_AE],
       derived={**F_FROM_AF_BE, **K_FROM_BK_AE}, defaults=dict(a=1, b=1, c=1, d=1, e=1)),
    _t("VIII", "THEOREM", zero="efkl", conditions=[*_nz("a", "b"), CD_NONZERO],
       defaults=dict(a=1, b=1, c=1)),
)

A_TEMPLATES = (
    _t("A1", "A", zero="cd", conditions=[*_nz("a", "b", "e", "f", "k", "l"), L_NOT_MINUS_E, AF_BE, BK_AL],
       derived={**F_FROM_AF_BE, **K_FROM_BK_AL}, defaults=dict(a=1, b=1, e=1, l=1), cancelled=True),
    _t("A2", "A", zero="cd", l_minus_e=True, conditions=[*_nz("a", "b", "e", "f", "k"), AF_BE, BK_AE],
       derived={**F_FROM_AF_BE, **K_FROM_BK_AE}, defaults=dict(a=1, b=1, e=1)),
    _t("A3", "A", l_minus_e=True, conditions=[*_nz("a", "b"), CD_NONZERO, *_nz("e", "f", "k"), AF_BE, BK_AE],
       derived={**F_FROM_AF_BE, **K_FROM_BK_AE}, defaults=dict(a=1, b=1, c=1, e=1)),
    # pattern pins k=0 while the listed conditions demand k≠0; kept as written
    _t("A4", "A", zero="cdkl", conditions=[*_nz("a", "b", "e", "f", "k"), AF_BE],
       derived=F_FROM_AF_BE, cancelled=True),
    _t("A5", "A", zero="cdef", conditions=[*_nz("a", "b", "k", "l"), BK_AL],
       derived=K_FROM_BK_AL, defaults=dict(a=1, b=1, l=1), cancelled=True),
    _t("A6", "A", zero="cdefkl", conditions=_nz("a", "b"), defaults=dict(a=1, b=1)),
    _t("A7", "A", zero="efkl", conditions=[*_nz("a", "b"), CD_NONZERO], defaults=dict(a=1, b=1, c=1)),
    _t("A8", "A", zero="befl", conditions=[*_nz("a"), CD_NONZERO], defaults=dict(a=1, c=1, k=1)),
    _t("A9", "A", zero="bcdefl", conditions=_nz("a"), defaults=dict(a=1, k=1)),
    _t("A10", "A", zero="bcdfl", conditions=_nz("a", "e"), defaults=dict(a=1, e=1, k=1), cancelled=True),
    _t("A11", "A", zero="aekl", conditions=[*_nz("b"), CD_NONZERO], defaults=dict(b=-1, d=-1, f=-1)),
    _t("A12", "A", zero="acdekl", conditions=_nz("b"), defaults=dict(b=-1, f=-1)),
    _t("A13", "A", zero="acdek", conditions=_nz("b", "l"), defaults=dict(b=1, f=1, l=1), cancelled=True),
    _t("A14", "A", zero="ab", l_minus_e=True, conditions=[CD_NONZERO], defaults=dict(c=1, e=1, f=1, k=1)),
    _t("A15", "A", zero="abcd", l_minus_e=True, defaults=dict(e=1, f=1, k=1)),
    _t("A16", "A", zero="abcd", conditions=[L_NOT_MINUS_E], defaults=dict(e=1, l=1), cancelled=True),
)

_ABG = {"e": "α", "f": "β", "k": "γ"}

T_TEMPLATES = (
    _t("T1", "T", zero="abcd", l_minus_e=True, aliases=_ABG, defaults=dict(e=1, f=2, k=3)),
    _t("T2", "T", zero="bcdefl", fixed=dict(a=1), defaults=dict(k=1)),
    _t("T3", "T", zero="cdefkl", fixed=dict(a=1, b=1)),
    _t("T4", "T", zero="cd", l_minus_e=True, conditions=[*_nz("a", "b", "e", "f", "k"), AF_BE, BK_AE],
       derived={**F_FROM_AF_BE, **K_FROM_BK_AE}, defaults=dict(a=1, b=1, e=1)),
)


def _bol(name: str, star: str, triple: str) -> Template:
    """Bol template: ``star`` lists the nonzero star coordinates, ``triple`` those of (e, f, k)."""
    zero = "ab" + "".join(n for n in "cd" if n not in star) + "".join(n for n in "efk" if n not in triple)
    present = star + triple
    defaults = {n: v for n, v in dict(c=1, d=2, e=1, f=3, k=5).items() if n in present}
    return _t(name, "B", zero=zero, l_minus_e=True, conditions=_nz(*present), defaults=defaults)


B_TEMPLATES = (
    _t("B1", "B", zero="abcd", l_minus_e=True, aliases=_ABG, defaults=dict(e=1, f=2, k=3)),
    _bol("B2", "cd", "efk"),
    _bol("B3", "cd", "ef"),
    _bol("B4", "cd", "ek"),
    _bol("B5", "cd", "e"),
    _bol("B6", "cd", "fk"),
    _bol("B7", "cd", "f"),
    _bol("B8", "cd", ""),
    _bol("B9", "c", "efk"),
    _bol("B10", "c", "ef"),
    _bol("B11", "c", "ek"),
    _bol("B12", "c", "e"),
    _bol("B13", "c", "fk"),
    _bol("B14", "c", "f"),
    _bol("B15", "c", "k"),
    _bol("B16", "c", ""),
    _bol("B17", "d", "ef"),
    _bol("B18", "d", "ek"),
    _bol("B19", "d", "e"),
)

CATALOGS: dict[str, tuple[Template, ...]] = {
    "THEOREM": THEOREM_TEMPLATES,
    "A": A_TEMPLATES,
    "T": T_TEMPLATES,
    "B": B_TEMPLATES,
}

TEMPLATES: dict[str, Template] = {t.name: t for cat in CATALOGS.values() for t in cat}

THEOREM_ORDER = tuple(t.name for t in THEOREM_TEMPLATES)


def template(name: str) -> Template:
    """Look up a template by name; theorem types may be written "VII" or "(VII)"."""
    key = name.strip()
    if key.startswith("(") and key.endswith(")"):
        key = key[1:-1]
    try:
        return TEMPLATES[key]
    except KeyError:
        raise KeyError(f"unknown template {name!r}") from None
