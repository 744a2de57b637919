"""Residuals and checks for the hyporeductive identity system.

Every identity is multilinear in each of its free variables, so checking it
on all tuples of basis vectors decides whether it holds everywhere.  The
residual of an identity is its left side minus its right side; for
identities written as "sum = 0" it is the sum itself.

Variable order of each identity (the order of ``args``) is listed in
``IDENTITIES[tag].variables``.  Basis indices are 0-based, so x1 is index 0.

The 2D reduced system (tags R14..R19) takes index arguments instead of
vectors: R15 and R16 take ``(i,)``, R17 takes ``(i, j)``, the rest take ``()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional, Sequence

from .algebra import Algebra, Constants2D, Vector, binary_is_zero, constants2d
from .errors import (
    ArityMismatch,
    PreconditionBinaryNonzero,
    PreconditionDotNonzero,
    PreconditionStarNonzero,
    UnknownIdentity,
    WrongDimension,
)

DEFAULT_VIOLATION_LIMIT = None  # keep every violation


def _num(x: Fraction):
    # ints keep the hot loops off Fraction arithmetic for integral tables
    return x.numerator if x.denominator == 1 else x


class Ops:
    """Bilinear/trilinear evaluation over an algebra's tables, on plain tuples."""

    __slots__ = ("n", "_dot", "_star", "_tri", "_cache_dot", "_cache_star", "_cache_tri", "cache_nested")

    def __init__(self, alg: Algebra):
        n = self.n = alg.dim

        def nonzero_binary(t):
            return [
                (i, j, tuple(_num(x) for x in t[i][j]))
                for i in range(n) for j in range(n) if any(t[i][j])
            ]

        self._dot = nonzero_binary(alg.dot)
        self._star = nonzero_binary(alg.star)
        self._tri = [
            (p, i, j, tuple(_num(x) for x in alg.triple[p][i][j]))
            for p in range(n) for i in range(n) for j in range(n)
            if any(alg.triple[p][i][j])
        ]
        # the identities revisit the same small set of arguments many times
        self._cache_dot: dict = {}
        self._cache_star: dict = {}
        self._cache_tri: dict = {}
        self.cache_nested: dict = {}

    def _binary(self, entries, x, y):
        out = [0] * self.n
        for i, j, w in entries:
            s = x[i] * y[j]
            if s:
                for m, wm in enumerate(w):
                    out[m] += s * wm
        return tuple(out)

    def dot(self, x, y):
        key = (x, y)
        r = self._cache_dot.get(key)
        if r is None:
            r = self._cache_dot[key] = self._binary(self._dot, x, y)
        return r

    def star(self, x, y):
        key = (x, y)
        r = self._cache_star.get(key)
        if r is None:
            r = self._cache_star[key] = self._binary(self._star, x, y)
        return r

    def tri(self, z, x, y):
        key = (z, x, y)
        r = self._cache_tri.get(key)
        if r is None:
            r = self._cache_tri[key] = self._tri_uncached(z, x, y)
        return r

    def _tri_uncached(self, z, x, y):
        out = [0] * self.n
        for p, i, j, w in self._tri:
            s = z[p] * x[i] * y[j]
            if s:
                for m, wm in enumerate(w):
                    out[m] += s * wm
        return tuple(out)

    def zero(self):
        return (0,) * self.n

    def unit(self, i: int):
        return tuple(1 if m == i else 0 for m in range(self.n))


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def _neg(v):
    return tuple(-x for x in v)


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _cyclic3(f, a, b, c):
    return _add(f(a, b, c), f(b, c, a), f(c, a, b))


def _cyclic_pairs(o, tag, f, p1, p2, p3):
    # on basis tuples every rotation is itself another tuple, so terms repeat
    cache = o.cache_nested

    def term(a, b, c):
        key = (tag, a, b, c)
        r = cache.get(key)
        if r is None:
            r = cache[key] = f(a, b, c)
        return r

    return _add(term(p1, p2, p3), term(p2, p3, p1), term(p3, p1, p2))


# -- shared sub-expressions ------------------------------------------------


def _delta(o: Ops, z, k, x, y):
    """k . <z;x,y> - z . <k;x,y> + <z . k; x, y>"""
    return _add(o.dot(k, o.tri(z, x, y)), _neg(o.dot(z, o.tri(k, x, y))), o.tri(o.dot(z, k), x, y))


def _double_triple(o: Ops, chi, xi, eta, zeta, kappa):
    """<<chi;xi,eta>;zeta,kappa> - <<chi;zeta,kappa>;xi,eta>
    + <chi;zeta,<kappa;xi,eta>> - <chi;kappa,<zeta;xi,eta>>"""
    return _add(
        o.tri(o.tri(chi, xi, eta), zeta, kappa),
        _neg(o.tri(o.tri(chi, zeta, kappa), xi, eta)),
        o.tri(chi, zeta, o.tri(kappa, xi, eta)),
        _neg(o.tri(chi, kappa, o.tri(zeta, xi, eta))),
    )


def _star_derivation(o: Ops, xi, eta, zeta, kappa):
    """zeta*<kappa;xi,eta> - kappa*<zeta;xi,eta>"""
    return _sub(o.star(zeta, o.tri(kappa, xi, eta)), o.star(kappa, o.tri(zeta, xi, eta)))


# -- identities of the abstract algebra -------------------------------------


def _h2(o, xi, eta, zeta):
    return _cyclic3(lambda a, b, c: _sub(o.dot(a, o.dot(b, c)), o.tri(a, b, c)), xi, eta, zeta)


def _h3(o, xi, eta, zeta):
    return _cyclic3(lambda a, b, c: o.star(c, o.dot(a, b)), xi, eta, zeta)


def _h4(o, xi, eta, zeta, theta):
    return _cyclic3(lambda a, b, c: o.tri(theta, c, o.dot(a, b)), xi, eta, zeta)


def _h5(o, xi, eta, zeta, kappa):
    lhs = _delta(o, zeta, kappa, xi, eta)
    s_xe = o.star(xi, eta)
    s_zk = o.star(zeta, kappa)
    rhs = _add(
        o.tri(s_xe, zeta, kappa),
        _neg(o.tri(s_zk, xi, eta)),
        _star_derivation(o, xi, eta, zeta, kappa),
        o.star(s_xe, s_zk),
        o.dot(s_xe, s_zk),
    )
    return _sub(lhs, rhs)


def _h6(o, xi, eta, zeta, kappa, chi):
    return _add(o.dot(chi, _delta(o, zeta, kappa, xi, eta)), _double_triple(o, chi, xi, eta, zeta, kappa))


def _h7(o, xi, eta, zeta, kappa, chi):
    return o.star(chi, _delta(o, zeta, kappa, xi, eta))


def _h8(o, xi, eta, zeta, kappa, chi, theta):
    return o.tri(theta, chi, _delta(o, zeta, kappa, xi, eta))


def _h9(o, xi, eta, zeta, kappa):
    return _add(_delta(o, zeta, kappa, xi, eta), _delta(o, xi, eta, zeta, kappa))


def _h10(o, xi, eta, zeta, kappa):
    return _add(_star_derivation(o, xi, eta, zeta, kappa), _star_derivation(o, zeta, kappa, xi, eta))


def _h11(o, xi, eta, zeta, kappa, lam, mu):
    def term(p1, p2, p3):
        (x, y), (z, k), (l, m) = p1, p2, p3
        ty = o.tri(y, z, k)
        tx = o.tri(x, z, k)
        inner = _add(o.tri(o.dot(x, y), z, k), o.dot(y, tx), _neg(o.dot(x, ty)))

        def block(t, w):
            return _add(o.tri(o.dot(l, m), t, w), o.dot(m, o.tri(l, t, w)), _neg(o.dot(l, o.tri(m, t, w))))

        return _add(o.tri(inner, l, m), block(ty, x), _neg(block(tx, y)))

    return _cyclic_pairs(o, "H11", term, (xi, eta), (zeta, kappa), (lam, mu))


def _nested_pair(o, x, y, z, k, l, m):
    """(<m;<y;z,k>,x> - <m;<x;z,k>,y>,  <l;<x;z,k>,y> - <l;<y;z,k>,x>)"""
    key = ("pair", x, y, z, k, l, m)
    hit = o.cache_nested.get(key)
    if hit is not None:
        return hit
    ty = o.tri(y, z, k)
    tx = o.tri(x, z, k)
    first = _sub(o.tri(m, ty, x), o.tri(m, tx, y))
    second = _sub(o.tri(l, tx, y), o.tri(l, ty, x))
    o.cache_nested[key] = first, second
    return first, second


def _h12(o, xi, eta, zeta, kappa, lam, mu):
    def term(p1, p2, p3):
        (x, y), (z, k), (l, m) = p1, p2, p3
        first, second = _nested_pair(o, x, y, z, k, l, m)
        return _add(o.star(first, l), o.star(second, m))

    return _cyclic_pairs(o, "H12", term, (xi, eta), (zeta, kappa), (lam, mu))


def _h13(o, xi, eta, zeta, kappa, lam, mu, theta):
    def term(p1, p2, p3):
        (x, y), (z, k), (l, m) = p1, p2, p3
        first, second = _nested_pair(o, x, y, z, k, l, m)
        return _add(o.tri(theta, first, l), o.tri(theta, second, m))

    return _cyclic_pairs(o, ("H13", theta), term, (xi, eta), (zeta, kappa), (lam, mu))


# -- Bol algebra, Lie triple algebra and Lie triple system lists ------------


def _bol1(o, xi, eta, zeta):
    return _cyclic3(o.tri, xi, eta, zeta)


def _bol2(o, xi, eta, zeta, kappa):
    s_xe = o.star(xi, eta)
    s_zk = o.star(zeta, kappa)
    return _add(
        o.tri(s_xe, zeta, kappa),
        _neg(o.tri(s_zk, xi, eta)),
        _star_derivation(o, xi, eta, zeta, kappa),
        o.star(s_xe, s_zk),
    )


def _bol3(o, xi, eta, zeta, kappa, chi):
    return _double_triple(o, chi, xi, eta, zeta, kappa)


def _lta3(o, xi, eta, zeta, kappa):
    return _delta(o, zeta, kappa, xi, eta)


# -- the 2D reduced system --------------------------------------------------


def _j(o):
    u, v = o.unit(0), o.unit(1)
    return _sub(o.star(u, o.tri(v, u, v)), o.star(v, o.tri(u, u, v)))


def _n18(o):
    u, v = o.unit(0), o.unit(1)
    return _add(o.tri(o.dot(u, v), u, v), _neg(o.dot(u, o.tri(v, u, v))), o.dot(v, o.tri(u, u, v)))


def _r14(o):
    return _sub(_j(o), _n18(o))


def _r15(o, i):
    u, v = o.unit(0), o.unit(1)
    x = o.unit(i)
    return _add(o.dot(x, _j(o)), _neg(o.tri(x, u, o.tri(v, u, v))), o.tri(x, v, o.tri(u, u, v)))


def _r16(o, i):
    return o.star(o.unit(i), _j(o))


def _r17(o, i, j):
    return o.tri(o.unit(j), o.unit(i), _j(o))


def _r18(o):
    return _n18(o)


def _r19(o):
    return _j(o)


@dataclass(frozen=True)
class Identity:
    tag: str
    arity: int
    variables: tuple[str, ...]
    evaluate: Callable = field(repr=False)
    reduced: bool = False


def _ident(tag, variables, fn, reduced=False):
    variables = tuple(variables.split()) if variables else ()
    return Identity(tag, len(variables), variables, fn, reduced)


IDENTITIES: dict[str, Identity] = {
    i.tag: i
    for i in (
        _ident("H2", "xi eta zeta", _h2),
        _ident("H3", "xi eta zeta", _h3),
        _ident("H4", "xi eta zeta theta", _h4),
        _ident("H5", "xi eta zeta kappa", _h5),
        _ident("H6", "xi eta zeta kappa chi", _h6),
        _ident("H7", "xi eta zeta kappa chi", _h7),
        _ident("H8", "xi eta zeta kappa chi theta", _h8),
        _ident("H9", "xi eta zeta kappa", _h9),
        _ident("H10", "xi eta zeta kappa", _h10),
        _ident("H11", "xi eta zeta kappa lambda mu", _h11),
        _ident("H12", "xi eta zeta kappa lambda mu", _h12),
        _ident("H13", "xi eta zeta kappa lambda mu theta", _h13),
        _ident("BOL1", "xi eta zeta", _bol1),
        _ident("BOL2", "xi eta zeta kappa", _bol2),
        _ident("BOL3", "xi eta zeta kappa chi", _bol3),
        _ident("LTA1", "xi eta zeta", _h2),
        _ident("LTA2", "xi eta zeta theta", _h4),
        _ident("LTA3", "xi eta zeta kappa", _lta3),
        _ident("LTA4", "xi eta zeta kappa chi", _bol3),
        _ident("LTS1", "xi eta zeta", _bol1),
        _ident("LTS2", "xi eta zeta kappa chi", _bol3),
        _ident("R14", "", _r14, True),
        _ident("R15", "i", _r15, True),
        _ident("R16", "i", _r16, True),
        _ident("R17", "i j", _r17, True),
        _ident("R18", "", _r18, True),
        _ident("R19", "", _r19, True),
    )
}

HTA_SET = tuple(f"H{n}" for n in range(2, 14))
BOL_SET = ("BOL1", "BOL2", "BOL3")
LTA_SET = ("LTA1", "LTA2", "LTA3", "LTA4")
LTS_SET = ("LTS1", "LTS2", "H9", "H10", "H11", "H12", "H13")
REDUCED_SET = ("R14", "R15", "R16", "R17", "R18", "R19")


@dataclass(frozen=True)
class Residual:
    args: tuple[int, ...]
    value: Vector


@dataclass(frozen=True)
class CheckReport:
    identity: str
    passed: bool
    violations: tuple[Residual, ...]
    tuples_checked: int
    violation_count: int = 0


def _lookup(tag: str) -> Identity:
    try:
        return IDENTITIES[tag]
    except KeyError:
        raise UnknownIdentity(tag) from None


def _frac(v) -> Vector:
    return tuple(Fraction(x) for x in v)


def _require_dim2(alg: Algebra, what: str) -> None:
    if alg.dim != 2:
        raise WrongDimension(f"{what} is defined for 2-dimensional algebras only (dim={alg.dim})")


def _arg_tuples(alg: Algebra, ident: Identity):
    return product(range(alg.dim if not ident.reduced else 2), repeat=ident.arity)


def _evaluator(ops: Ops, ident: Identity):
    if ident.reduced:
        return lambda args: ident.evaluate(ops, *args)
    units = [ops.unit(i) for i in range(ops.n)]
    return lambda args: ident.evaluate(ops, *(units[i] for i in args))


def residual(alg: Algebra, tag: str, args: Sequence[int]) -> Vector:
    """Exact residual of identity ``tag`` at the given basis-index arguments."""
    ident = _lookup(tag)
    args = tuple(args)
    if len(args) != ident.arity:
        raise ArityMismatch(f"{tag} takes {ident.arity} arguments, got {len(args)}")
    if ident.reduced:
        _require_dim2(alg, tag)
    if any(not 0 <= a < alg.dim for a in args):
        raise ArityMismatch(f"basis index out of range in {args}")
    return _frac(_evaluator(Ops(alg), ident)(args))


def residual_at(alg: Algebra, tag: str, vectors: Sequence[Sequence]) -> Vector:
    """Residual at arbitrary (non-basis) vectors; only for non-reduced identities."""
    ident = _lookup(tag)
    if ident.reduced:
        raise ArityMismatch(f"{tag} takes basis indices, not vectors")
    if len(vectors) != ident.arity:
        raise ArityMismatch(f"{tag} takes {ident.arity} arguments, got {len(vectors)}")
    ops = Ops(alg)
    return _frac(ident.evaluate(ops, *(tuple(_num(Fraction(x)) for x in v) for v in vectors)))


def check_identity(alg: Algebra, tag: str, limit: Optional[int] = DEFAULT_VIOLATION_LIMIT, ops: Ops | None = None) -> CheckReport:
    """Evaluate ``tag`` on every basis tuple; ``limit`` caps the stored violations."""
    ident = _lookup(tag)
    if ident.reduced:
        _require_dim2(alg, tag)
    evaluate = _evaluator(ops or Ops(alg), ident)
    stored: list[Residual] = []
    count = checked = 0
    for args in _arg_tuples(alg, ident):
        checked += 1
        r = evaluate(args)
        if any(r):
            count += 1
            if limit is None or len(stored) < limit:
                stored.append(Residual(args, _frac(r)))
    return CheckReport(tag, count == 0, tuple(stored), checked, count)


def holds(alg: Algebra, tag: str, ops: Ops | None = None) -> bool:
    """Verdict only; stops at the first violating tuple."""
    ident = _lookup(tag)
    if ident.reduced:
        _require_dim2(alg, tag)
    evaluate = _evaluator(ops or Ops(alg), ident)
    return not any(any(evaluate(args)) for args in _arg_tuples(alg, ident))


def _check_set(alg: Algebra, tags, limit) -> list[CheckReport]:
    ops = Ops(alg)
    return [check_identity(alg, t, limit, ops) for t in tags]


def all_pass(reports: Sequence[CheckReport]) -> bool:
    return all(r.passed for r in reports)


def check_hta(alg: Algebra, limit: Optional[int] = DEFAULT_VIOLATION_LIMIT) -> list[CheckReport]:
    return _check_set(alg, HTA_SET, limit)


def is_hta(alg: Algebra) -> bool:
    # cheap low-arity identities first so invalid algebras exit early
    ops = Ops(alg)
    order = ("H5", "H9", "H10", "H6", "H2", "H3", "H4", "H7", "H8", "H11", "H12", "H13")
    return all(holds(alg, t, ops) for t in order)


def check_bol(alg: Algebra, limit: Optional[int] = DEFAULT_VIOLATION_LIMIT) -> list[CheckReport]:
    if not binary_is_zero(alg.dot):
        raise PreconditionDotNonzero("Bol identities apply to algebras with zero dot product")
    return _check_set(alg, BOL_SET, limit)


def check_lta(alg: Algebra, limit: Optional[int] = DEFAULT_VIOLATION_LIMIT) -> list[CheckReport]:
    if not binary_is_zero(alg.star):
        raise PreconditionStarNonzero("Lie triple algebra identities apply to algebras with zero star product")
    return _check_set(alg, LTA_SET, limit)


def check_lts(alg: Algebra, limit: Optional[int] = DEFAULT_VIOLATION_LIMIT) -> list[CheckReport]:
    if not (binary_is_zero(alg.dot) and binary_is_zero(alg.star)):
        raise PreconditionBinaryNonzero("Lie triple system identities need both binary products zero")
    return _check_set(alg, LTS_SET, limit)


def check_reduced(alg: Algebra, limit: Optional[int] = DEFAULT_VIOLATION_LIMIT) -> list[CheckReport]:
    _require_dim2(alg, "the reduced system")
    return _check_set(alg, REDUCED_SET, limit)


def is_reduced_valid(alg: Algebra) -> bool:
    _require_dim2(alg, "the reduced system")
    ops = Ops(alg)
    return all(holds(alg, t, ops) for t in REDUCED_SET)


CHECK_SETS = {
    "hta": check_hta,
    "bol": check_bol,
    "lta": check_lta,
    "lts": check_lts,
    "reduced": check_reduced,
}


def compute_J(alg: Algebra) -> Vector:
    """x1*<x2;x1,x2> - x2*<x1;x1,x2>, which equals (e+l)(u*v)."""
    _require_dim2(alg, "J")
    return _frac(_j(Ops(alg)))


def compute_N(alg: Algebra) -> Vector:
    """<u.v;u,v> + v.<u;u,v> - u.<v;u,v>, which equals (bk-al, af-be)."""
    _require_dim2(alg, "N")
    return _frac(_n18(Ops(alg)))


def variety_predicate(k8: Constants2D) -> bool:
    """Closed-form membership test for the solution set of the reduced system."""
    a, b, c, d, e, f, k, l = k8.as_tuple()
    t = e + l
    return (
        t * c == 0 and t * d == 0
        and t * e == 0 and t * f == 0 and t * k == 0 and t * l == 0
        and b * k - a * l == 0
        and a * f - b * e == 0
    )
