"""Algebras built from pointwise data of a flat connection on a parallelized manifold.

Given, at the base point e and in the frame X_1..X_n,

* the bracket constants C[i][j] = [X_i, X_j](e),
* a constant skew tensor a[i][j] = a(X_i, X_j),
* derivative values dT[l][i][j] = (X_l T_ij)(e) of the torsion components,

the torsion is T = -C, and the ternary constants come from

    r^m_{l,ij} = -( dT[l][i][j]^m - sum_s T^m_{ls} (T^s_{ij} + a^s_{ij}) ).

The connection is flat, so covariant derivatives of the torsion components
are their plain directional derivatives along the frame.  Binary products:
x . y = a(x, y) and x * y = [x, y](e) - a(x, y).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import (
    Algebra,
    BinaryTable,
    Constants2D,
    TernaryTable,
    constants2d,
    from_constants2d,
    make_algebra,
    vadd,
    vsub,
    zero_vector,
)
from .classify import classify
from .errors import SkewViolation, WrongDimension
from .identities import CheckReport, all_pass, check_hta, check_reduced, is_reduced_valid


@dataclass(frozen=True)
class ConnectionData:
    dim: int
    bracket: BinaryTable
    a_tensor: BinaryTable
    dT: TernaryTable

    @classmethod
    def build(cls, dim: int, bracket, a_tensor, dT) -> "ConnectionData":
        """Validated constructor; tables are coerced to Fractions and checked for skewness."""
        # reuse the algebra validator: same shapes, same skew conditions
        try:
            alg = make_algebra(dim, a_tensor, bracket, dT)
        except SkewViolation as exc:
            name = {"dot": "a_tensor", "star": "bracket", "triple": "dT"}[exc.table]
            raise SkewViolation(name, exc.indices) from None
        return cls(dim, alg.star, alg.dot, alg.triple)


def _zero_binary(n):
    return tuple(tuple(zero_vector(n) for _ in range(n)) for _ in range(n))


def torsion_at_e(data: ConnectionData) -> BinaryTable:
    return tuple(tuple(tuple(-x for x in w) for w in row) for row in data.bracket)


def ternary_from_connection(data: ConnectionData, torsion_sign: int = 1, derivative_sign: int = 1) -> TernaryTable:
    """Ternary constants r[l][i][j] read off the torsion relation.

    ``torsion_sign`` and ``derivative_sign`` select alternative sign readings
    (T = +[Y, Z] and/or the derivative term negated); the default is the
    literal one.
    """
    n = data.dim
    T = torsion_at_e(data) if torsion_sign == 1 else data.bracket
    Ta = [[vadd(T[i][j], data.a_tensor[i][j]) for j in range(n)] for i in range(n)]
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for l, i, j in product(range(n), repeat=3):
        quad = [sum(T[l][s][m] * Ta[i][j][s] for s in range(n)) for m in range(n)]
        deriv = data.dT[l][i][j]
        if derivative_sign != 1:
            deriv = tuple(-x for x in deriv)
        out[l][i][j] = tuple(-x for x in vsub(deriv, quad))
    return tuple(tuple(tuple(row) for row in plane) for plane in out)


def algebra_from_connection(data: ConnectionData, **readings) -> Algebra:
    star = tuple(
        tuple(vsub(data.bracket[i][j], data.a_tensor[i][j]) for j in range(data.dim))
        for i in range(data.dim)
    )
    return make_algebra(data.dim, data.a_tensor, star, ternary_from_connection(data, **readings))


def connection_from_algebra(alg: Algebra) -> ConnectionData:
    """Connection data whose algebra is ``alg`` (bracket = dot + star, dT solved from r)."""
    n = alg.dim
    bracket = tuple(tuple(vadd(alg.dot[i][j], alg.star[i][j]) for j in range(n)) for i in range(n))
    data = ConnectionData(n, bracket, alg.dot, tuple(_zero_binary(n) for _ in range(n)))
    # dT = quad - r, with quad the sum_s T_ls (T_ij + a_ij) term of the relation
    quad = ternary_from_connection(data)  # equals quad when dT = 0
    dT = tuple(
        tuple(tuple(vsub(quad[l][i][j], alg.triple[l][i][j]) for j in range(n)) for i in range(n))
        for l in range(n)
    )
    return ConnectionData(n, bracket, alg.dot, dT)


WORKED_EXAMPLE_CLAIMED = Constants2D.of([1, 1, 1, 0, -1, 1, 1, -1])


def worked_example_connection() -> ConnectionData:
    """Frame with [X1,X2](e) = 2X1 + X2, a(X1,X2) = X1 + X2, X1 T12 = (1,-1), X2 T12 = (1,0)."""
    z = (0, 0)

    def skew(w):
        return ((z, w), (tuple(-x for x in w), z))

    return ConnectionData.build(
        2,
        bracket=skew((2, 1)),
        a_tensor=skew((1, 1)),
        dT=(skew((1, -1)), skew((1, 0))),
    )


READINGS: dict[str, dict] = {
    "literal": {},
    "torsion=+bracket": {"torsion_sign": -1},
    "negated-derivative": {"derivative_sign": -1},
    "both-signs-flipped": {"torsion_sign": -1, "derivative_sign": -1},
}


@dataclass
class ReadingAudit:
    name: str
    constants: Constants2D | None
    algebra: Algebra
    reduced: list[CheckReport]
    hta: list[CheckReport]
    valid: bool
    theorem_type: str | None = None


@dataclass
class ConnectionAudit:
    readings: list[ReadingAudit] = field(default_factory=list)

    @property
    def literal(self) -> ReadingAudit:
        return self.readings[0]


def _audit_algebra(name: str, alg: Algebra) -> ReadingAudit:
    reduced = check_reduced(alg)
    hta = check_hta(alg)
    valid = all_pass(hta)
    kind = classify(alg).theorem_type if is_reduced_valid(alg) else None
    return ReadingAudit(name, constants2d(alg), alg, reduced, hta, valid, kind)


def audit_connection_example(data: ConnectionData, stated: Constants2D | None = None) -> ConnectionAudit:
    """Build the algebra under each sign reading, check it, and classify it when valid.

    ``stated`` adds a row for separately stated constants (for example the
    published values of a worked example); no verdict is assumed for any row.
    """
    if data.dim != 2:
        raise WrongDimension("the audit covers 2-dimensional data")
    audit = ConnectionAudit()
    for name, kw in READINGS.items():
        audit.readings.append(_audit_algebra(name, algebra_from_connection(data, **kw)))
    if stated is not None:
        audit.readings.append(_audit_algebra("stated", from_constants2d(stated)))
    return audit
