"""Exact scalars, vectors, matrices and structure-constant tables.

An algebra carries two skew binary products ("dot" and "star") and one
ternary product skew in its last two slots, all stored as full tables of
coordinate vectors over the rationals:

    dot[i][j]       = x_i . x_j
    star[i][j]      = x_i * x_j
    triple[z][i][j] = <x_z; x_i, x_j>

Matrices are row-major tuples; column j of a basis-change matrix holds the
j-th new basis vector in old coordinates.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Literal, Sequence

from .errors import DimensionMismatch, SingularMatrix, SkewViolation, WrongDimension

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]
BinaryTable = tuple[tuple[Vector, ...], ...]
TernaryTable = tuple[tuple[tuple[Vector, ...], ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean scalar {x!r}")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def vec(xs: Iterable) -> Vector:
    return tuple(rational(x) for x in xs)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if m == i else ZERO for m in range(n))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def vadd(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vscale(s, x: Vector) -> Vector:
    return tuple(s * a for a in x)


# -- matrices ---------------------------------------------------------------


def mat(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if any(len(r) != len(m) for r in m):
        raise DimensionMismatch("matrix must be square")
    return m


def identity_matrix(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def from_columns(*cols: Sequence) -> Matrix:
    n = len(cols)
    return tuple(tuple(rational(cols[j][i]) for j in range(n)) for i in range(n))


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO) for j in range(n))
        for i in range(n)
    )


def matvec(a: Matrix, x: Sequence) -> Vector:
    return tuple(sum((ai * xi for ai, xi in zip(row, x)), ZERO) for row in a)


def _eliminate(m: Matrix):
    """Gauss-Jordan on [m | I]; returns (det, inverse or None)."""
    n = len(m)
    work = [list(row) + list(unit_vector(n, i)) for i, row in enumerate(m)]
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return ZERO, None
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        p = work[col][col]
        det *= p
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det, tuple(tuple(row[n:]) for row in work)


def det(m: Matrix) -> Fraction:
    m = mat(m)
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return _eliminate(m)[0]


def inverse(m: Matrix) -> Matrix:
    m = mat(m)
    if len(m) == 2:
        d = det(m)
        if d == 0:
            raise SingularMatrix("matrix is singular")
        return ((m[1][1] / d, -m[0][1] / d), (-m[1][0] / d, m[0][0] / d))
    d, inv = _eliminate(m)
    if inv is None:
        raise SingularMatrix("matrix is singular")
    return inv


def det2(x: Sequence, y: Sequence):
    """Determinant of the 2x2 matrix with columns x and y."""
    return x[0] * y[1] - x[1] * y[0]


# -- algebras ---------------------------------------------------------------


@dataclass(frozen=True)
class Algebra:
    dim: int
    dot: BinaryTable
    star: BinaryTable
    triple: TernaryTable

    def __repr__(self) -> str:
        if self.dim == 2:
            return f"Algebra(dim=2, {constants2d(self)})"
        return f"Algebra(dim={self.dim}, ...)"


@dataclass(frozen=True)
class Constants2D:
    """The eight scalars of a 2D algebra in the basis (u, v).

    u.v = a u + b v,  u*v = c u + d v,  <u;u,v> = e u + f v,  <v;u,v> = k u + l v
    """

    a: Fraction = ZERO
    b: Fraction = ZERO
    c: Fraction = ZERO
    d: Fraction = ZERO
    e: Fraction = ZERO
    f: Fraction = ZERO
    k: Fraction = ZERO
    l: Fraction = ZERO

    NAMES = ("a", "b", "c", "d", "e", "f", "k", "l")

    def __post_init__(self):
        for name in self.NAMES:
            object.__setattr__(self, name, rational(getattr(self, name)))

    @classmethod
    def of(cls, values: Sequence) -> "Constants2D":
        if len(values) != 8:
            raise DimensionMismatch("need exactly eight constants a,b,c,d,e,f,k,l")
        return cls(*values)

    def as_tuple(self) -> tuple[Fraction, ...]:
        return astuple(self)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.NAMES, astuple(self)))

    def replace(self, **changes) -> "Constants2D":
        values = self.as_dict()
        values.update(changes)
        return Constants2D(**values)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{n}={v}" for n, v in self.as_dict().items()) + ")"


def _table(data, depth: int, n: int, name: str):
    """Coerce nested sequences to tuples of Fractions of shape n^depth x n."""
    if depth == 0:
        if len(data) != n:
            raise DimensionMismatch(f"{name}: vector of length {len(data)} in dimension {n}")
        return vec(data)
    if len(data) != n:
        raise DimensionMismatch(f"{name}: expected {n} entries, got {len(data)}")
    return tuple(_table(row, depth - 1, n, name) for row in data)


def make_algebra(dim: int, dot, star, triple) -> Algebra:
    """Validated constructor: coerces entries to Fractions and checks skew-symmetry."""
    if not isinstance(dim, int) or dim < 1:
        raise DimensionMismatch(f"dimension must be a positive integer, got {dim!r}")
    dot = _table(dot, 2, dim, "dot")
    star = _table(star, 2, dim, "star")
    triple = _table(triple, 3, dim, "triple")
    for name, t in (("dot", dot), ("star", star)):
        for i, j in product(range(dim), repeat=2):
            if t[i][j] != tuple(-x for x in t[j][i]):
                raise SkewViolation(name, (i, j))
    for z, i, j in product(range(dim), repeat=3):
        if triple[z][i][j] != tuple(-x for x in triple[z][j][i]):
            raise SkewViolation("triple", (z, i, j))
    return Algebra(dim, dot, star, triple)


def zero_algebra(dim: int = 2) -> Algebra:
    z = zero_vector(dim)
    b = tuple((z,) * dim for _ in range(dim))
    return Algebra(dim, b, b, tuple(b for _ in range(dim)))


def _check_vectors(n: int, *xs: Sequence) -> None:
    for x in xs:
        if len(x) != n:
            raise DimensionMismatch(f"vector of length {len(x)} in dimension {n}")


def eval_binary(table: BinaryTable, x: Sequence, y: Sequence) -> Vector:
    """Bilinear extension: sum over i, j of x_i y_j table[i][j]."""
    n = len(table)
    _check_vectors(n, x, y)
    out = [ZERO] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            s = x[i] * y[j]
            if s == 0:
                continue
            w = table[i][j]
            for m in range(n):
                out[m] += s * w[m]
    return tuple(out)


def eval_ternary(table: TernaryTable, z: Sequence, x: Sequence, y: Sequence) -> Vector:
    """Trilinear extension: sum over p, i, j of z_p x_i y_j table[p][i][j]."""
    n = len(table)
    _check_vectors(n, z, x, y)
    out = [ZERO] * n
    for p in range(n):
        if z[p] == 0:
            continue
        for i in range(n):
            zx = z[p] * x[i]
            if zx == 0:
                continue
            for j in range(n):
                s = zx * y[j]
                if s == 0:
                    continue
                w = table[p][i][j]
                for m in range(n):
                    out[m] += s * w[m]
    return tuple(out)


def _check_basis_matrix(alg: Algebra, P: Matrix) -> Fraction:
    if len(P) != alg.dim or any(len(r) != alg.dim for r in P):
        raise DimensionMismatch("basis-change matrix does not match the algebra dimension")
    d = det(P)
    if d == 0:
        raise SingularMatrix("basis-change matrix is singular")
    return d


def change_basis_generic(alg: Algebra, P: Matrix) -> Algebra:
    """Re-express alg in the basis formed by the columns of P (any dimension).

    New constants: c'^k_ij = sum (P^-1)^k_m c^m_pq P^p_i P^q_j, and likewise for
    the ternary table with three factors of P.
    """
    P = mat(P)
    _check_basis_matrix(alg, P)
    n = alg.dim
    Pinv = inverse(P)
    cols = [column(P, j) for j in range(n)]

    def binary(t):
        return tuple(
            tuple(matvec(Pinv, eval_binary(t, cols[i], cols[j])) for j in range(n))
            for i in range(n)
        )

    triple = tuple(
        tuple(
            tuple(matvec(Pinv, eval_ternary(alg.triple, cols[z], cols[i], cols[j])) for j in range(n))
            for i in range(n)
        )
        for z in range(n)
    )
    return Algebra(n, binary(alg.dot), binary(alg.star), triple)


def ternary_matrix(alg: Algebra) -> Matrix:
    """For dim 2: T = [[e, k], [f, l]], so that <z; x, y> = det(x, y) T z."""
    t1 = alg.triple[0][0][1]
    t2 = alg.triple[1][0][1]
    return ((t1[0], t2[0]), (t1[1], t2[1]))


def change_basis(alg: Algebra, P: Matrix) -> Algebra:
    """Re-express alg in the basis formed by the columns of P.

    In dimension 2 every skew bilinear product is x o y = det(x, y) w with w = u o v,
    so for new basis vectors p1 = P e1, p2 = P e2 we get p1 o p2 = det(P) w in old
    coordinates, i.e. w' = det(P) P^-1 w.  Likewise <z; x, y> = det(x, y) T z gives
    T' = det(P) P^-1 T P.  Other dimensions use the general tensor law.
    """
    P = mat(P)
    if alg.dim != 2:
        return change_basis_generic(alg, P)
    d = _check_basis_matrix(alg, P)
    Pinv = inverse(P)

    def product_vector(w: Vector) -> Vector:
        return vscale(d, matvec(Pinv, w))

    T = ternary_matrix(alg)
    T2 = matmul(Pinv, matmul(T, P))
    k8 = Constants2D(
        *product_vector(alg.dot[0][1]),
        *product_vector(alg.star[0][1]),
        d * T2[0][0], d * T2[1][0], d * T2[0][1], d * T2[1][1],
    )
    return from_constants2d(k8)


def constants2d(alg: Algebra) -> Constants2D:
    if alg.dim != 2:
        raise WrongDimension(f"constants2d needs a 2-dimensional algebra, got dim={alg.dim}")
    return Constants2D(*alg.dot[0][1], *alg.star[0][1], *alg.triple[0][0][1], *alg.triple[1][0][1])


def from_constants2d(k8: Constants2D) -> Algebra:
    z = zero_vector(2)

    def skew(w):
        w = tuple(w)
        return ((z, w), (tuple(-x for x in w), z))

    return Algebra(
        2,
        skew((k8.a, k8.b)),
        skew((k8.c, k8.d)),
        (skew((k8.e, k8.f)), skew((k8.k, k8.l))),
    )


def specialize(alg: Algebra, which: Literal["zero_dot", "zero_star"]) -> Algebra:
    """Copy of alg with one binary table replaced by zeros."""
    zero = zero_algebra(alg.dim).dot
    if which == "zero_dot":
        return Algebra(alg.dim, zero, alg.star, alg.triple)
    if which == "zero_star":
        return Algebra(alg.dim, alg.dot, zero, alg.triple)
    raise ValueError(f"unknown specialization {which!r}")


def binary_is_zero(table: BinaryTable) -> bool:
    return all(is_zero(w) for row in table for w in row)


def ternary_is_zero(table: TernaryTable) -> bool:
    return all(is_zero(w) for plane in table for row in plane for w in row)


def nullspace(rows: Sequence[Sequence]) -> list[Vector]:
    """Basis of {x : rows . x = 0} over the rationals (reduced row echelon form)."""
    m = [list(map(rational, r)) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        x = [ZERO] * ncols
        x[free] = ONE
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][free]
        basis.append(tuple(x))
    return basis


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    from math import isqrt

    q = rational(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _squarefree(n: int) -> tuple[int, int]:
    """n = core * root**2 with core squarefree."""
    from sympy import factorint

    core, root = (-1 if n < 0 else 1), 1
    for p, e in factorint(abs(n)).items():
        root *= p ** (e // 2)
        if e % 2:
            core *= p
    return core, root


def _sqrt_mod(a: int, m: int) -> int | None:
    from sympy.ntheory import sqrt_mod

    if m == 1:
        return 0
    t = sqrt_mod(a % m, m)
    if t is None:
        return None
    if (t * t - a) % m:
        raise ArithmeticError(f"bad square root of {a} mod {m}")
    return t


def _legendre(a: int, b: int) -> tuple[int, int, int] | None:
    """Nontrivial integers with x^2 = a y^2 + b z^2 (a, b squarefree, nonzero), or None."""
    if a < 0 and b < 0:
        return None
    ra = isqrt(a) if a > 0 else -1
    if ra * ra == a:
        return ra, 1, 0
    rb = isqrt(b) if b > 0 else -1
    if rb * rb == b:
        return rb, 0, 1
    if abs(a) > abs(b):
        sol = _legendre(b, a)
        return None if sol is None else (sol[0], sol[2], sol[1])
    # descent: t^2 - a = b c with |c| < |b|, then multiply norms in Q(sqrt a)
    t = _sqrt_mod(a, abs(b))
    if t is None:
        return None
    if t > abs(b) // 2:
        t -= abs(b)
    c0 = (t * t - a) // b
    c, s = _squarefree(c0)
    sol = _legendre(a, c)
    if sol is None:
        return None
    X, Y, Z = sol
    # X^2 - a Y^2 = c0 (Z/s)^2 and t^2 - a = b c0; multiply the norms, clear s
    x, y, z = s * (t * X + a * Y), s * (X + t * Y), c0 * Z
    g = gcd(gcd(x, y), z)
    return x // g, y // g, z // g


def conic_point(a, b) -> tuple[Fraction, Fraction, Fraction] | None:
    """Nontrivial rational (x, y, z) with x^2 = a y^2 + b z^2, or None when none exists.

    Legendre descent; nonexistence is exact (local obstruction found).
    """
    a, b = rational(a), rational(b)
    if a == 0:
        return ZERO, ONE, ZERO
    if b == 0:
        return ZERO, ZERO, ONE
    # a = an/ad = (an*ad) / ad^2, then strip square factors
    ka, ra = _squarefree(a.numerator * a.denominator)
    kb, rb = _squarefree(b.numerator * b.denominator)
    sol = _legendre(ka, kb)
    if sol is None:
        return None
    X, Y, Z = sol
    # X^2 = ka Y^2 + kb Z^2 with a = ka ra^2 / ad^2, b = kb rb^2 / bd^2
    x = Fraction(X)
    y = Fraction(Y * a.denominator, ra)
    z = Fraction(Z * b.denominator, rb)
    if x * x != a * y * y + b * z * z:
        raise ArithmeticError("conic solution failed verification")
    return x, y, z
