"""Classification of valid two-dimensional algebras.

Writing u.v = w_dot, u*v = w_star and T = [[e, k], [f, l]], every product
in dimension 2 has the form x o y = det(x, y) w and <z; x, y> = det(x, y) T z.
Under a basis change P,

    w -> det(P) P^-1 w,        T -> det(P) P^-1 T P,

so zero-ness of w_dot, w_star and T, parallelism of the two product vectors,
zero-ness of trace(T), the sign of det(T) (scaled by det(P)^2), and the sign
of the quadratic form x -> det(x, T x) when it is semidefinite (it pulls
back as Q'(y) = Q(P y)) are all basis-independent.

The reduced identities force trace(T) = 0 and T w_dot = 0, which is what
drives the normal forms below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .algebra import (
    Algebra,
    Constants2D,
    Matrix,
    binary_is_zero,
    change_basis,
    constants2d,
    det,
    det2,
    from_columns,
    identity_matrix,
    inverse,
    is_zero,
    matmul,
    conic_point,
    rational_sqrt,
    ternary_matrix,
)
from .errors import (
    NotValidBol,
    NotValidHta,
    NotValidLta,
    PreconditionDotNonzero,
    PreconditionStarNonzero,
    Unclassifiable,
    WrongDimension,
)
from .identities import all_pass, check_bol, check_lta, is_reduced_valid
from .templates import CATALOGS, THEOREM_TEMPLATES, Template

FAMILIES = ("I", "II_IV", "V", "VI_VIII")


@dataclass(frozen=True)
class TemplateId:
    catalog: str
    index: str
    bindings: dict[str, Fraction]
    side_conditions: tuple[str, ...]
    witness: Optional[Matrix] = None

    @classmethod
    def of(cls, t: Template, k8: Constants2D, witness: Matrix | None = None) -> "TemplateId":
        return cls(t.catalog, t.name, t.bindings(k8), t.side_conditions, witness)

    @property
    def label(self) -> str:
        return f"({self.index})" if self.catalog == "THEOREM" else self.index


@dataclass(frozen=True)
class InvariantRecord:
    star_zero: bool
    dot_zero: bool
    triple_zero: bool
    trace_T: Fraction
    sign_det_T: int
    imT_in_span_dot: Optional[bool]
    star_parallel_dot: Optional[bool]
    form_sign: int

    def obstruction_key(self) -> tuple:
        """Every basis-independent part of the record."""
        return (
            self.star_zero, self.dot_zero, self.triple_zero, self.trace_T == 0,
            self.sign_det_T, self.imT_in_span_dot, self.star_parallel_dot, self.form_sign,
        )


@dataclass(frozen=True)
class ClassificationResult:
    family: str
    theorem_type: str
    matched_templates: tuple[TemplateId, ...]
    invariants: InvariantRecord
    witness: Matrix
    canonical_constants: Constants2D


@dataclass(frozen=True)
class IsoWitness:
    P: Matrix
    verified: bool


@dataclass(frozen=True)
class Inconclusive:
    """Invariants agree but no rational witness was produced."""

    reason: str = ""


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _require_valid(alg: Algebra) -> None:
    if alg.dim != 2:
        raise WrongDimension(f"classification is for 2-dimensional algebras (dim={alg.dim})")
    if not is_reduced_valid(alg):
        raise NotValidHta("the reduced identity system fails; not a hyporeductive triple algebra")


def _form_sign(T: Matrix) -> int:
    """Sign of Q(x) = det(x, T x) when Q is semidefinite and nonzero, else 0."""
    e, k = T[0]
    f, l = T[1]
    # Q(x) = f x1^2 + (l - e) x1 x2 - k x2^2
    if is_zero((e, k, f, l)):
        return 0
    disc = (l - e) ** 2 + 4 * f * k
    if disc > 0:
        return 0
    return _sign(f) if f != 0 else _sign(-k)


def _invariants(alg: Algebra) -> InvariantRecord:
    k8 = constants2d(alg)
    w_dot = (k8.a, k8.b)
    w_star = (k8.c, k8.d)
    T = ternary_matrix(alg)
    dot_zero = is_zero(w_dot)
    star_zero = is_zero(w_star)
    t1, t2 = (k8.e, k8.f), (k8.k, k8.l)
    return InvariantRecord(
        star_zero=star_zero,
        dot_zero=dot_zero,
        triple_zero=is_zero(t1 + t2),
        trace_T=k8.e + k8.l,
        sign_det_T=_sign(det(T)),
        imT_in_span_dot=None if dot_zero else (det2(w_dot, t1) == 0 and det2(w_dot, t2) == 0),
        star_parallel_dot=None if dot_zero or star_zero else det2(w_star, w_dot) == 0,
        form_sign=_form_sign(T),
    )


def invariants(alg: Algebra) -> InvariantRecord:
    _require_valid(alg)
    return _invariants(alg)


def _family(inv: InvariantRecord) -> str:
    if inv.star_zero:
        return "I" if inv.dot_zero else "II_IV"
    return "V" if inv.dot_zero else "VI_VIII"


def family_of(alg: Algebra) -> str:
    _require_valid(alg)
    return _family(_invariants(alg))


def match_templates(k8: Constants2D) -> list[TemplateId]:
    """Every catalog template whose pattern and side conditions hold in the given basis."""
    return [TemplateId.of(t, k8) for cat in CATALOGS.values() for t in cat if t.matches(k8)]


# -- normalization -----------------------------------------------------------


def anchor_matrix(w) -> Matrix:
    """Determinant-one matrix whose first column is w, so that w' = (1, 0)."""
    w0, w1 = w
    if w0 != 0:
        return from_columns((w0, w1), (0, 1 / Fraction(w0)))
    return from_columns((w0, w1), (-1 / Fraction(w1), 0))


def _ternary_normalizer(T: Matrix) -> Matrix:
    """Make e >= 0 with diag(1, -1), then rescale by a scalar so e, f, k are
    coprime-ish integers (largest square factor of their gcd removed)."""
    from math import gcd, lcm, isqrt

    e, f, k = T[0][0], T[1][0], T[0][1]
    if e == 0 and f == 0 and k == 0:
        return identity_matrix(2)
    flip = from_columns((1, 0), (0, -1)) if e < 0 else identity_matrix(2)
    vals = [abs(e), f, k]
    # P = s I multiplies the ternary constants by s^2
    den = lcm(*(Fraction(x).denominator for x in vals))
    ints = [int(x * den * den) for x in vals]
    g = 0
    for x in ints:
        g = gcd(g, x)
    t = 1
    for cand in range(isqrt(g), 0, -1):
        if g % (cand * cand) == 0:
            t = cand
            break
    s = Fraction(den, t)
    return matmul(flip, ((s, Fraction(0)), (Fraction(0), s)))


def normalizer(alg: Algebra) -> Matrix:
    """Basis change to the normal form: anchor on dot, else star, else the ternary."""
    k8 = constants2d(alg)
    if k8.a != 0 or k8.b != 0:
        return anchor_matrix((k8.a, k8.b))
    if k8.c != 0 or k8.d != 0:
        return anchor_matrix((k8.c, k8.d))
    return _ternary_normalizer(ternary_matrix(alg))


def _lowest(templates, k8: Constants2D) -> Optional[Template]:
    return next((t for t in templates if t.matches(k8)), None)


def classify(alg: Algebra) -> ClassificationResult:
    _require_valid(alg)
    inv = _invariants(alg)
    P = normalizer(alg)
    canonical = constants2d(change_basis(alg, P))
    winner = _lowest(THEOREM_TEMPLATES, canonical)
    if winner is None:
        raise Unclassifiable(f"valid algebra {constants2d(alg)} normalizes to {canonical}, matching no type")
    return ClassificationResult(
        family=_family(inv),
        theorem_type=winner.name,
        matched_templates=tuple(match_templates(constants2d(alg))),
        invariants=inv,
        witness=P,
        canonical_constants=canonical,
    )


def classify_lta(alg: Algebra) -> TemplateId:
    """Lowest T-template matching in the given basis, else after normalization."""
    if alg.dim != 2:
        raise WrongDimension("classify_lta needs dim 2")
    if not binary_is_zero(alg.star):
        raise PreconditionStarNonzero("a Lie triple algebra has zero star product")
    if not all_pass(check_lta(alg)):
        raise NotValidLta("Lie triple algebra identities fail")
    return _catalog_match(alg, CATALOGS["T"])


def classify_bol(alg: Algebra) -> TemplateId:
    """The B-template matching the given-basis zero pattern, else after normalization."""
    if alg.dim != 2:
        raise WrongDimension("classify_bol needs dim 2")
    if not binary_is_zero(alg.dot):
        raise PreconditionDotNonzero("a Bol algebra has zero dot product")
    if not all_pass(check_bol(alg)):
        raise NotValidBol("Bol identities fail")
    return _catalog_match(alg, CATALOGS["B"])


def _catalog_match(alg: Algebra, templates) -> TemplateId:
    k8 = constants2d(alg)
    t = _lowest(templates, k8)
    if t is not None:
        return TemplateId.of(t, k8)
    P = normalizer(alg)
    k8n = constants2d(change_basis(alg, P))
    t = _lowest(templates, k8n)
    if t is None:
        raise Unclassifiable(f"{k8} matches no template even after normalization ({k8n})")
    return TemplateId.of(t, k8n, witness=P)


# -- isomorphism ---------------------------------------------------------------


def _signed_permutations() -> list[Matrix]:
    out = []
    for swap in (False, True):
        for s0, s1 in product((1, -1), repeat=2):
            cols = [(s0, 0), (0, s1)]
            if swap:
                cols = [(0, s0), (s1, 0)]
            out.append(from_columns(*cols))
    return out


def _stabilizer_solution(fam: str, A: Constants2D, B: Constants2D):
    """Solve for Q = [[q, r], [0, 1]] carrying normal form A to normal form B.

    Q is the full stabilizer of the anchor vector (1, 0).  Under it the
    other product vector (x, y) goes to (x - r y, q y) and the ternary
    constants go to e' = q(e - r f), f' = q^2 f, k' = k + 2 e r - f r^2.
    Returns a matrix, None (proven non-isomorphic) or Inconclusive.
    """
    if fam == "II_IV":
        return identity_matrix(2) if A.k == B.k else None
    if fam == "VI_VIII":
        if A.k != B.k:
            return None
        if A.d != 0:
            if B.d == 0:
                return None
            q, r = B.d / A.d, (A.c - B.c) / A.d
        else:
            if B.d != 0 or A.c != B.c:
                return None
            q, r = Fraction(1), Fraction(0)
        return from_columns((q, 0), (r, 1))
    # family V: star anchored, ternary free
    detA = -A.e * A.e - A.f * A.k
    detB = -B.e * B.e - B.f * B.k
    if A.f != 0:
        if B.f == 0 or _sign(A.f) != _sign(B.f) or detB * A.f != detA * B.f:
            return None
        q = rational_sqrt(B.f / A.f)
        if q is None:
            return Inconclusive(f"needs q^2 = {B.f / A.f}, not a rational square")
        r = (A.e - B.e / q) / A.f
    elif B.f != 0:
        return None
    elif A.e != 0:
        if B.e == 0:
            return None
        q, r = B.e / A.e, (B.k - A.k) / (2 * A.e)
    else:
        if B.e != 0 or A.k != B.k:
            return None
        q, r = Fraction(1), Fraction(0)
    return from_columns((q, 0), (r, 1))


def _scaled_ternary(alg: Algebra, P: Matrix) -> Matrix:
    return ternary_matrix(change_basis(alg, P))




def _ternary_only_solution(TA: Matrix, TB: Matrix):
    """Find P with det(P) P^-1 TA P = TB for nonzero traceless TA, TB."""
    dA, dB = det(TA), det(TB)
    if dA == 0:
        # nilpotent: P0 = [T p | p] sends T to det(P0) [[0, 1], [0, 0]]
        def canon(T):
            p = (0, 1) if any((T[0][1], T[1][1])) else (1, 0)
            Tp = (T[0][0] * p[0] + T[0][1] * p[1], T[1][0] * p[0] + T[1][1] * p[1])
            P0 = from_columns(Tp, p)
            return P0, det(P0)

        PA, kA = canon(TA)
        PB, kB = canon(TB)
        t = rational_sqrt(kB / kA)
        if t is None:
            return Inconclusive(f"nilpotent scale ratio {kB / kA} is not a rational square")
        Q = from_columns((1, 0), (0, t))
        return matmul(PA, matmul(Q, inverse(PB)))
    delta = rational_sqrt(dB / dA)
    if delta is None:
        return Inconclusive(f"det(T) ratio {dB / dA} is not a rational square")
    KA = _cyclic_basis(TA)
    for d in (delta, -delta):
        # S = TB/d has the characteristic polynomial of TA, so P0 = KA KS^-1
        # conjugates TA into S; every other solution is C P0 with C = alpha I + beta TA
        S = tuple(tuple(x / d for x in row) for row in TB)
        P0 = matmul(KA, inverse(_cyclic_basis(S)))
        # det(C) = alpha^2 - D beta^2 must equal (d / det P0) gamma^2
        D, r = -dA, d / det(P0)
        pt = conic_point(D, r)
        if pt is None:
            continue
        alpha, beta, gamma = pt
        if gamma == 0:
            # alpha^2 = D beta^2: D = s^2, and (alpha - s beta)(alpha + s beta) = r works directly
            s_ = rational_sqrt(D)
            alpha, beta, gamma = (r + 1) / 2, (r - 1) / (2 * s_), Fraction(1)
        C = tuple(
            tuple((alpha if i == j else 0) / gamma + beta / gamma * TA[i][j] for j in range(2))
            for i in range(2)
        )
        return matmul(C, P0)
    return Inconclusive(f"the norm equation for det(P) = ±{delta} has no rational solution; no rational witness exists")


def _cyclic_basis(M: Matrix) -> Matrix:
    """[v | M v] for the first standard vector v that is not an eigenvector."""
    for v in ((1, 0), (0, 1)):
        Mv = (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])
        K = from_columns(v, Mv)
        if det(K) != 0:
            return K
    return from_columns((1, 1), (M[0][0] + M[0][1], M[1][0] + M[1][1]))


def find_isomorphism(A: Algebra, B: Algebra):
    """IsoWitness with change_basis(A, P) == B, None, or Inconclusive."""
    _require_valid(A)
    _require_valid(B)
    invA, invB = _invariants(A), _invariants(B)
    if invA.obstruction_key() != invB.obstruction_key():
        return None
    for P in _signed_permutations():
        if change_basis(A, P) == B:
            return IsoWitness(P, True)
    fam = _family(invA)
    if fam == "I":
        if invA.triple_zero:
            candidate = identity_matrix(2)
        else:
            candidate = _ternary_only_solution(ternary_matrix(A), ternary_matrix(B))
    else:
        PA, PB = normalizer(A), normalizer(B)
        Q = _stabilizer_solution(fam, constants2d(change_basis(A, PA)), constants2d(change_basis(B, PB)))
        candidate = Q if Q is None or isinstance(Q, Inconclusive) else matmul(PA, matmul(Q, inverse(PB)))
    if candidate is None or isinstance(candidate, Inconclusive):
        return candidate
    if change_basis(A, candidate) != B:
        raise RuntimeError(f"isomorphism candidate {candidate} failed verification for {A} -> {B}")
    return IsoWitness(candidate, True)
