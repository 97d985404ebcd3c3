"""Exact calculus of pointed closed convex cones.

Two cone variants are supported:

* ``PolyhedralCone`` -- all nonnegative rational combinations of finitely
  many generators.  The dual description (facets + span equalities) is
  computed once, at construction, by an exact double description run.

* ``QuadraticCone`` -- ``{x : E x = 0, x^T Q x >= 0, l(x) >= 0}`` where Q is
  nondegenerate of Lorentz signature (1, k) on the kernel of the equality
  rows E and l is strictly timelike-positive there.  These conditions are
  verified at construction by exact inertia computation and make the set a
  closed convex cone (one nappe of the light cone inside its support), in
  particular pointed.

Membership verdicts use relative-interior semantics: ``INSIDE`` means the
point lies in the relative interior of the cone within its linear span.
The zero cone reports ``BOUNDARY`` for the origin.

All arithmetic is over ``fractions.Fraction``; no floating point.  The
double description run processes constraints in a canonical sorted order and
emits primitive, lexicographically sorted rays, so identical inputs produce
identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .rational import (
    Mat,
    Vec,
    ZERO,
    coords_in_span,
    dot,
    identity,
    in_span,
    intersect_spans,
    inverse,
    is_zero_vec,
    mat,
    mat_from_cols,
    mat_mul,
    mat_vec,
    nullspace,
    primitive,
    quadratic_value,
    rank,
    rref,
    span_basis,
    symmetric_signature,
    transpose,
    unit,
    vec,
    vec_add,
    vec_neg,
    vec_scale,
    vec_sub,
    zeros,
)

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class DimensionMismatch(ValueError):
    pass


class UnsupportedRestriction(ValueError):
    """Restricted quadratic set would not be a convex cone.

    Cannot occur when the ambient cone is valid; raised defensively.
    """


class InvalidCone(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact LP feasibility (phase-1 simplex, Bland's rule)
# ---------------------------------------------------------------------------

def nonneg_solution(A: Sequence[Vec], b: Vec) -> list[Fraction] | None:
    """Some x >= 0 with A x = b, or None.  Exact phase-1 simplex."""
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    rows = [list(r) for r in A]
    rhs = list(b)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
    # tableau columns: n structural + m artificial; basis starts artificial
    T = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    ncols = n + m
    # phase-1 objective: minimize sum of artificials (priced out over the
    # artificial basis; entering is restricted to structural columns, so an
    # artificial never re-enters once driven out)
    obj = [ZERO] * (ncols + 1)
    for i in range(m):
        for j in list(range(n)) + [ncols]:
            obj[j] -= T[i][j]
    while True:
        enter = next((j for j in range(n) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][ncols] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # phase-1 objective is bounded below by 0; cannot be unbounded
            raise AssertionError("unbounded phase-1 simplex")
        piv = T[leave][enter]
        T[leave] = [a / piv for a in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
        f = obj[enter]
        if f != 0:
            obj = [a - f * c for a, c in zip(obj, T[leave])]
        basis[leave] = enter
    if -obj[ncols] != 0:  # residual infeasibility
        return None
    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[i][ncols]
    return x


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------

def _primitive_scale(a: Vec) -> Vec:
    """Scale-canonical covector: integer entries with gcd 1, sign preserved."""
    from math import gcd, lcm

    if is_zero_vec(a):
        return a
    den = lcm(*(x.denominator for x in a))
    ints = [int(x * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints)


def extreme_rays(ineqs: Sequence[Vec], dim: int) -> tuple[list[Vec], list[Vec]]:
    """V-representation of {x in Q^dim : a.x >= 0 for all a in ineqs}.

    Returns (lineality_basis, rays): the cone is span(lineality) + cone(rays)
    and the rays are extreme modulo the lineality space, primitive and
    lexicographically sorted.
    """
    cons = sorted({_primitive_scale(vec(a)) for a in ineqs if not is_zero_vec(vec(a))})
    if not cons:
        return [unit(dim, i) for i in range(dim)], []
    lin = nullspace(mat(cons), ncols=dim)
    lin = span_basis(lin, dim)
    # complement coordinates: non-pivot columns of the lineality row space
    if lin:
        _, lpiv = rref(mat(lin))
        free_cols = [c for c in range(dim) if c not in lpiv]
    else:
        free_cols = list(range(dim))
    d = len(free_cols)
    if d == 0:
        return lin, []
    proj = [tuple(a[c] for c in free_cols) for a in cons]

    # initial simplicial cone from d independent constraints
    _, prows = rref(transpose(mat(proj)))
    init = list(prows[:d])
    if len(init) < d:
        raise AssertionError("constraint system lost rank in complement coordinates")
    Minit = mat([proj[i] for i in init])
    rays = [col for col in transpose(inverse(Minit))]
    tight = [frozenset(init) - {init[i]} for i in range(len(rays))]
    processed = set(init)

    def adjacent(i: int, j: int) -> bool:
        common = tight[i] & tight[j]
        if len(common) < d - 2:
            return False
        if d == 2:
            return True
        return rank(mat([proj[s] for s in sorted(common)])) == d - 2

    for t in range(len(cons)):
        if t in processed:
            continue
        a = proj[t]
        vals = [dot(a, r) for r in rays]
        keep = [i for i, v in enumerate(vals) if v >= 0]
        negs = [i for i, v in enumerate(vals) if v < 0]
        new_rays: list[Vec] = []
        new_tight: list[frozenset] = []
        for i in keep:
            new_rays.append(rays[i])
            new_tight.append(tight[i] | {t} if vals[i] == 0 else tight[i])
        for i in keep:
            if vals[i] <= 0:
                continue
            for j in negs:
                if not adjacent(i, j):
                    continue
                w = vec_sub(vec_scale(vals[i], rays[j]), vec_scale(vals[j], rays[i]))
                w = primitive(w)
                if is_zero_vec(w):
                    continue
                new_rays.append(w)
                new_tight.append((tight[i] & tight[j]) | {t})
        rays, tight = new_rays, new_tight
        processed.add(t)

    out = []
    for r in rays:
        amb = [ZERO] * dim
        for c, val in zip(free_cols, r):
            amb[c] = val
        out.append(primitive(tuple(amb)))
    return lin, sorted(set(out))


# ---------------------------------------------------------------------------
# cone types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyhedralCone:
    """Nonnegative rational combinations of finitely many generators.

    The zero cone is represented by an empty generator tuple.
    """

    generators: tuple[Vec, ...]
    ambient_dim: int
    span: tuple[Vec, ...] = field(init=False, repr=False)
    facets: tuple[Vec, ...] = field(init=False, repr=False)
    span_equalities: tuple[Vec, ...] = field(init=False, repr=False)

    def __post_init__(self):
        gens = tuple(vec(g) for g in self.generators)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise DimensionMismatch("generator length != ambient_dim")
            if is_zero_vec(g):
                raise InvalidCone("zero generator")
        object.__setattr__(self, "generators", gens)
        sp = tuple(span_basis(gens, self.ambient_dim))
        object.__setattr__(self, "span", sp)
        if sp:
            eqs = tuple(span_basis(nullspace(mat(sp)), self.ambient_dim))
        else:
            eqs = tuple(identity(self.ambient_dim))
        object.__setattr__(self, "span_equalities", eqs)
        # facets: extreme rays of the dual cone, computed in span coordinates
        if gens:
            _, spiv = rref(mat(sp))
            coords = [tuple(g[c] for c in spiv) for g in gens]
            lin_d, rays_d = extreme_rays(coords, len(sp))
            if lin_d:
                raise AssertionError("dual cone of a spanning generator set has lineality")
            facets = []
            for f in rays_d:
                amb = [ZERO] * self.ambient_dim
                for c, val in zip(spiv, f):
                    amb[c] = val
                facets.append(tuple(amb))
            object.__setattr__(self, "facets", tuple(sorted(facets)))
        else:
            object.__setattr__(self, "facets", ())

    @property
    def is_zero(self) -> bool:
        return not self.generators


@dataclass(frozen=True)
class QuadraticCone:
    """One nappe of a rational Lorentz cone inside its support subspace."""

    form: Mat
    functional: Vec
    ambient_dim: int
    equalities: tuple[Vec, ...] = ()
    support: tuple[Vec, ...] = field(init=False, repr=False)
    witness: Vec = field(init=False, repr=False)

    def __post_init__(self):
        Q = mat(self.form)
        l = vec(self.functional)
        eqs = tuple(vec(e) for e in self.equalities)
        n = self.ambient_dim
        if len(Q) != n or (Q and len(Q[0]) != n) or len(l) != n:
            raise DimensionMismatch("form/functional size != ambient_dim")
        if Q != transpose(Q):
            raise InvalidCone("quadratic form is not symmetric")
        object.__setattr__(self, "form", Q)
        object.__setattr__(self, "functional", l)
        object.__setattr__(self, "equalities", eqs)
        supp = nullspace(mat(eqs), ncols=n) if eqs else [unit(n, i) for i in range(n)]
        supp = span_basis(supp, n)
        if not supp:
            raise InvalidCone("support of quadratic cone is trivial")
        K = mat_from_cols(supp)
        QK = mat_mul(transpose(K), mat_mul(Q, K))
        p, m, z = symmetric_signature(QK)
        if (p, z) != (1, 0):
            raise InvalidCone(
                "form must be nondegenerate Lorentz (1,k) on the support; "
                f"got inertia ({p},{m},{z})"
            )
        lK = tuple(dot(l, s) for s in supp)
        from .rational import solve

        c = solve(QK, lK)
        if c is None or dot(lK, c) <= 0:
            raise InvalidCone("functional is not strictly timelike-positive on the support")
        w = zeros(n)
        for ci, s in zip(c, supp):
            w = vec_add(w, vec_scale(ci, s))
        object.__setattr__(self, "support", tuple(supp))
        object.__setattr__(self, "witness", w)

    @property
    def is_zero(self) -> bool:
        return False


ConvexCone = PolyhedralCone | QuadraticCone


def polyhedral(generators, ambient_dim: int) -> PolyhedralCone:
    return PolyhedralCone(tuple(vec(g) for g in generators), ambient_dim)


def quadratic(form, functional, ambient_dim: int, equalities=()) -> QuadraticCone:
    return QuadraticCone(mat(form), vec(functional), ambient_dim,
                         tuple(vec(e) for e in equalities))


def zero_cone(ambient_dim: int) -> PolyhedralCone:
    return PolyhedralCone((), ambient_dim)


# ---------------------------------------------------------------------------
# basic predicates
# ---------------------------------------------------------------------------

def membership(cone: ConvexCone, x: Vec) -> str:
    """Exact three-way verdict INSIDE / BOUNDARY / OUTSIDE."""
    x = vec(x)
    if len(x) != cone.ambient_dim:
        raise DimensionMismatch("vector length != ambient_dim")
    if isinstance(cone, PolyhedralCone):
        if cone.is_zero:
            return BOUNDARY if is_zero_vec(x) else OUTSIDE
        if any(dot(e, x) != 0 for e in cone.span_equalities):
            return OUTSIDE
        values = [dot(f, x) for f in cone.facets]
        if any(v < 0 for v in values):
            return OUTSIDE
        return BOUNDARY if any(v == 0 for v in values) else INSIDE
    if any(dot(e, x) != 0 for e in cone.equalities):
        return OUTSIDE
    q = quadratic_value(cone.form, x)
    lv = dot(cone.functional, x)
    if q < 0 or lv < 0:
        return OUTSIDE
    if q > 0:
        return INSIDE if lv > 0 else OUTSIDE
    return BOUNDARY if lv >= 0 else OUTSIDE


def contains(cone: ConvexCone, x: Vec) -> bool:
    return membership(cone, x) != OUTSIDE


def lp_membership(cone: PolyhedralCone, x: Vec) -> bool:
    """Independent membership route: LP feasibility over the generators."""
    x = vec(x)
    if len(x) != cone.ambient_dim:
        raise DimensionMismatch("vector length != ambient_dim")
    if cone.is_zero:
        return is_zero_vec(x)
    A = [tuple(g[i] for g in cone.generators) for i in range(cone.ambient_dim)]
    return nonneg_solution(A, x) is not None


def linear_span(cone: ConvexCone) -> list[Vec]:
    """Exact basis of cone - cone."""
    if isinstance(cone, PolyhedralCone):
        return list(cone.span)
    return list(cone.support)


def negate(cone: ConvexCone) -> ConvexCone:
    """The cone -C."""
    if isinstance(cone, PolyhedralCone):
        return PolyhedralCone(tuple(vec_neg(g) for g in cone.generators), cone.ambient_dim)
    return QuadraticCone(cone.form, vec_neg(cone.functional), cone.ambient_dim, cone.equalities)


def is_pointed(cone: ConvexCone) -> bool:
    """True iff cone ∩ -cone = {0}, decided exactly."""
    if isinstance(cone, QuadraticCone):
        # the functional strictly separates the nappes (checked at construction)
        return True
    if cone.is_zero:
        return True
    # pointed iff 0 is not a nontrivial nonnegative combination of generators
    n, g = cone.ambient_dim, cone.generators
    A = [tuple(gi[i] for gi in g) for i in range(n)] + [tuple(Fraction(1) for _ in g)]
    b = zeros(n) + (Fraction(1),)
    return nonneg_solution(A, b) is None


def lineality_basis(cone: ConvexCone) -> list[Vec]:
    """Basis of the maximal linear subspace cone ∩ -cone."""
    if isinstance(cone, QuadraticCone):
        return []
    if cone.is_zero:
        return []
    if not cone.facets:
        return list(cone.span)
    ker = nullspace(mat(cone.facets), ncols=cone.ambient_dim)
    return intersect_spans(list(cone.span), ker)


# ---------------------------------------------------------------------------
# intersection with a subspace
# ---------------------------------------------------------------------------

def intersect_subspace(cone: ConvexCone, basis: Sequence[Vec]) -> ConvexCone:
    """The cone {y : B y ∈ cone} in the coordinates of the given basis."""
    basis = [vec(b) for b in basis]
    k = len(basis)
    if k == 0:
        return zero_cone(0)
    if any(len(b) != cone.ambient_dim for b in basis):
        raise DimensionMismatch("subspace basis length != ambient_dim")
    if rank(mat(basis)) != k:
        raise ValueError("subspace basis is not linearly independent")
    if isinstance(cone, PolyhedralCone):
        return _intersect_polyhedral(cone, basis)
    return _restrict_quadratic(cone, basis)


def _intersect_polyhedral(cone: PolyhedralCone, basis: list[Vec]) -> PolyhedralCone:
    k = len(basis)
    if cone.is_zero:
        return zero_cone(k)
    ineqs = [tuple(dot(f, b) for b in basis) for f in cone.facets]
    for e in cone.span_equalities:
        row = tuple(dot(e, b) for b in basis)
        ineqs.append(row)
        ineqs.append(vec_neg(row))
    lin, rays = extreme_rays(ineqs, k)
    gens = list(rays)
    for l in lin:
        gens.append(primitive(l))
        gens.append(primitive(vec_neg(l)))
    return PolyhedralCone(tuple(sorted(set(gens))), k)


def _restrict_quadratic(cone: QuadraticCone, basis: list[Vec]) -> ConvexCone:
    k = len(basis)
    B = mat_from_cols(basis)
    QB = mat_mul(transpose(B), mat_mul(cone.form, B))
    lB = tuple(dot(cone.functional, b) for b in basis)
    eqB = [tuple(dot(e, b) for b in basis) for e in cone.equalities]
    eqB = [r for r in eqB if not is_zero_vec(r)]
    supp = nullspace(mat(eqB), ncols=k) if eqB else [unit(k, i) for i in range(k)]
    supp = span_basis(supp, k)
    if not supp:
        return zero_cone(k)
    K = mat_from_cols(supp)
    QK = mat_mul(transpose(K), mat_mul(QB, K))
    p, m, z = symmetric_signature(QK)
    if p >= 2 or (p == 1 and z >= 1):
        raise UnsupportedRestriction(f"inertia ({p},{m},{z}) cannot arise from a Lorentz cone")
    if p == 1 and m >= 1:
        # genuine lower-dimensional Lorentz cone; constructor re-checks l
        try:
            return QuadraticCone(QB, lB, k, tuple(eqB))
        except InvalidCone as exc:  # pragma: no cover - cannot occur for valid input
            raise UnsupportedRestriction(str(exc)) from exc
    if p == 1:
        # positive definite on a 1-dim support: a single timelike half-line
        if len(supp) != 1:
            raise UnsupportedRestriction("positive definite restriction of dimension > 1")
        r = supp[0]
        lv = dot(lB, r)
        if lv == 0:
            raise UnsupportedRestriction("timelike direction with vanishing functional")
        return PolyhedralCone((primitive(r if lv > 0 else vec_neg(r)),), k)
    # p == 0: only the radical of Q|supp survives {Q >= 0}
    radK = nullspace(QK, ncols=len(supp))
    radical = []
    for rK in span_basis(radK, len(supp)):
        amb = zeros(k)
        for c, s in zip(rK, supp):
            amb = vec_add(amb, vec_scale(c, s))
        radical.append(amb)
    radical = span_basis(radical, k)
    if not radical:
        return zero_cone(k)
    # {y in radical : l(y) >= 0}: a ray, the whole subspace, or a half-space
    lvals = [dot(lB, r) for r in radical]
    if all(v == 0 for v in lvals):
        gens = []
        for r in radical:
            gens.append(primitive(r))
            gens.append(primitive(vec_neg(r)))
        return PolyhedralCone(tuple(sorted(set(gens))), k)
    i0 = next(i for i, v in enumerate(lvals) if v != 0)
    rpos = radical[i0] if lvals[i0] > 0 else vec_neg(radical[i0])
    gens = [primitive(rpos)]
    for i, r in enumerate(radical):
        if i == i0:
            continue
        # r - (l(r)/l(rpos)) rpos lies in radical ∩ ker l
        proj = vec_sub(r, vec_scale(dot(lB, r) / dot(lB, rpos), rpos))
        if not is_zero_vec(proj):
            gens.append(primitive(proj))
            gens.append(primitive(vec_neg(proj)))
    return PolyhedralCone(tuple(sorted(set(gens))), k)


def embed_generators(cone: ConvexCone, basis: Sequence[Vec]) -> list[Vec]:
    """Map a polyhedral cone's generators from subspace to ambient coordinates."""
    if not isinstance(cone, PolyhedralCone):
        raise TypeError("only polyhedral cones have a finite generator list")
    out = []
    for g in cone.generators:
        amb = zeros(len(basis[0]))
        for c, b in zip(g, basis):
            amb = vec_add(amb, vec_scale(c, vec(b)))
        out.append(primitive(amb))
    return out


# ---------------------------------------------------------------------------
# invariance certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    mode: Literal["flow", "reflect"]
    status: Literal["exact", "numeric", "failed"]
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "failed"


def _tangent_cone_member(cone: PolyhedralCone, g: Vec, v: Vec) -> bool:
    """Exact test v ∈ cone + R·g via LP feasibility."""
    n = cone.ambient_dim
    cols = list(cone.generators) + [g, vec_neg(g)]
    A = [tuple(c[i] for c in cols) for i in range(n)]
    return nonneg_solution(A, v) is not None


def _flow_exact_polyhedral(cone: PolyhedralCone, A: Mat) -> bool:
    for g in cone.generators:
        img = mat_vec(A, g)
        if not _tangent_cone_member(cone, g, img):
            return False
        if not _tangent_cone_member(cone, g, vec_neg(img)):
            return False
    return True


def _proportional_on_support(M: Mat, Q: Mat, supp: Sequence[Vec]) -> Fraction | None:
    """mu with M = mu*Q as bilinear forms on span(supp), or None."""
    K = mat_from_cols(supp)
    MK = mat_mul(transpose(K), mat_mul(M, K))
    QK = mat_mul(transpose(K), mat_mul(Q, K))
    mu = None
    for i in range(len(MK)):
        for j in range(len(MK)):
            if QK[i][j] != 0:
                cand = MK[i][j] / QK[i][j]
                if mu is None:
                    mu = cand
                elif cand != mu:
                    return None
            elif MK[i][j] != 0:
                return None
    if mu is None:
        return None
    for i in range(len(MK)):
        for j in range(len(MK)):
            if MK[i][j] != mu * QK[i][j]:
                return None
    return mu


def _preserves_support(S: Mat, cone: QuadraticCone) -> bool:
    return all(in_span(mat_vec(S, s), list(cone.support)) for s in cone.support)


def certify_invariance(cone: ConvexCone, op: Mat, mode: Literal["flow", "reflect"],
                       numeric_fallback=None) -> Certificate:
    """Certify e^{tA}(cone) = cone for all t (flow) or (-A)(cone) = cone (reflect).

    ``op`` is the matrix A.  Exact criteria:

    * polyhedral flow: A g and -A g lie in the tangent cone cone + R·g for
      every generator g (LP feasibility; necessary and sufficient).
    * polyhedral reflect: -A is invertible and maps the generator set into
      the cone in both directions.
    * quadratic flow: A preserves the support and A^T Q + Q A = mu·Q there
      (conformal Killing); the nappe cannot flip along a connected flow.
    * quadratic reflect: S = -A preserves the support, S^T Q S = mu·Q with
      mu > 0, and S maps the interior witness into the cone (nappe check).

    If the exact flow criterion fails and ``numeric_fallback`` is given, it is
    called as ``numeric_fallback(cone, op)`` and should return True for a
    sampled certificate; the result is then flagged "numeric".
    """
    op = mat(op)
    if len(op) != cone.ambient_dim:
        raise DimensionMismatch("operator size != ambient_dim")
    if mode == "reflect":
        S = tuple(vec_neg(row) for row in op)
        if isinstance(cone, PolyhedralCone):
            try:
                Sinv = inverse(S)
            except ValueError:
                return Certificate(mode, "failed", "reflection is singular")
            for g in cone.generators:
                if membership(cone, mat_vec(S, g)) == OUTSIDE:
                    return Certificate(mode, "failed", "image of a generator leaves the cone")
                if membership(cone, mat_vec(Sinv, g)) == OUTSIDE:
                    return Certificate(mode, "failed", "preimage of a generator leaves the cone")
            return Certificate(mode, "exact")
        if not _preserves_support(S, cone):
            return Certificate(mode, "failed", "reflection does not preserve the support")
        STQS = mat_mul(transpose(S), mat_mul(cone.form, S))
        mu = _proportional_on_support(STQS, cone.form, cone.support)
        if mu is None or mu <= 0:
            return Certificate(mode, "failed", "form is not conformally preserved")
        if membership(cone, mat_vec(S, cone.witness)) == OUTSIDE:
            return Certificate(mode, "failed", "reflection swaps the nappes")
        return Certificate(mode, "exact")

    if mode != "flow":
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(cone, PolyhedralCone):
        if cone.is_zero or _flow_exact_polyhedral(cone, op):
            return Certificate(mode, "exact")
    else:
        ok = _preserves_support(op, cone)
        if ok:
            ATQ_QA = mat_mul(transpose(op), cone.form)
            ATQ_QA = tuple(vec_add(r, s) for r, s in zip(ATQ_QA, mat_mul(cone.form, op)))
            ok = _proportional_on_support(ATQ_QA, cone.form, cone.support) is not None
        if ok:
            return Certificate(mode, "exact")
    if numeric_fallback is not None and numeric_fallback(cone, op):
        return Certificate(mode, "numeric", "sampled flow membership only")
    return Certificate(mode, "failed", "exact flow criterion failed")
