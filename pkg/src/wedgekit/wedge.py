"""The wedge of generators of the standard-subspace endomorphism semigroup.

Given a modular datum (g, τ, h, C) the wedge is assembled exactly as

    C₋ ⊕ h₀(h) ⊕ C₊,   C₊ = C ∩ q₁(h),   C₋ = (-C) ∩ q₋₁(h),

where q = ker(τ + 1), h = ker(τ - 1) and the subscripts are ad h
eigenspaces.  The same decomposition is available in the abelian setting
(``tube_inv``) for an arbitrary commuting pair (τ, h_op) on a plain vector
space; both routes produce literally identical cone data when fed the same
underlying operators, which the test-suite asserts.

The engine works at the Lie-algebra level only.  In finite dimensions the
endomorphism semigroup of a standard subspace is a group, so no faithful
finite-dimensional operator model of a nontrivial semigroup exists; the
wedge is the honest computable invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import cones
from .algebra import (
    LieAlgebra,
    LinearEndo,
    ad,
    check_automorphism,
    check_involution,
    eigenspaces,
    tau_split,
)
from .cones import Certificate, ConvexCone, PolyhedralCone, QuadraticCone, membership
from .rational import (
    Mat,
    Vec,
    coords_in_span,
    in_span,
    intersect_spans,
    is_zero_vec,
    mat,
    mat_from_cols,
    mat_mul,
    mat_vec,
    primitive,
    restrict_operator,
    span_basis,
    transpose,
    vec,
    vec_add,
    vec_neg,
    vec_scale,
    zeros,
)

NUMERIC_TOL = 1e-9  # absolute tolerance of all numeric fallback certificates


class InvalidDatum(ValueError):
    """A modular-datum invariant failed with an exact counterexample."""


@dataclass(frozen=True)
class ModularDatum:
    """(Lie algebra, involution τ, modular element h, positive cone C)."""

    algebra: LieAlgebra
    tau: LinearEndo
    h_elem: Vec
    cone: ConvexCone
    name: str = ""
    approximate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "h_elem", vec(self.h_elem))
        if len(self.h_elem) != self.algebra.dim:
            raise ValueError("h has the wrong length")
        if self.cone.ambient_dim != self.algebra.dim:
            raise ValueError("cone ambient dimension != algebra dimension")


@dataclass(frozen=True)
class DatumCertification:
    tau_involution: bool
    tau_automorphism: bool
    tau_fixes_h: bool
    reflect: Certificate
    flow: Certificate
    pointed: bool

    @property
    def ok(self) -> bool:
        return (self.tau_involution and self.tau_automorphism and self.tau_fixes_h
                and self.reflect.ok and self.flow.ok and self.pointed)

    @property
    def fully_exact(self) -> bool:
        return self.ok and self.reflect.status == "exact" and self.flow.status == "exact"

    def failures(self) -> list[str]:
        out = []
        if not self.tau_involution:
            out.append("tau is not an involution")
        if not self.tau_automorphism:
            out.append("tau is not a bracket automorphism")
        if not self.tau_fixes_h:
            out.append("tau does not fix h")
        if not self.reflect.ok:
            out.append(f"reflect certificate failed: {self.reflect.detail}")
        if not self.flow.ok:
            out.append(f"flow certificate failed: {self.flow.detail}")
        if not self.pointed:
            out.append("cone is not pointed")
        return out


def _numeric_flow_fallback(cone: ConvexCone, op: Mat) -> bool:
    from .numeric import sampled_flow_invariance

    return sampled_flow_invariance(cone, op, tol=NUMERIC_TOL)


def certify_datum(datum: ModularDatum) -> DatumCertification:
    """Certify every ModularDatum invariant; never raises on failures."""
    tau_inv = tau_aut = True
    try:
        check_involution(datum.tau)
    except Exception:
        tau_inv = False
    try:
        check_automorphism(datum.algebra, datum.tau)
    except Exception:
        tau_aut = False
    fixes_h = datum.tau(datum.h_elem) == datum.h_elem
    reflect = cones.certify_invariance(datum.cone, datum.tau.matrix, "reflect")
    flow = cones.certify_invariance(
        datum.cone, ad(datum.algebra, datum.h_elem).matrix, "flow",
        numeric_fallback=_numeric_flow_fallback)
    pointed = cones.is_pointed(datum.cone)
    return DatumCertification(tau_inv, tau_aut, fixes_h, reflect, flow, pointed)


# ---------------------------------------------------------------------------
# tube cone: the direct-sum decomposition itself
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TubeCone:
    """C₊ ⊕ edge ⊕ C₋ with each charged part kept in its own coordinates."""

    ambient_dim: int
    plus_basis: tuple[Vec, ...]
    c_plus: ConvexCone
    edge_basis: tuple[Vec, ...]
    minus_basis: tuple[Vec, ...]
    c_minus: ConvexCone

    def part_generators(self, side: str) -> list[Vec]:
        """Ambient generators of C₊ / C₋ (polyhedral parts only)."""
        basis, cone = ((self.plus_basis, self.c_plus) if side == "plus"
                       else (self.minus_basis, self.c_minus))
        if not isinstance(cone, PolyhedralCone):
            raise TypeError(f"C_{side} is quadratic; no finite generator list")
        if not basis:
            return []
        return cones.embed_generators(cone, list(basis))

    @property
    def assembled(self) -> PolyhedralCone | None:
        """The whole wedge as one ambient polyhedral cone, when possible."""
        if not (isinstance(self.c_plus, PolyhedralCone)
                and isinstance(self.c_minus, PolyhedralCone)):
            return None
        gens = self.part_generators("plus") + self.part_generators("minus")
        for e in self.edge_basis:
            gens.append(primitive(e))
            gens.append(primitive(vec_neg(e)))
        return PolyhedralCone(tuple(sorted(set(gens))), self.ambient_dim)

    def support_basis(self) -> list[Vec]:
        sup = []
        for b, c in ((self.plus_basis, self.c_plus), (self.minus_basis, self.c_minus)):
            for s in cones.linear_span(c):
                amb = zeros(self.ambient_dim)
                for ci, bv in zip(s, b):
                    amb = vec_add(amb, vec_scale(ci, bv))
                sup.append(amb)
        sup.extend(self.edge_basis)
        return span_basis(sup, self.ambient_dim)

    def member(self, x: Vec) -> bool:
        """Exact membership in the direct-sum cone."""
        x = vec(x)
        pieces = [(self.plus_basis, self.c_plus), (self.minus_basis, self.c_minus)]
        stacked: list[Vec] = []
        owners: list[tuple[int, int]] = []  # (piece index, basis index)
        for pi, (b, _) in enumerate(pieces):
            for bi, v in enumerate(b):
                stacked.append(v)
                owners.append((pi, bi))
        for e in self.edge_basis:
            stacked.append(e)
            owners.append((2, -1))
        if not stacked:
            return is_zero_vec(x)
        coeffs = coords_in_span(x, stacked)
        if coeffs is None:
            return False
        for pi, (b, cone) in enumerate(pieces):
            comp = [Fraction(0)] * len(b)
            for c, (own, bi) in zip(coeffs, owners):
                if own == pi:
                    comp[bi] = c
            if b and membership(cone, tuple(comp)) == cones.OUTSIDE:
                return False
            if not b and isinstance(cone, PolyhedralCone) and not cone.is_zero:
                raise AssertionError("charged part with empty basis")
        return True


def _direct_sum_supports_ok(parts: Sequence[Sequence[Vec]], dim: int) -> bool:
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if parts[i] and parts[j] and intersect_spans(list(parts[i]), list(parts[j])):
                return False
    return True


def _charged_part(cone: ConvexCone, basis: list[Vec]) -> ConvexCone:
    if not basis:
        return cones.zero_cone(0)
    return cones.intersect_subspace(cone, basis)


def _tube_parts(cone: ConvexCone, h_op: Mat, tau_mat: Mat, dim: int,
                ) -> tuple[list[Vec], ConvexCone, list[Vec], list[Vec], ConvexCone]:
    dec = eigenspaces(h_op, require_complete=False)
    e_plus = eigenspaces(tau_mat, spectrum_hint=(1,)).space(1)
    e_minus = eigenspaces(tau_mat, spectrum_hint=(-1,)).space(-1)
    q1 = intersect_spans(e_minus, dec.space(1)) if e_minus else []
    qm1 = intersect_spans(e_minus, dec.space(-1)) if e_minus else []
    edge = intersect_spans(e_plus, dec.space(0)) if e_plus else []
    c_plus = _charged_part(cone, q1)
    c_minus = _charged_part(cones.negate(cone), qm1)
    return q1, c_plus, edge, qm1, c_minus


def tube_inv(space_dim: int, tau: LinearEndo, h_op: Mat, cone: ConvexCone,
             certify: bool = True) -> TubeCone:
    """The invariant-tube cone for a commuting pair (τ, h_op) on ℝ^dim.

    (W ∩ E⁻₁(h)) ⊕ E⁺₀(h) ⊕ (-W ∩ E⁻₋₁(h)); W = {0} degenerates to E⁺₀(h).
    """
    h_op = mat(h_op)
    check_involution(tau)
    if mat_mul(tau.matrix, h_op) != mat_mul(h_op, tau.matrix):
        raise ValueError("h does not commute with tau")
    if certify:
        problems = []
        if not cones.is_pointed(cone):
            problems.append("cone is not pointed")
        if not cones.certify_invariance(cone, tau.matrix, "reflect").ok:
            problems.append("cone is not -tau invariant")
        if not cones.certify_invariance(cone, h_op, "flow",
                                        numeric_fallback=_numeric_flow_fallback).ok:
            problems.append("cone is not flow invariant under h")
        if problems:
            raise InvalidDatum("; ".join(problems))
    q1, c_plus, edge, qm1, c_minus = _tube_parts(cone, h_op, tau.matrix, space_dim)
    return TubeCone(space_dim, tuple(q1), c_plus, tuple(edge), tuple(qm1), c_minus)


# ---------------------------------------------------------------------------
# wedge report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WedgeReport:
    datum_name: str
    tube: TubeCone
    g_red_basis: tuple[Vec, ...]
    checks: dict
    flags: tuple[str, ...]
    certification: DatumCertification

    @property
    def c_plus(self) -> ConvexCone:
        return self.tube.c_plus

    @property
    def c_minus(self) -> ConvexCone:
        return self.tube.c_minus

    @property
    def edge_basis(self) -> tuple[Vec, ...]:
        return self.tube.edge_basis

    def wedge_generators(self) -> dict:
        """Ambient description of the wedge (generators and edge lines)."""
        out = {"edge": [list(e) for e in self.edge_basis]}
        for side in ("plus", "minus"):
            cone = self.tube.c_plus if side == "plus" else self.tube.c_minus
            if isinstance(cone, PolyhedralCone):
                out[side] = [list(g) for g in self.tube.part_generators(side)]
            else:
                out[side] = "quadratic"
        return out


def structure_wedge(datum: ModularDatum) -> WedgeReport:
    """Compute the wedge C₋ ⊕ h₀(h) ⊕ C₊ with full verification verdicts."""
    cert = certify_datum(datum)
    if not cert.tau_involution:
        check_involution(datum.tau)  # re-raise with detail
    if not cert.tau_automorphism:
        check_automorphism(datum.algebra, datum.tau)
    if not cert.ok and not datum.approximate:
        raise InvalidDatum("; ".join(cert.failures()))

    g = datum.algebra
    adh = ad(g, datum.h_elem).matrix
    # requires a semisimple rational action of ad h
    eigenspaces(adh, require_complete=True)
    ts = tau_split(g, datum.tau)

    q1, c_plus, edge, qm1, c_minus = _tube_parts(datum.cone, adh, datum.tau.matrix, g.dim)
    tube = TubeCone(g.dim, tuple(q1), c_plus, tuple(edge), tuple(qm1), c_minus)

    if not cones.is_pointed(c_plus) or not cones.is_pointed(c_minus):
        raise InvalidDatum("charged part of the wedge is not pointed")

    span_plus = _ambient_span(tube, "plus")
    span_minus = _ambient_span(tube, "minus")
    if not _direct_sum_supports_ok([span_plus, list(edge), span_minus], g.dim):
        raise AssertionError("wedge supports do not form a direct sum")

    g_red = span_basis(span_plus + list(edge) + span_minus, g.dim)

    flags = []
    if datum.approximate:
        flags.append("approximate")
    if not cert.ok:
        flags.append("uncertified")
    elif not cert.fully_exact:
        flags.append("invariance-numeric")
    charged_trivial = (isinstance(c_plus, PolyhedralCone) and c_plus.is_zero
                       and isinstance(c_minus, PolyhedralCone) and c_minus.is_zero)
    if charged_trivial:
        flags.append("degenerate")

    report = WedgeReport(datum.name, tube, tuple(g_red), {}, tuple(flags), cert)
    closure = verify_g_red(report, g)
    liewedge = verify_lie_wedge(report, g)
    edge_ok = _edge_identity_holds(report, g, ts)
    checks = {
        "g_red_closure": closure.as_dict(),
        "lie_wedge": liewedge.as_dict(),
        "edge_identity": edge_ok,
        "charged_parts_pointed": True,
        "certification": {
            "reflect": cert.reflect.status,
            "flow": cert.flow.status,
            "pointed": cert.pointed,
            "tau_fixes_h": cert.tau_fixes_h,
        },
    }
    return WedgeReport(datum.name, tube, tuple(g_red), checks, tuple(flags), cert)


def _ambient_span(tube: TubeCone, side: str) -> list[Vec]:
    basis, cone = ((tube.plus_basis, tube.c_plus) if side == "plus"
                   else (tube.minus_basis, tube.c_minus))
    out = []
    for s in cones.linear_span(cone):
        amb = zeros(tube.ambient_dim)
        for c, b in zip(s, basis):
            amb = vec_add(amb, vec_scale(c, b))
        out.append(amb)
    return span_basis(out, tube.ambient_dim)


def _edge_identity_holds(report: WedgeReport, g: LieAlgebra, ts) -> bool:
    """wedge ∩ -wedge = h₀(h), exactly."""
    tube = report.tube
    lin = list(tube.edge_basis)
    for side in ("plus", "minus"):
        cone = tube.c_plus if side == "plus" else tube.c_minus
        basis = tube.plus_basis if side == "plus" else tube.minus_basis
        for l in cones.lineality_basis(cone):
            amb = zeros(tube.ambient_dim)
            for c, b in zip(l, basis):
                amb = vec_add(amb, vec_scale(c, b))
            lin.append(amb)
    lin = span_basis(lin, tube.ambient_dim)
    edge = span_basis(list(tube.edge_basis), tube.ambient_dim)
    return lin == edge


# ---------------------------------------------------------------------------
# verification verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureVerdict:
    relations: tuple[tuple[str, bool], ...]

    @property
    def all_hold(self) -> bool:
        return all(ok for _, ok in self.relations)

    def as_dict(self) -> dict:
        return dict(self.relations)


def verify_g_red(report: WedgeReport, algebra: LieAlgebra) -> ClosureVerdict:
    """Exact 3-graded closure relations of q₋ ⊕ h₀(h) ⊕ q₊."""
    qp = _ambient_span(report.tube, "plus")
    qm = _ambient_span(report.tube, "minus")
    h0 = list(report.tube.edge_basis)
    dim = algebra.dim

    def bracket_in(a_basis, b_basis, target) -> bool:
        for a in a_basis:
            for b in b_basis:
                w = algebra.bracket(a, b)
                if is_zero_vec(w):
                    continue
                if not target:
                    return False
                if not in_span(w, target):
                    return False
        return True

    rels = (
        ("q_plus_abelian", bracket_in(qp, qp, [])),
        ("q_minus_abelian", bracket_in(qm, qm, [])),
        ("mixed_into_edge", bracket_in(qm, qp, h0)),
        ("double_bracket_grading",
         bracket_in([algebra.bracket(a, b) for a in qp for b in qm], qp, qp)
         and bracket_in([algebra.bracket(a, b) for a in qp for b in qm], qm, qm)),
        ("edge_grading", bracket_in(h0, qp, qp) and bracket_in(h0, qm, qm)),
    )
    return ClosureVerdict(rels)


@dataclass(frozen=True)
class LieWedgeVerdict:
    per_edge: tuple[tuple[str, str], ...]  # (edge vector label, status)

    @property
    def status(self) -> str:
        st = [s for _, s in self.per_edge]
        if any(s == "failed" for s in st):
            return "failed"
        if any(s == "numeric" for s in st):
            return "numeric"
        return "exact"

    @property
    def ok(self) -> bool:
        return self.status != "failed"

    def as_dict(self) -> dict:
        return {"status": self.status, "per_edge": dict(self.per_edge)}


def verify_lie_wedge(report: WedgeReport, algebra: LieAlgebra) -> LieWedgeVerdict:
    """Certify e^{R·ad x}(wedge) = wedge for every edge basis vector x.

    The flow of an edge element preserves the three graded supports, so the
    wedge is invariant iff each charged part is; charged-part invariance is
    certified by the exact tangent-cone criterion with the numeric sampled
    fallback.
    """
    tube = report.tube
    out = []
    for idx, x in enumerate(tube.edge_basis):
        A = ad(algebra, x).matrix
        status = "exact"
        for basis, cone in ((tube.plus_basis, tube.c_plus),
                            (tube.minus_basis, tube.c_minus)):
            if not basis:
                continue
            try:
                Ar = restrict_operator(A, list(basis))
            except ValueError:
                status = "failed"
                break
            cert = cones.certify_invariance(cone, Ar, "flow",
                                            numeric_fallback=_numeric_flow_fallback)
            if cert.status == "failed":
                status = "failed"
                break
            if cert.status == "numeric":
                status = "numeric"
        if status != "failed":
            if tube.edge_basis and not all(
                    in_span(mat_vec(A, e), list(tube.edge_basis))
                    for e in tube.edge_basis):
                status = "failed"
        out.append((f"edge[{idx}]", status))
    return LieWedgeVerdict(tuple(out))


def unit_algebra(datum: ModularDatum) -> list[Vec]:
    """h₀(h) = ker(τ-1) ∩ ker(ad h); asserted equal to wedge ∩ -wedge."""
    report = structure_wedge(datum)
    adh = ad(datum.algebra, datum.h_elem).matrix
    ts = tau_split(datum.algebra, datum.tau)
    g0 = eigenspaces(adh, spectrum_hint=(0,)).space(0)
    h0 = intersect_spans(list(ts.h_part), g0) if ts.h_part else []
    if span_basis(h0, datum.algebra.dim) != span_basis(list(report.edge_basis),
                                                       datum.algebra.dim):
        raise AssertionError("unit algebra differs from the wedge edge")
    if not report.checks["edge_identity"]:
        raise AssertionError("edge identity failed on the report")
    return h0
