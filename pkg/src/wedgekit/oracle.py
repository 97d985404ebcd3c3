"""Brute-force numerical tube-membership oracle via explicit Wick rotation.

A vector x belongs to the invariant tube of (τ, h, W) iff the flow
e^{iy·h}x stays inside E + iW for all y ∈ [0, π] and lands on τ(x) at
y = π.  The oracle checks exactly that, on a y-grid, with signed numeric
cone margins; it is completely independent of the closed-form direct-sum
decomposition and is used to cross-validate it.

Default grid 257 points (power of two plus one, so refinement by midpoints
reuses the grid); default tolerance 1e-9; samples within 10·tol of the
boundary are excluded from agreement counts since no numeric test can
resolve the exact boundary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import cones
from .algebra import LieAlgebra, LinearEndo, ad, eigenspaces
from .numeric import as_float_mat, as_float_vec, cone_margins
from .rational import (
    Mat,
    Vec,
    coords_in_span,
    identity,
    inverse,
    mat,
    mat_mul,
    mat_vec,
    unit,
    vec,
    vec_add,
    vec_scale,
    zeros,
)
from .wedge import InvalidDatum, ModularDatum, TubeCone, _tube_parts, certify_datum

DEFAULT_SAMPLES = 257
DEFAULT_TOL = 1e-9
MARGIN_BUFFER = 10.0  # in units of tol


@dataclass(frozen=True)
class OracleConfig:
    samples: int = DEFAULT_SAMPLES
    tol: float = DEFAULT_TOL
    seed: int = 0

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("need at least 2 grid samples")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class ComplexVector:
    real: np.ndarray
    imag: np.ndarray


@dataclass(frozen=True)
class TubeProblem:
    """The abelian Wick-rotation data: commuting (τ, h) and an invariant cone."""

    dim: int
    tau: LinearEndo
    h_op: Mat
    cone: cones.ConvexCone
    name: str = ""
    approximate: bool = False


def problem_from_datum(datum: ModularDatum) -> TubeProblem:
    return TubeProblem(datum.algebra.dim, datum.tau,
                       ad(datum.algebra, datum.h_elem).matrix, datum.cone,
                       name=datum.name, approximate=datum.approximate)


class FlowEvaluator:
    """Evaluates e^{iy·h} x, preferring the exact rational eigenbasis of h.

    When h is diagonalizable over the rationals the flow of each vector is a
    finite trigonometric sum with exactly computed coefficient vectors, so
    the only floating error is in sin/cos themselves.  Otherwise the flow
    falls back to the complex matrix exponential (scaling and squaring).
    """

    def __init__(self, h_op: Mat):
        self.h_op = mat(h_op)
        dec = eigenspaces(self.h_op)
        self._eigen = None
        if dec.complete:
            cols: list[Vec] = []
            lams: list[Fraction] = []
            for lam, basis in dec.pieces:
                for b in basis:
                    cols.append(b)
                    lams.append(lam)
            self._basis = cols
            self._lams = np.array([float(l) for l in lams])
            self._basis_f = np.array([[float(x) for x in b] for b in cols])
            self._eigen = True
        else:
            self._hf = as_float_mat(self.h_op)

    def decompose(self, x: Vec) -> np.ndarray | None:
        """Exact eigen-coefficients of x as floats (rows align with weights)."""
        if not self._eigen:
            return None
        c = coords_in_span(vec(x), self._basis)
        if c is None:  # cannot happen when the decomposition is complete
            raise AssertionError("complete eigenbasis failed to span")
        return np.array([float(ci) for ci in c])

    def flow_batch(self, x: Vec, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(real, imag) parts of e^{iy·h}x for every y; shapes (len(ys), dim)."""
        if self._eigen:
            c = self.decompose(x)
            comp = c[:, None] * self._basis_f  # one row per eigvector
            ang = np.outer(ys, self._lams)
            return np.cos(ang) @ comp, np.sin(ang) @ comp
        xf = as_float_vec(vec(x))
        from .numeric import expm

        reals, imags = [], []
        for y in ys:
            z = expm(1j * float(y) * self._hf) @ xf
            reals.append(z.real)
            imags.append(z.imag)
        return np.array(reals), np.array(imags)


def wick_flow(h_op: Mat, x: Vec, y: float) -> ComplexVector:
    """e^{iy·h} x computed through the complexification."""
    ev = FlowEvaluator(h_op)
    re, im = ev.flow_batch(vec(x), np.array([float(y)]))
    return ComplexVector(re[0], im[0])


@dataclass(frozen=True)
class OracleVerdict:
    member: bool
    min_margin: float
    witness_y: float | None = None
    endpoint_residual: float = 0.0
    reason: str = ""
    boundary_proximity: float = float("inf")

    def as_dict(self) -> dict:
        return {
            "member": self.member,
            "min_margin": self.min_margin,
            "witness_y": self.witness_y,
            "endpoint_residual": self.endpoint_residual,
            "reason": self.reason,
        }


def _evaluate(problem: TubeProblem, ev: FlowEvaluator, x: Vec,
              config: OracleConfig) -> OracleVerdict:
    ys = np.linspace(0.0, np.pi, config.samples)
    _, imag = ev.flow_batch(x, ys)
    margins = cone_margins(problem.cone, imag)
    scale = 1.0 + np.linalg.norm(imag, axis=1)
    rel = margins / scale
    worst = int(np.argmin(rel))
    min_margin = float(rel[worst])
    # boundary proximity ignores grid points whose imaginary part is too
    # small to witness anything (the origin sits on every cone's boundary)
    xnorm0 = float(np.linalg.norm(as_float_vec(vec(x))))
    nontrivial = np.linalg.norm(imag, axis=1) > MARGIN_BUFFER * config.tol * (1.0 + xnorm0)
    proximity = float(np.min(np.abs(rel[nontrivial]))) if nontrivial.any() else float("inf")
    # endpoint: e^{iπh} x = τ(x)
    re_pi, im_pi = ev.flow_batch(x, np.array([np.pi]))
    xf = as_float_vec(vec(x))
    tau_x = as_float_mat(problem.tau.matrix) @ xf
    resid = float(np.hypot(np.linalg.norm(re_pi[0] - tau_x), np.linalg.norm(im_pi[0])))
    xnorm = float(np.linalg.norm(xf))
    flow_ok = min_margin >= -config.tol
    end_ok = resid <= config.tol * (1.0 + xnorm)
    if flow_ok and end_ok:
        return OracleVerdict(True, min_margin, None, resid)
    if not end_ok:
        return OracleVerdict(False, min_margin, None, resid,
                             "endpoint e^{iπh}x differs from τ(x)")
    return OracleVerdict(False, min_margin, float(ys[worst]), resid,
                         "flow leaves the tube")


def tube_membership(problem: TubeProblem, x: Vec,
                    config: OracleConfig = OracleConfig()) -> OracleVerdict:
    """Grid Wick-rotation membership test; Member or NotMember with witness."""
    ev = FlowEvaluator(problem.h_op)
    return _evaluate(problem, ev, vec(x), config)


# ---------------------------------------------------------------------------
# cross-validation harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementReport:
    name: str
    total: int
    tested: int
    skipped_margin: int
    agreements: int
    disagreements: tuple[dict, ...]
    seed: int
    samples: int
    tol: float

    @property
    def agreement_rate(self) -> float:
        return 1.0 if self.tested == 0 else self.agreements / self.tested

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "total": self.total,
            "tested": self.tested,
            "skipped_margin": self.skipped_margin,
            "agreements": self.agreements,
            "disagreements": list(self.disagreements),
            "agreement_rate": self.agreement_rate,
            "seed": self.seed,
            "grid_samples": self.samples,
            "tol": self.tol,
        }


def exact_tube(problem: TubeProblem) -> TubeCone:
    """Closed-form direct-sum cone of the problem (the formula under test)."""
    q1, c_plus, edge, qm1, c_minus = _tube_parts(
        problem.cone, problem.h_op, problem.tau.matrix, problem.dim)
    return TubeCone(problem.dim, tuple(q1), c_plus, tuple(edge), tuple(qm1), c_minus)


def _certify_problem(problem: TubeProblem) -> list[str]:
    from .wedge import _numeric_flow_fallback

    failures = []
    if not cones.is_pointed(problem.cone):
        failures.append("cone is not pointed")
    if not cones.certify_invariance(problem.cone, problem.tau.matrix, "reflect").ok:
        failures.append("reflect certificate failed")
    if not cones.certify_invariance(problem.cone, problem.h_op, "flow",
                                    numeric_fallback=_numeric_flow_fallback).ok:
        failures.append("flow certificate failed")
    return failures


def _random_fraction(rng: random.Random, lo: int, hi: int, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _sample_vectors(problem: TubeProblem, tube: TubeCone, count: int,
                    rng: random.Random) -> list[tuple[str, Vec]]:
    """Deterministic sample mix: tube points, boundary nudges, uniform noise."""
    n = problem.dim
    gens: list[Vec] = []
    for side in ("plus", "minus"):
        cone = tube.c_plus if side == "plus" else tube.c_minus
        if isinstance(cone, cones.PolyhedralCone) and not cone.is_zero:
            gens.extend(tube.part_generators(side))
    edge = list(tube.edge_basis)
    out: list[tuple[str, Vec]] = []

    def tube_point() -> Vec:
        x = zeros(n)
        for g in gens:
            x = vec_add(x, vec_scale(_random_fraction(rng, 0, 6), g))
        for e in edge:
            x = vec_add(x, vec_scale(_random_fraction(rng, -6, 6), e))
        return x

    def uniform() -> Vec:
        return tuple(_random_fraction(rng, -6, 6) for _ in range(n))

    for k in range(count):
        mode = k % 10
        if mode < 3 and (gens or edge):
            out.append(("tube_point", tube_point()))
        elif mode < 5 and gens:
            g = gens[rng.randrange(len(gens))]
            x = vec_add(g, vec_scale(Fraction(1, 128), tube_point()))
            out.append(("boundary_in", x))
        elif mode < 7 and gens:
            g = gens[rng.randrange(len(gens))]
            x = vec_add(g, vec_scale(Fraction(1, 128), uniform()))
            out.append(("boundary_out", x))
        else:
            out.append(("uniform", uniform()))
    return out


def fuzz_compare(problem: TubeProblem,
                 config: OracleConfig = OracleConfig(),
                 count: int = 1000) -> AgreementReport:
    """Tabulate agreement between the closed form and the Wick oracle.

    Refuses to run when the invariance certificates fail, unless the problem
    is flagged approximate (then the closed form is still the cone under
    test and the comparison is reported as such).
    """
    failures = _certify_problem(problem)
    if failures and not problem.approximate:
        raise InvalidDatum("refusing to fuzz an uncertified problem: "
                           + "; ".join(failures))
    rng = random.Random(config.seed)
    tube = exact_tube(problem)
    ev = FlowEvaluator(problem.h_op)
    samples = _sample_vectors(problem, tube, count, rng)
    buffer = MARGIN_BUFFER * config.tol
    tested = skipped = agree = 0
    disagreements: list[dict] = []
    for kind, x in samples:
        verdict = _evaluate(problem, ev, x, config)
        near_flow = abs(verdict.min_margin) < buffer
        xnorm = float(np.linalg.norm(as_float_vec(x)))
        end_scale = config.tol * (1.0 + xnorm)
        near_end = (0.1 * end_scale <= verdict.endpoint_residual <= MARGIN_BUFFER * end_scale)
        if near_flow or near_end:
            skipped += 1
            continue
        exact = tube.member(x)
        tested += 1
        if exact == verdict.member:
            agree += 1
        else:
            disagreements.append({
                "kind": kind,
                "vector": [str(c) for c in x],
                "exact_member": exact,
                "oracle": verdict.as_dict(),
            })
    return AgreementReport(problem.name, len(samples), tested, skipped, agree,
                           tuple(disagreements), config.seed, config.samples,
                           config.tol)


# ---------------------------------------------------------------------------
# seeded random problem generators (used by the cross-validation suites)
# ---------------------------------------------------------------------------

def _random_unimodular(rng: random.Random, n: int, shears: int = 4) -> Mat:
    P = [list(row) for row in identity(n)]
    for _ in range(shears):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for t in range(n):
            P[i][t] += c * P[j][t]
    return mat(P)


def random_abelian_problem(seed: int, max_dim: int = 8,
                           weight_range: tuple[int, int] = (-2, 2),
                           force_weight2: bool = False,
                           ) -> tuple[TubeProblem, dict]:
    """A seeded diagonal abelian tube problem conjugated by a unimodular map.

    In the hidden diagonal coordinates: integer weights within weight_range,
    a commuting sign involution, and the cone spanned by a subset of the
    odd-sign eigenvector axes.  The returned metadata records the hidden
    structure so tests can build vectors with prescribed weight components.
    """
    rng = random.Random(seed)
    n = rng.randint(3, max_dim)
    lo, hi = weight_range
    while True:
        weights = [rng.randint(lo, hi) for _ in range(n)]
        taus = [rng.choice((1, -1)) for _ in range(n)]
        cone_axes = [i for i in range(n)
                     if taus[i] == -1 and rng.random() < 0.7]
        if not cone_axes:
            continue
        if force_weight2:
            w2 = [i for i in range(n) if abs(weights[i]) == 2 and taus[i] == 1]
            if not w2:
                i = rng.randrange(n)
                weights[i] = rng.choice((2, -2))
                taus[i] = 1
                cone_axes = [a for a in cone_axes if a != i]
                if not cone_axes:
                    continue
                w2 = [i]
        break
    P = _random_unimodular(rng, n)
    Pinv = inverse(P)
    H = mat([[Fraction(weights[i]) if i == j else Fraction(0) for j in range(n)]
             for i in range(n)])
    T = mat([[Fraction(taus[i]) if i == j else Fraction(0) for j in range(n)]
             for i in range(n)])
    h_new = mat_mul(Pinv, mat_mul(H, P))
    t_new = mat_mul(Pinv, mat_mul(T, P))
    gens = [mat_vec(Pinv, unit(n, i)) for i in cone_axes]
    cone = cones.polyhedral(gens, n)
    problem = TubeProblem(n, LinearEndo(t_new, "involution"), h_new, cone,
                          name=f"random-abelian-{seed}")
    meta = {"weights": weights, "taus": taus, "cone_axes": cone_axes,
            "P": P, "Pinv": Pinv, "dim": n}
    return problem, meta


def weight2_exclusion_case(seed: int) -> tuple[TubeProblem, Vec, dict]:
    """A seeded problem plus a vector with a nonzero weight-±2 component.

    The vector satisfies the endpoint parity condition but must be rejected
    by both the closed form and the oracle.
    """
    problem, meta = random_abelian_problem(seed, force_weight2=True)
    rng = random.Random(seed + 10**6)
    n = meta["dim"]
    weights, taus = meta["weights"], meta["taus"]
    x_diag = [Fraction(0)] * n
    w2_axes = [i for i in range(n) if abs(weights[i]) == 2 and taus[i] == 1]
    i2 = w2_axes[rng.randrange(len(w2_axes))]
    x_diag[i2] = Fraction(rng.choice((1, 2, 3)))
    # parity-compatible admixture: weight ±1 mass on cone axes, weight 0 even mass
    for i in meta["cone_axes"]:
        if abs(weights[i]) == 1:
            x_diag[i] = Fraction(rng.randint(0, 3))
    for i in range(n):
        if weights[i] == 0 and taus[i] == 1:
            x_diag[i] = Fraction(rng.randint(-3, 3))
    x = mat_vec(meta["Pinv"], tuple(x_diag))
    return problem, x, meta
