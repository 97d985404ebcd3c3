"""Floating-point helpers shared by the oracle and the numeric fallbacks.

Everything exact lives elsewhere; this module is the only place (besides
matrixlab) where rationals are converted to floats.  Margin conventions:

* polyhedral cone: min over unit-normalized facet inequalities of f·v,
  combined with -|e·v| for every unit-normalized span equality; the zero
  cone gives -max|v_i|.
* quadratic cone: min(vᵀQv, l·v, -|e·v| over unit-normalized equalities),
  with Q and l taken as given.

A nonnegative margin (within tolerance) means numeric membership.
"""

from __future__ import annotations

import numpy as np

from .cones import ConvexCone, PolyhedralCone, QuadraticCone
from .rational import Mat, Vec


def as_float_vec(v: Vec) -> np.ndarray:
    return np.array([float(x) for x in v], dtype=float)


def as_float_mat(M: Mat) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in M], dtype=float)


def _unit_rows(rows) -> np.ndarray:
    A = np.array([[float(x) for x in r] for r in rows], dtype=float)
    norms = np.linalg.norm(A, axis=1)
    return A / norms[:, None]


def cone_margins(cone: ConvexCone, V: np.ndarray) -> np.ndarray:
    """Signed numeric membership margins for a batch of row vectors.

    V has shape (m, n); the result has shape (m,), nonnegative entries
    meaning numeric membership of the corresponding row.
    """
    V = np.atleast_2d(V)
    m = V.shape[0]
    parts: list[np.ndarray] = []
    if isinstance(cone, PolyhedralCone):
        if cone.is_zero:
            return -np.max(np.abs(V), axis=1) if V.shape[1] else np.zeros(m)
        if cone.facets:
            parts.append(V @ _unit_rows(cone.facets).T)
        if cone.span_equalities:
            parts.append(-np.abs(V @ _unit_rows(cone.span_equalities).T))
    else:
        Q = as_float_mat(cone.form)
        l = as_float_vec(cone.functional)
        parts.append(np.einsum("si,ij,sj->s", V, Q, V)[:, None])
        parts.append((V @ l)[:, None])
        if cone.equalities:
            parts.append(-np.abs(V @ _unit_rows(cone.equalities).T))
    if not parts:
        return np.full(m, np.inf)
    return np.min(np.concatenate(parts, axis=1), axis=1)


def cone_margin(cone: ConvexCone, v: np.ndarray) -> float:
    return float(cone_margins(cone, v[None, :])[0])


def expm(M: np.ndarray) -> np.ndarray:
    from scipy.linalg import expm as _expm

    return _expm(M)


def sampled_flow_invariance(cone: ConvexCone, op: Mat, tol: float,
                            times=(1.0, -1.0, 0.5, -0.5, 2.0, -2.0)) -> bool:
    """Numeric fallback: e^{tA} keeps sampled cone points inside within tol."""
    A = as_float_mat(op)
    samples: list[np.ndarray] = []
    if isinstance(cone, PolyhedralCone):
        gens = [as_float_vec(g) for g in cone.generators]
        samples.extend(gens)
        if len(gens) > 1:
            samples.append(np.mean(gens, axis=0))
    else:
        w = as_float_vec(cone.witness)
        samples.append(w)
        # perturbations of the witness that remain safely interior
        for s in cone.support:
            sv = as_float_vec(s)
            cand = w + 0.25 * sv / max(np.linalg.norm(sv), 1e-300)
            if cone_margin(cone, cand) > tol:
                samples.append(cand)
    for t in times:
        E = expm(t * A)
        for s in samples:
            x = E @ s
            if cone_margin(cone, x) < -tol * (1.0 + np.linalg.norm(x)):
                return False
    return True
