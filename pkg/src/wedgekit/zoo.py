"""Curated modular data with exactly known wedge decompositions.

Each entry pairs a ModularDatum with the expected fragment of its wedge
report (charged generators up to positive scaling and permutation, edge and
reduced-subalgebra dimensions).  All structure constants are exact
rationals; the Lorentz-block brackets are derived from matrix commutators on
the defining representation rather than hand-written tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cones
from .algebra import LieAlgebra, LinearEndo
from .rational import (
    Mat,
    Vec,
    identity,
    mat,
    mat_mul,
    mat_sub,
    mat_vec,
    primitive,
    unit,
    vec,
    zero_mat,
    zeros,
)
from .wedge import ModularDatum


@dataclass(frozen=True)
class ExpectedFragment:
    c_plus: tuple[Vec, ...]
    c_minus: tuple[Vec, ...]
    edge_dim: int
    g_red_dim: int
    degenerate: bool = False


@dataclass(frozen=True)
class ZooEntry:
    name: str
    datum: ModularDatum
    expected: ExpectedFragment
    label: str


def _rays(*vs) -> tuple[Vec, ...]:
    return tuple(primitive(vec(v)) for v in vs)


# ---------------------------------------------------------------------------
# affine line
# ---------------------------------------------------------------------------

def _entry_aff() -> ZooEntry:
    g = LieAlgebra(2, ("h", "p"), {(0, 1): {1: Fraction(1)}})
    tau = LinearEndo(mat([(1, 0), (0, -1)]), "involution")
    cu = cones.polyhedral([(0, 1)], 2)
    datum = ModularDatum(g, tau, vec((1, 0)), cu, name="aff")
    exp = ExpectedFragment(_rays((0, 1)), (), edge_dim=1, g_red_dim=2)
    return ZooEntry("aff", datum, exp, "affine line with dilations, translation half-line")


# ---------------------------------------------------------------------------
# planar dilation group
# ---------------------------------------------------------------------------

def _entry_dilation() -> ZooEntry:
    # E = R^2 with the scaling action [h, u] = u; reflection fixes u1 only
    g = LieAlgebra(3, ("u1", "u2", "h"),
                   {(0, 2): {0: Fraction(-1)}, (1, 2): {1: Fraction(-1)}})
    tau = LinearEndo(mat([(1, 0, 0), (0, -1, 0), (0, 0, 1)]), "involution")
    cu = cones.polyhedral([(0, 1, 0)], 3)
    datum = ModularDatum(g, tau, vec((0, 0, 1)), cu, name="dilation2")
    exp = ExpectedFragment(_rays((0, 1, 0)), (), edge_dim=1, g_red_dim=2)
    return ZooEntry("dilation2", datum, exp,
                    "two-dimensional dilation group, odd-axis half-line cone")


# ---------------------------------------------------------------------------
# Poincaré algebras
# ---------------------------------------------------------------------------

def _lorentz_generators(d: int) -> tuple[list[str], list[Mat]]:
    """Boosts B0i and rotations Rij as exact matrices on R^{1,d-1}."""
    names: list[str] = []
    mats: list[Mat] = []
    for i in range(1, d):
        M = [[Fraction(0)] * d for _ in range(d)]
        M[i][0] = Fraction(1)
        M[0][i] = Fraction(1)
        names.append(f"B0{i}")
        mats.append(mat(M))
    for i in range(1, d):
        for j in range(i + 1, d):
            M = [[Fraction(0)] * d for _ in range(d)]
            M[j][i] = Fraction(1)
            M[i][j] = Fraction(-1)
            names.append(f"R{i}{j}")
            mats.append(mat(M))
    return names, mats


def poincare_algebra(d: int) -> LieAlgebra:
    """p(d) = R^{1,d-1} ⋊ so(1,d-1) with [B01, e0] = e1, [B01, e1] = e0."""
    if d < 2:
        raise ValueError("need d >= 2")
    so_names, so_mats = _lorentz_generators(d)
    n = d + len(so_mats)
    names = [f"e{mu}" for mu in range(d)] + so_names

    def so_coords(C: Mat) -> dict[int, Fraction]:
        # boost coefficient of B0i is C[i][0]; rotation Rij coefficient is C[j][i]
        out: dict[int, Fraction] = {}
        k = 0
        for i in range(1, d):
            if C[i][0] != 0:
                out[d + k] = C[i][0]
            k += 1
        for i in range(1, d):
            for j in range(i + 1, d):
                if C[j][i] != 0:
                    out[d + k] = C[j][i]
                k += 1
        return out

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    # [so, translation] = matrix action; stored as (translation, so) pairs
    for mu in range(d):
        for k, X in enumerate(so_mats):
            img = mat_vec(X, unit(d, mu))
            coeffs = {t: -img[t] for t in range(d) if img[t] != 0}
            if coeffs:
                brackets[(mu, d + k)] = coeffs
    # [so, so] = matrix commutator
    for a in range(len(so_mats)):
        for b in range(a + 1, len(so_mats)):
            C = mat_sub(mat_mul(so_mats[a], so_mats[b]), mat_mul(so_mats[b], so_mats[a]))
            coeffs = so_coords(C)
            if coeffs:
                brackets[(d + a, d + b)] = coeffs
    return LieAlgebra(n, tuple(names), brackets)


def _poincare_tau(d: int) -> LinearEndo:
    """Conjugation by T = diag(-1,-1,1,...,1): T on translations, X ↦ TXT on so."""
    so_names, so_mats = _lorentz_generators(d)
    n = d + len(so_mats)
    T = mat([[Fraction(-1 if mu in (0, 1) and mu == nu else (1 if mu == nu else 0))
              for nu in range(d)] for mu in range(d)])
    g = poincare_algebra(d)

    def so_coords(C: Mat) -> Vec:
        out = [Fraction(0)] * len(so_mats)
        k = 0
        for i in range(1, d):
            out[k] = C[i][0]
            k += 1
        for i in range(1, d):
            for j in range(i + 1, d):
                out[k] = C[j][i]
                k += 1
        return tuple(out)

    cols: list[Vec] = []
    for mu in range(d):
        img = mat_vec(T, unit(d, mu))
        cols.append(tuple(img) + zeros(len(so_mats)))
    for X in so_mats:
        TXT = mat_mul(T, mat_mul(X, T))
        cols.append(zeros(d) + so_coords(TXT))
    M = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    del g
    return LinearEndo(M, "involution")


def forward_light_cone(d: int, ambient: int) -> cones.QuadraticCone:
    """closure(V₊) inside the translation block of an ambient space."""
    Q = [[Fraction(0)] * ambient for _ in range(ambient)]
    Q[0][0] = Fraction(1)
    for mu in range(1, d):
        Q[mu][mu] = Fraction(-1)
    ell = unit(ambient, 0)
    eqs = [unit(ambient, k) for k in range(d, ambient)]
    return cones.quadratic(mat(Q), ell, ambient, eqs)


def _entry_poincare(d: int) -> ZooEntry:
    g = poincare_algebra(d)
    tau = _poincare_tau(d)
    h = unit(g.dim, d)  # the boost B01
    cu = forward_light_cone(d, g.dim)
    datum = ModularDatum(g, tau, h, cu, name=f"poincare{d}")
    ep = [Fraction(0)] * g.dim
    ep[0] = ep[1] = Fraction(1)
    em = [Fraction(0)] * g.dim
    em[0], em[1] = Fraction(-1), Fraction(1)
    edge_dim = 1 + (d - 2) + (d - 2) * (d - 3) // 2
    exp = ExpectedFragment(_rays(ep), _rays(em), edge_dim=edge_dim,
                           g_red_dim=edge_dim + 2)
    return ZooEntry(f"poincare{d}", datum, exp,
                    f"{d}-dimensional Poincaré group with the (01)-boost and the "
                    "forward light cone")


# ---------------------------------------------------------------------------
# sl(2, R)
# ---------------------------------------------------------------------------

def sl2_algebra() -> LieAlgebra:
    return LieAlgebra(3, ("h", "e", "f"),
                      {(0, 1): {1: Fraction(2)}, (0, 2): {2: Fraction(-2)},
                       (1, 2): {0: Fraction(1)}})


def sl2_invariant_cone() -> cones.QuadraticCone:
    """{x : det(x) >= 0} ∩ {half containing e - f}, in the (h,e,f) basis.

    For x = a·h + b·e + c·f the matrix determinant is -a² - bc, an invariant
    Lorentz form of inertia (1,2).
    """
    Q = mat([(-1, 0, 0), (0, 0, Fraction(-1, 2)), (0, Fraction(-1, 2), 0)])
    ell = vec((0, 1, -1))
    return cones.quadratic(Q, ell, 3)


def sl2_cone_boundary_rays(params) -> list[Vec]:
    """Boundary rays (t, 1, -t²) of the invariant cone, plus the f-axis ray."""
    rays = [primitive(vec((t, 1, -t * t))) for t in params]
    rays.append(primitive(vec((0, 0, -1))))
    return rays


_SL2_RAY_PARAMS = tuple(
    Fraction(s) for s in
    (0, "1/8", "-1/8", "1/4", "-1/4", "1/2", "-1/2", 1, -1, 2, -2, 4, -4, 8, -8)
)


def _sl2_tau() -> LinearEndo:
    return LinearEndo(mat([(1, 0, 0), (0, -1, 0), (0, 0, -1)]), "involution")


def _entry_sl2() -> ZooEntry:
    g = sl2_algebra()
    datum = ModularDatum(g, _sl2_tau(), vec((Fraction(1, 2), 0, 0)),
                         sl2_invariant_cone(), name="sl2")
    exp = ExpectedFragment(_rays((0, 1, 0)), _rays((0, 0, 1)),
                           edge_dim=1, g_red_dim=3)
    return ZooEntry("sl2", datum, exp,
                    "sl(2,R) with the determinant-form invariant cone (exact)")


def _entry_sl2_approx() -> ZooEntry:
    g = sl2_algebra()
    rays = sl2_cone_boundary_rays(_SL2_RAY_PARAMS)
    cu = cones.polyhedral(rays, 3)
    datum = ModularDatum(g, _sl2_tau(), vec((Fraction(1, 2), 0, 0)), cu,
                         name="sl2-approx", approximate=True)
    exp = ExpectedFragment(_rays((0, 1, 0)), _rays((0, 0, 1)),
                           edge_dim=1, g_red_dim=3)
    return ZooEntry("sl2-approx", datum, exp,
                    "sl(2,R) with 16 sampled boundary rays of the invariant cone "
                    "(inner approximation)")


def _entry_sl2_degenerate() -> ZooEntry:
    g = sl2_algebra()
    tau = LinearEndo(identity(3), "involution")
    datum = ModularDatum(g, tau, vec((Fraction(1, 2), 0, 0)),
                         cones.zero_cone(3), name="sl2-degenerate")
    exp = ExpectedFragment((), (), edge_dim=1, g_red_dim=1, degenerate=True)
    return ZooEntry("sl2-degenerate", datum, exp,
                    "sl(2,R) with trivial reflection: the wedge collapses to the "
                    "centralizer line")


# ---------------------------------------------------------------------------
# mixed R^x-action
# ---------------------------------------------------------------------------

def _entry_rx_action() -> ZooEntry:
    # E = R^4 with weights (1,-1,0,1) and reflection (-,-,+,+); h spans the dilation
    g = LieAlgebra(5, ("u1", "u2", "u3", "u4", "h"),
                   {(0, 4): {0: Fraction(-1)}, (1, 4): {1: Fraction(1)},
                    (3, 4): {3: Fraction(-1)}})
    tau = LinearEndo(mat([(-1, 0, 0, 0, 0), (0, -1, 0, 0, 0), (0, 0, 1, 0, 0),
                          (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]), "involution")
    cu = cones.polyhedral([(1, 0, 0, 0, 0), (0, 1, 0, 0, 0)], 5)
    datum = ModularDatum(g, tau, vec((0, 0, 0, 0, 1)), cu, name="rx-action")
    exp = ExpectedFragment(_rays((1, 0, 0, 0, 0)), _rays((0, -1, 0, 0, 0)),
                           edge_dim=2, g_red_dim=4)
    return ZooEntry("rx-action", datum, exp,
                    "abelian module with mixed weights {-1,0,1} under a dilation "
                    "action; even weight-1 axis excluded from the wedge")


_BUILDERS = (
    _entry_aff,
    _entry_dilation,
    lambda: _entry_poincare(3),
    lambda: _entry_poincare(4),
    _entry_sl2,
    _entry_sl2_approx,
    _entry_sl2_degenerate,
    _entry_rx_action,
)


def list_entries() -> list[ZooEntry]:
    return [b() for b in _BUILDERS]


def entry_names() -> list[str]:
    return [e.name for e in list_entries()]


def get_entry(name: str) -> ZooEntry:
    for e in list_entries():
        if e.name == name:
            return e
    raise KeyError(f"no zoo entry named {name!r}; known: {', '.join(entry_names())}")
