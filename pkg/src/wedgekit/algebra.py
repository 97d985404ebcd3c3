"""Finite-dimensional real Lie algebras over exact rational arithmetic.

Structure constants are stored sparsely for basis pairs (i, j) with i < j;
antisymmetry is forced by the storage and the Jacobi identity is verified
exactly on demand.  Gradings are exact kernels ker(A - λ·id); eigenvalues
are either supplied or discovered as the rational roots of the
characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .rational import (
    Mat,
    Vec,
    ZERO,
    charpoly,
    coords_in_span,
    frac,
    identity,
    in_span,
    intersect_spans,
    inverse,
    is_zero_vec,
    mat,
    mat_from_cols,
    mat_mul,
    mat_sub,
    mat_vec,
    nullspace,
    rational_roots,
    span_basis,
    transpose,
    unit,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
    zeros,
)


class NotInvolution(ValueError):
    pass


class NotAutomorphism(ValueError):
    pass


class NotDerivation(ValueError):
    pass


class NotSemisimple(ValueError):
    """Eigenspaces of the operator do not span the ambient space."""


class NotCompatible(ValueError):
    """The endpoint/parity constraint e^{πi h}x = τ(x) fails."""


class NonIntegerSpectrum(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    """dim, basis names and sparse structure constants c_{ij}^k (i < j)."""

    dim: int
    basis_names: tuple[str, ...]
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]]

    def __post_init__(self):
        if self.dim <= 0:
            raise ValueError("dim must be positive")
        if len(self.basis_names) != self.dim:
            raise ValueError("need one basis name per dimension")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in self.brackets.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bracket indices ({i},{j}) must satisfy 0 <= i < j < dim")
            cc = {k: frac(c) for k, c in coeffs.items() if frac(c) != 0}
            for k in cc:
                if not 0 <= k < self.dim:
                    raise ValueError(f"bracket target index {k} out of range")
            if cc:
                clean[(i, j)] = cc
        object.__setattr__(self, "brackets", clean)

    def basis_bracket(self, i: int, j: int) -> Vec:
        """[e_i, e_j] as a coordinate vector."""
        out = [ZERO] * self.dim
        if i == j:
            return tuple(out)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.brackets.get((i, j), {}).items():
            out[k] = sign * c
        return tuple(out)

    def bracket(self, x: Vec, y: Vec) -> Vec:
        out = zeros(self.dim)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0 or i == j:
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.basis_bracket(i, j)))
        return out


def abelian(dim: int, names: Sequence[str] | None = None) -> LieAlgebra:
    names = tuple(names) if names else tuple(f"u{i}" for i in range(dim))
    return LieAlgebra(dim, names, {})


@dataclass(frozen=True)
class LinearEndo:
    """A linear endomorphism in the chosen basis, tagged by its role."""

    matrix: Mat
    kind: str = "generic"  # involution | derivation | generic

    def __post_init__(self):
        M = mat(self.matrix)
        if M and len(M) != len(M[0]):
            raise ValueError("endomorphism matrix must be square")
        object.__setattr__(self, "matrix", M)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Vec) -> Vec:
        return mat_vec(self.matrix, x)


def check_involution(t: LinearEndo) -> None:
    if mat_mul(t.matrix, t.matrix) != identity(t.dim):
        raise NotInvolution("matrix squared is not the identity")


def check_automorphism(algebra: LieAlgebra, t: LinearEndo) -> None:
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            lhs = t(algebra.basis_bracket(i, j))
            rhs = algebra.bracket(t(unit(algebra.dim, i)), t(unit(algebra.dim, j)))
            if lhs != rhs:
                raise NotAutomorphism(f"bracket compatibility fails on pair ({i},{j})")


def check_derivation(algebra: LieAlgebra, d: LinearEndo) -> None:
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            ei, ej = unit(algebra.dim, i), unit(algebra.dim, j)
            lhs = d(algebra.basis_bracket(i, j))
            rhs = vec_add(algebra.bracket(d(ei), ej), algebra.bracket(ei, d(ej)))
            if lhs != rhs:
                raise NotDerivation(f"Leibniz rule fails on pair ({i},{j})")


@dataclass(frozen=True)
class ValidationReport:
    jacobi_failures: tuple[tuple[int, int, int], ...]

    @property
    def valid(self) -> bool:
        return not self.jacobi_failures


def validate(algebra: LieAlgebra) -> ValidationReport:
    """Exact Jacobi check on all basis triples (antisymmetry is structural)."""
    bad = []
    n = algebra.dim
    for i in range(n):
        ei = unit(n, i)
        for j in range(i + 1, n):
            ej = unit(n, j)
            for k in range(j + 1, n):
                ek = unit(n, k)
                s = vec_add(
                    algebra.bracket(ei, algebra.basis_bracket(j, k)),
                    vec_add(
                        algebra.bracket(ej, algebra.basis_bracket(k, i)),
                        algebra.bracket(ek, algebra.basis_bracket(i, j)),
                    ),
                )
                if not is_zero_vec(s):
                    bad.append((i, j, k))
    return ValidationReport(tuple(bad))


def ad(algebra: LieAlgebra, x: Vec) -> LinearEndo:
    """The adjoint map y ↦ [x, y]."""
    x = vec(x)
    if len(x) != algebra.dim:
        raise ValueError("vector length != algebra dim")
    cols = [algebra.bracket(x, unit(algebra.dim, j)) for j in range(algebra.dim)]
    return LinearEndo(mat_from_cols(cols), kind="derivation")


@dataclass(frozen=True)
class GradedDecomposition:
    """Eigenvalue-indexed exact kernels of A - λ·id."""

    pieces: tuple[tuple[Fraction, tuple[Vec, ...]], ...]
    complete: bool

    def eigenvalues(self) -> list[Fraction]:
        return [lam for lam, _ in self.pieces]

    def space(self, lam) -> list[Vec]:
        lam = frac(lam)
        for mu, basis in self.pieces:
            if mu == lam:
                return list(basis)
        return []


def eigenspaces(A: LinearEndo | Mat, spectrum_hint: Sequence | None = None,
                require_complete: bool = False) -> GradedDecomposition:
    """Exact eigenspace decomposition over the rationals.

    Without a hint, eigenvalues are the rational roots of the characteristic
    polynomial; irrational eigenvalues are simply not represented, which
    clears the completeness flag.
    """
    M = A.matrix if isinstance(A, LinearEndo) else mat(A)
    n = len(M)
    if spectrum_hint is not None:
        lams = sorted({frac(l) for l in spectrum_hint})
    else:
        lams = rational_roots(charpoly(M))
    pieces = []
    total = 0
    for lam in lams:
        shifted = mat_sub(M, mat_scale_identity(lam, n))
        basis = tuple(span_basis(nullspace(shifted, ncols=n), n))
        if basis:
            pieces.append((lam, basis))
            total += len(basis)
    complete = total == n
    if require_complete and not complete:
        raise NotSemisimple(
            f"eigenspaces span {total} of {n} dimensions (rational spectrum only)"
        )
    return GradedDecomposition(tuple(pieces), complete)


def mat_scale_identity(lam: Fraction, n: int) -> Mat:
    return tuple(tuple(lam if i == j else ZERO for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class TauSplit:
    h_part: tuple[Vec, ...]  # ker(tau - id)
    q_part: tuple[Vec, ...]  # ker(tau + id)


def tau_split(algebra: LieAlgebra, tau: LinearEndo) -> TauSplit:
    """Exact ±1 eigenspace split of an involutive automorphism."""
    check_involution(tau)
    check_automorphism(algebra, tau)
    n = algebra.dim
    dec = eigenspaces(tau, spectrum_hint=(1, -1))
    h = tuple(dec.space(1))
    q = tuple(dec.space(-1))
    if len(h) + len(q) != n:
        raise NotInvolution("±1 eigenspaces do not exhaust the space")
    return TauSplit(h, q)


def spectral_decompose(algebra: LieAlgebra, h_elem: Vec, tau: LinearEndo,
                       x: Vec) -> list[tuple[int, Vec]]:
    """Finite decomposition x = Σ x_n with [h, x_n] = n x_n, τ(x_n) = (-1)^n x_n.

    Exists iff e^{πi·ad h} x = τ(x); otherwise NotCompatible is raised.
    Components outside integer eigenspaces raise NonIntegerSpectrum.
    """
    x = vec(x)
    h_elem = vec(h_elem)
    check_involution(tau)
    check_automorphism(algebra, tau)
    M = ad(algebra, h_elem).matrix
    if mat_mul(tau.matrix, M) != mat_mul(M, tau.matrix):
        raise NotCompatible("τ does not commute with ad h")
    dec = eigenspaces(M)
    # decompose x over the rational eigenspaces: x = Σ_λ B_λ c_λ
    cols: list[Vec] = []
    owners: list[tuple[Fraction, Vec]] = []
    for lam, basis in dec.pieces:
        for b in basis:
            cols.append(b)
            owners.append((lam, b))
    coeffs = coords_in_span(x, cols) if cols else None
    if coeffs is None:
        raise NonIntegerSpectrum(
            "x has a component outside the rational eigenspaces of ad h"
        )
    parts: dict[Fraction, Vec] = {}
    for c, (lam, b) in zip(coeffs, owners):
        if c == 0:
            continue
        parts[lam] = vec_add(parts.get(lam, zeros(algebra.dim)), vec_scale(c, b))
    out: list[tuple[int, Vec]] = []
    for lam in sorted(parts):
        comp = parts[lam]
        if is_zero_vec(comp):
            continue
        if lam.denominator != 1:
            raise NonIntegerSpectrum(f"component with non-integer weight {lam}")
        n = int(lam)
        expected = vec_scale(Fraction((-1) ** n), comp)
        if tau(comp) != expected:
            raise NotCompatible(
                f"weight-{n} component has the wrong τ-parity "
                "(e^{πi·ad h} x ≠ τ(x))"
            )
        out.append((n, comp))
    return out


def change_of_basis(algebra: LieAlgebra, P: Mat,
                    names: Sequence[str] | None = None) -> LieAlgebra:
    """The same algebra in the basis whose vectors are the columns of P.

    All operations in this package are covariant under this transformation:
    vectors map by P^{-1} (old coords -> new coords of the same element read
    e_j^{new} = P e_j), operators by P^{-1} A P.
    """
    P = mat(P)
    n = algebra.dim
    Pinv = inverse(P)
    cols = [tuple(P[i][j] for i in range(n)) for j in range(n)]
    new_brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            b = algebra.bracket(cols[i], cols[j])
            coeffs = mat_vec(Pinv, b)
            cc = {k: c for k, c in enumerate(coeffs) if c != 0}
            if cc:
                new_brackets[(i, j)] = cc
    names = tuple(names) if names else tuple(f"{nm}'" for nm in algebra.basis_names)
    return LieAlgebra(n, names, new_brackets)


def transform_vector(P: Mat, x: Vec) -> Vec:
    """Old coordinates of x -> coordinates in the basis given by P's columns."""
    return mat_vec(inverse(mat(P)), vec(x))


def transform_endo(P: Mat, A: LinearEndo) -> LinearEndo:
    P = mat(P)
    return LinearEndo(mat_mul(inverse(P), mat_mul(A.matrix, P)), A.kind)
