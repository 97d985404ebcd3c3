"""Exact linear algebra over the rationals.

Vectors are tuples of ``fractions.Fraction``, matrices are tuples of row
tuples.  Everything here is pure and allocation-only; no floating point
enters.  Sizes in this package are small (dim <= ~12), so the dense O(n^3)
algorithms below are more than fast enough and keep the arithmetic exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("refusing float %r in exact context" % (x,))
    raise TypeError("cannot coerce %r to Fraction" % (x,))


def vec(entries: Iterable) -> Vec:
    return tuple(frac(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def zero_mat(n: int, m: int | None = None) -> Mat:
    return tuple((ZERO,) * (m if m is not None else n) for _ in range(n))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def vec_neg(v: Vec) -> Vec:
    return tuple(-a for a in v)


def dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def is_zero_vec(v: Vec) -> bool:
    return all(a == 0 for a in v)


def mat_vec(M: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in M)


def mat_mul(A: Mat, B: Mat) -> Mat:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def mat_add(A: Mat, B: Mat) -> Mat:
    return tuple(vec_add(r, s) for r, s in zip(A, B, strict=True))


def mat_sub(A: Mat, B: Mat) -> Mat:
    return tuple(vec_sub(r, s) for r, s in zip(A, B, strict=True))


def mat_scale(c: Fraction, A: Mat) -> Mat:
    return tuple(vec_scale(c, r) for r in A)


def transpose(A: Mat) -> Mat:
    if not A:
        return ()
    return tuple(zip(*A, strict=True))


def mat_from_cols(cols: Sequence[Vec]) -> Mat:
    return transpose(tuple(cols))


def rref(A: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    rows = [list(r) for r in A]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(A: Mat) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A: Mat, ncols: int | None = None) -> list[Vec]:
    """Basis of {x : A x = 0}.  A may be empty (kernel = everything)."""
    if not A:
        if ncols is None:
            raise ValueError("nullspace of empty matrix needs ncols")
        return [unit(ncols, i) for i in range(ncols)]
    n = len(A[0])
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * n
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(tuple(v))
    return basis


def solve(A: Mat, b: Vec) -> Vec | None:
    """One exact solution of A x = b, or None if inconsistent."""
    if not A:
        return None
    n = len(A[0])
    aug = tuple(row + (bi,) for row, bi in zip(A, b, strict=True))
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return tuple(x)


def inverse(A: Mat) -> Mat:
    n = len(A)
    aug = tuple(row + unit(n, i) for i, row in enumerate(A))
    R, pivots = rref(aug)
    if tuple(pivots) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in R)


def span_basis(vectors: Iterable[Vec], ncols: int | None = None) -> list[Vec]:
    """Canonical (rref-row) basis of the span of the given vectors."""
    vs = [v for v in vectors if not is_zero_vec(v)]
    if not vs:
        return []
    R, pivots = rref(tuple(vs))
    return [R[i] for i in range(len(pivots))]


def coords_in_span(v: Vec, basis: Sequence[Vec]) -> Vec | None:
    """Coordinates of v in the given (independent) basis, or None."""
    if not basis:
        return () if is_zero_vec(v) else None
    return solve(mat_from_cols(basis), v)


def in_span(v: Vec, basis: Sequence[Vec]) -> bool:
    return coords_in_span(v, basis) is not None


def intersect_spans(a_basis: Sequence[Vec], b_basis: Sequence[Vec]) -> list[Vec]:
    """Basis of span(a_basis) ∩ span(b_basis)."""
    if not a_basis or not b_basis:
        return []
    n = len(a_basis[0])
    cols = list(a_basis) + [vec_neg(b) for b in b_basis]
    ker = nullspace(mat_from_cols(cols), ncols=len(cols))
    out = []
    for k in ker:
        x = zeros(n)
        for coeff, a in zip(k[: len(a_basis)], a_basis):
            x = vec_add(x, vec_scale(coeff, a))
        out.append(x)
    return span_basis(out, n)


def restrict_operator(A: Mat, basis: Sequence[Vec]) -> Mat:
    """Matrix of A on an A-invariant subspace, in the given basis.

    Raises ValueError if the span is not invariant.
    """
    cols = []
    for b in basis:
        img = mat_vec(A, b)
        c = coords_in_span(img, basis)
        if c is None:
            raise ValueError("subspace is not invariant under the operator")
        cols.append(c)
    return mat_from_cols(cols)


def charpoly(A: Mat) -> list[Fraction]:
    """Coefficients [c_0, ..., c_n] of det(tI - A) = sum c_k t^k.

    Faddeev-LeVerrier; exact over the rationals.
    """
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = zero_mat(n)
    c = ONE
    for k in range(1, n + 1):
        M = mat_mul(A, M)
        M = tuple(
            tuple(M[i][j] + (c if i == j else ZERO) for j in range(n))
            for i in range(n)
        )
        AM = mat_mul(A, M)
        tr = sum((AM[i][i] for i in range(n)), ZERO)
        c = -tr / k
        coeffs[n - k] = c
    return coeffs


def rational_roots(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """All rational roots of the polynomial with the given coefficients."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    from math import gcd, lcm

    den = lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    roots: list[Fraction] = []
    # strip zero roots
    while ints and ints[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(m: int) -> list[int]:
        ds = []
        d = 1
        while d * d <= m:
            if m % d == 0:
                ds.append(d)
                ds.append(m // d)
            d += 1
        return ds

    seen = set()
    for p in divisors(a0):
        for q in divisors(an):
            if gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return sorted(roots)


def primitive(v: Vec) -> Vec:
    """Canonical positive-scale representative: integer entries with gcd 1.

    The sign is preserved: v and -v canonicalize to opposite vectors, since a
    ray and its negative are different rays.
    """
    from math import gcd, lcm

    if is_zero_vec(v):
        return v
    den = lcm(*(a.denominator for a in v))
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(Fraction(a // g) for a in ints)


def symmetric_signature(Q: Mat) -> tuple[int, int, int]:
    """Exact inertia (positive, negative, zero) of a symmetric matrix.

    Congruence diagonalization over the rationals (Lagrange reduction).
    """
    n = len(Q)
    M = [list(row) for row in Q]
    pos = neg = 0
    idx = list(range(n))

    def swap(i, j):
        M[i], M[j] = M[j], M[i]
        for row in M:
            row[i], row[j] = row[j], row[i]

    k = 0
    while k < n:
        if M[k][k] == 0:
            j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                if j is None:
                    k += 1
                    continue
                # make the diagonal nonzero: row/col k += row/col j
                for t in range(n):
                    M[k][t] += M[j][t]
                for t in range(n):
                    M[t][k] += M[t][j]
        p = M[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = M[i][k] / p
            if f != 0:
                for t in range(n):
                    M[i][t] -= f * M[k][t]
                for t in range(n):
                    M[t][i] -= f * M[t][k]
        k += 1
    del idx
    return pos, neg, n - pos - neg


def quadratic_value(Q: Mat, x: Vec) -> Fraction:
    return dot(x, mat_vec(Q, x))
