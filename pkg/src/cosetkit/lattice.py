"""Integer lattices in row-style Hermite normal form.

All arithmetic is on Python ints, so nothing overflows.  A lattice is a
tuple of basis rows; ``hnf`` is the only constructor that should be used for
values that get compared, because two lattices are equal as sets exactly
when their HNF bases are identical.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
Basis = tuple[Vector, ...]


def _hnf_core(rows: list[list[int]], ncols: int, track: bool):
    m = len(rows)
    A = [list(r) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None

    def sub(i, j, q):  # row_i -= q * row_j
        if q == 0:
            return
        Ai, Aj = A[i], A[j]
        for c in range(ncols):
            Ai[c] -= q * Aj[c]
        if track:
            Ui, Uj = U[i], U[j]
            for c in range(m):
                Ui[c] -= q * Uj[c]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def negate(i):
        A[i] = [-x for x in A[i]]
        if track:
            U[i] = [-x for x in U[i]]

    r = 0
    for col in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            swap(r, piv)
            done = True
            for i in range(r + 1, m):
                if A[i][col]:
                    sub(i, r, A[i][col] // A[r][col])
                    if A[i][col]:
                        done = False
            if done:
                break
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            negate(r)
        p = A[r][col]
        for i in range(r):
            sub(i, r, A[i][col] // p)
        r += 1
    return A, U, r


def hnf(rows: Iterable[Sequence[int]], ncols: int) -> Basis:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and the entries above each
    pivot lie in ``[0, pivot)``.
    """
    rows = [list(map(int, r)) for r in rows]
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row {r} does not have length {ncols}")
    A, _, rank = _hnf_core(rows, ncols, track=False)
    return tuple(tuple(row) for row in A[:rank])


def hnf_with_transform(rows: Sequence[Sequence[int]], ncols: int):
    """Return ``(H, U, rank)`` with ``U @ rows == H`` and ``U`` unimodular.

    The first ``rank`` rows of ``H`` are the HNF basis, the rest are zero.
    """
    A, U, rank = _hnf_core([list(r) for r in rows], ncols, track=True)
    return A, U, rank


def pivots(basis: Basis) -> list[int]:
    out = []
    for row in basis:
        for c, x in enumerate(row):
            if x:
                out.append(c)
                break
    return out


def reduce(v: Sequence[int], basis: Basis) -> Vector:
    """Canonical representative of ``v`` modulo the lattice."""
    v = list(v)
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            for i in range(c, len(v)):
                v[i] -= q * row[i]
    return tuple(v)


def coordinates(v: Sequence[int], basis: Basis) -> Optional[Vector]:
    """Integer coefficients expressing ``v`` in ``basis``, or None if v is not in it."""
    v = list(v)
    coeffs = []
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        q, rem = divmod(v[c], row[c])
        if rem:
            return None
        coeffs.append(q)
        if q:
            for i in range(c, len(v)):
                v[i] -= q * row[i]
    if any(v):
        return None
    return tuple(coeffs)


def contains(basis: Basis, v: Sequence[int]) -> bool:
    return coordinates(v, basis) is not None


def combine(coeffs: Sequence[int], basis: Basis, n: int) -> Vector:
    out = [0] * n
    for c, row in zip(coeffs, basis):
        if c:
            for i in range(n):
                out[i] += c * row[i]
    return tuple(out)


def add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def lattice_sum(a: Basis, b: Basis, n: int) -> Basis:
    return hnf(list(a) + list(b), n)


def is_sublattice(small: Basis, big: Basis) -> bool:
    return all(contains(big, row) for row in small)


def intersect(a: Basis, b: Basis, n: int) -> Basis:
    """Intersection of two lattices via the block matrix [[a, a], [b, 0]]."""
    if not a or not b:
        return ()
    rows = [list(r) + list(r) for r in a] + [list(r) + [0] * n for r in b]
    H = hnf(rows, 2 * n)
    tail = [row[n:] for row in H if not any(row[:n])]
    return hnf(tail, n)


def solve(target: Sequence[int], gens: Sequence[Sequence[int]], n: int) -> Optional[list[int]]:
    """Integer ``x`` with ``sum x_i gens_i == target``, or None."""
    if not gens:
        return [] if not any(target) else None
    H, U, rank = hnf_with_transform(gens, n)
    y = coordinates(target, tuple(tuple(r) for r in H[:rank]))
    if y is None:
        return None
    x = [0] * len(gens)
    for yi, urow in zip(y, U[:rank]):
        if yi:
            for j in range(len(gens)):
                x[j] += yi * urow[j]
    return x


def affine_intersection(o1: Sequence[int], l1: Basis, o2: Sequence[int], l2: Basis, n: int):
    """Intersect ``o1 + l1`` with ``o2 + l2``.

    Returns ``(point, lattice)`` or None when the translates are disjoint.
    """
    d = sub(o2, o1)
    gens = [list(r) for r in l1] + [[-x for x in r] for r in l2]
    x = solve(d, gens, n)
    if x is None:
        return None
    point = add(o1, combine(x[: len(l1)], l1, n))
    return point, intersect(l1, l2, n)


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    k = len(M)
    if k == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for i in range(k - 1):
        if A[i][i] == 0:
            for j in range(i + 1, k):
                if A[j][i]:
                    A[i], A[j] = A[j], A[i]
                    sign = -sign
                    break
            else:
                return 0
        for j in range(i + 1, k):
            for l in range(i + 1, k):
                A[j][l] = (A[j][l] * A[i][i] - A[j][i] * A[i][l]) // prev
        prev = A[i][i]
    return sign * A[k - 1][k - 1]


def index(big: Basis, small: Basis) -> Optional[int]:
    """``[big : small]`` for ``small`` a sublattice of ``big``; None if infinite."""
    if len(small) != len(big):
        return None
    C = [coordinates(r, big) for r in small]
    if any(c is None for c in C):
        raise ValueError("not a sublattice")
    return abs(det(C))


def transversal(big: Basis, small: Basis, n: int) -> list[Vector]:
    """Coset representatives of ``small`` in ``big`` (finite index), deterministic order."""
    if len(small) != len(big):
        raise ValueError("infinite index")
    k = len(big)
    C = hnf([coordinates(r, big) for r in small], k)
    diag = [C[i][i] for i in range(k)]
    return [combine(x, big, n) for x in product(*(range(d) for d in diag))]


def shell_points(k: int, dim: int) -> list[Vector]:
    """Integer points of max-norm exactly ``k``, in lexicographic order."""
    if dim == 0:
        return [()] if k == 0 else []
    rng = range(-k, k + 1)
    return [p for p in product(rng, repeat=dim) if max(map(abs, p), default=0) == k]


def ball_points(radius: int, dim: int) -> list[Vector]:
    out = []
    for k in range(radius + 1):
        out.extend(shell_points(k, dim))
    return out
